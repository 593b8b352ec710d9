"""Sparse exact multivariate (Laurent) polynomial arithmetic over the integers.

A polynomial is a map from exponent vectors to nonzero arbitrary-precision
integer coefficients, tied to an ordered tuple of variable names (the
"arena").  Exponents may be negative (Laurent).  All values are immutable
by convention and every operation returns a fresh polynomial.

Exponent vectors are packed into single integers (one biased 32-bit field
per variable), so multiplying monomials is a single integer addition and
the term order used by the division algorithm is plain integer comparison,
which is a valid monomial order (lexicographic from the last variable
down).  Exponent tuples appear only at the edges: construction, iteration,
serialization.
"""

from __future__ import annotations

import heapq
import re
from math import gcd

_FIELD = 32
_BIAS = 1 << 31
_MASK = (1 << _FIELD) - 1
_LIMIT = 1 << 30  # |exponent| bound with a safety margin below the bias

_PACK_ONE = {}  # arena size -> packed zero-exponent key


def _pack_one(m):
    key = _PACK_ONE.get(m)
    if key is None:
        key = 0
        for i in range(m):
            key |= _BIAS << (_FIELD * i)
        _PACK_ONE[m] = key
    return key


def _pack(exps, m):
    key = 0
    for i, e in enumerate(exps):
        if not -_LIMIT < e < _LIMIT:
            raise OverflowError(f"exponent {e} out of packable range")
        key |= (e + _BIAS) << (_FIELD * i)
    return key


def _unpack(key, m):
    return tuple(((key >> (_FIELD * i)) & _MASK) - _BIAS for i in range(m))


def _grlex_key(exps):
    return (sum(exps), exps)


class ArenaMismatch(ValueError):
    """Raised when two polynomials over different variable arenas are combined."""


class NotDivisible(ArithmeticError):
    """Raised by exact_div when the divisor does not divide the dividend."""


class Poly:
    """Immutable sparse polynomial with integer coefficients.

    ``terms`` maps packed exponent keys to nonzero ints; use ``iter_terms``
    for (exponent tuple, coefficient) pairs.  The zero polynomial has an
    empty term map.
    """

    __slots__ = ("arena", "terms", "_cache")

    def __init__(self, arena, terms=None, _norm=False):
        object.__setattr__(self, "arena", tuple(arena))
        object.__setattr__(self, "_cache", {})
        if terms is None:
            terms = {}
        if _norm:
            object.__setattr__(self, "terms", terms)
            return
        m = len(self.arena)
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != m:
                raise ValueError(f"exponent vector {exps} does not match arena size {m}")
            if coeff:
                key = _pack(exps, m)
                total = clean.get(key, 0) + coeff
                if total:
                    clean[key] = total
                else:
                    del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, arena):
        return cls(arena, {}, _norm=True)

    @classmethod
    def const(cls, arena, c):
        arena = tuple(arena)
        if not c:
            return cls.zero(arena)
        return cls(arena, {_pack_one(len(arena)): int(c)}, _norm=True)

    @classmethod
    def one(cls, arena):
        return cls.const(arena, 1)

    @classmethod
    def var(cls, arena, name):
        arena = tuple(arena)
        i = arena.index(name)
        key = _pack_one(len(arena)) + (1 << (_FIELD * i))
        return cls(arena, {key: 1}, _norm=True)

    @classmethod
    def monomial(cls, arena, exps, coeff=1):
        return cls(arena, {tuple(exps): int(coeff)})

    # -- iteration / predicates ----------------------------------------

    def iter_terms(self):
        """Yield (exponent tuple, coefficient) pairs in arbitrary order."""
        m = len(self.arena)
        for key, c in self.terms.items():
            yield _unpack(key, m), c

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {_pack_one(len(self.arena)): 1}

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_term(self):
        """Coefficient of the zero monomial (0 for the zero polynomial)."""
        return self.terms.get(_pack_one(len(self.arena)), 0)

    def has_nonneg_coeffs(self):
        return all(c >= 0 for c in self.terms.values())

    def is_polynomial(self):
        """True when no exponent is negative (honest, non-Laurent polynomial)."""
        return all(e >= 0 for exps, _ in self.iter_terms() for e in exps)

    def content(self):
        """gcd of all coefficients; 0 for the zero polynomial."""
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
            if g == 1:
                break
        return g

    def min_exponents(self, indices=None):
        """Componentwise minimum exponent over all terms.

        With ``indices`` the vector is restricted to those arena positions.
        Raises on the zero polynomial, whose minimum is undefined.
        """
        mins = self._cache.get("mins")
        if mins is None:
            if not self.terms:
                raise ValueError("min_exponents of zero polynomial")
            m = len(self.arena)
            it = iter(self.terms)
            work = list(_unpack(next(it), m))
            for key in it:
                for i in range(m):
                    e = ((key >> (_FIELD * i)) & _MASK) - _BIAS
                    if e < work[i]:
                        work[i] = e
            mins = tuple(work)
            self._cache["mins"] = mins
        if indices is None:
            return mins
        return tuple(mins[i] for i in indices)

    def degree(self):
        if not self.terms:
            return None
        return max(sum(exps) for exps, _ in self.iter_terms())

    def variables_used(self):
        used = set()
        for exps, _ in self.iter_terms():
            for i, e in enumerate(exps):
                if e:
                    used.add(self.arena[i])
        return used

    def leading(self):
        """(exponents, coefficient) of the largest term in the packed order."""
        key = self._cache.get("lead")
        if key is None:
            key = max(self.terms)
            self._cache["lead"] = key
        return _unpack(key, len(self.arena)), self.terms[key]

    def trailing_coeff(self):
        key = self._cache.get("trail")
        if key is None:
            key = min(self.terms)
            self._cache["trail"] = key
        return self.terms[key]

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.arena != other.arena:
            raise ArenaMismatch(f"{self.arena} vs {other.arena}")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.arena == other.arena and self.terms == other.terms

    def __hash__(self):
        return hash((self.arena, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.arena, other)
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly(self.arena, out, _norm=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.arena, {k: -c for k, c in self.terms.items()}, _norm=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.arena, other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.const(self.arena, other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return Poly.zero(self.arena)
            return Poly(
                self.arena, {k: c * other for k, c in self.terms.items()}, _norm=True
            )
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.arena)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        pb = _pack_one(len(self.arena))
        out = {}
        get = out.get
        for k1, c1 in b.items():
            base = k1 - pb
            for k2, c2 in a.items():
                key = base + k2
                s = get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return Poly(self.arena, out, _norm=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            if len(self.terms) == 1:
                (key, c), = self.terms.items()
                if c in (1, -1):
                    inv = Poly(
                        self.arena,
                        {2 * _pack_one(len(self.arena)) - key: c},
                        _norm=True,
                    )
                    return inv ** (-n)
            raise NotDivisible("negative power of a non-unit polynomial")
        result = Poly.one(self.arena)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exps):
        """Multiply by the Laurent monomial with the given exponent vector."""
        exps = tuple(exps)
        if not any(exps):
            return self
        delta = _pack(exps, len(self.arena)) - _pack_one(len(self.arena))
        return Poly(self.arena, {k + delta: c for k, c in self.terms.items()}, _norm=True)

    def extend(self, arena):
        """Re-embed into a larger arena that contains every current variable."""
        arena = tuple(arena)
        if arena == self.arena:
            return self
        pos = []
        for name in self.arena:
            try:
                pos.append(arena.index(name))
            except ValueError:
                raise ArenaMismatch(f"variable {name} missing from target arena")
        m_new = len(arena)
        pb = _pack_one(m_new)
        out = {}
        for exps, c in self.iter_terms():
            key = pb
            for p, e in zip(pos, exps):
                key += e << (_FIELD * p)
            out[key] = c
        return Poly(arena, out, _norm=True)


def poly_arith(a, b, op):
    """Ring arithmetic dispatcher: op in {"add", "sub", "mul"}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def exact_div(num, den):
    """Exact quotient q with q*den == num, by leading-term elimination.

    Monomial content is stripped from both operands first so the division
    runs in the honest polynomial ring, where it terminates; the Laurent
    shift is reattached at the end.  Raises NotDivisible the moment a
    leading term fails to divide, which for cluster-pattern inputs signals
    a bug or bad input rather than an expected condition.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    num._check(den)
    if num.is_zero():
        return num
    arena = num.arena
    m = len(arena)
    pb = _pack_one(m)
    m_num = num.min_exponents()
    m_den = den.min_exponents()
    n_poly = num.shift(tuple(-e for e in m_num))
    d_poly = den.shift(tuple(-e for e in m_den))
    lt_d = max(d_poly.terms)
    lc_d = d_poly.terms[lt_d]
    d_items = list(d_poly.terms.items())
    cur = dict(n_poly.terms)
    # max-heap over packed keys with lazy deletion
    heap = [-k for k in cur]
    heapq.heapify(heap)
    q = {}
    while cur:
        while True:
            lt_n = -heap[0]
            if lt_n in cur:
                break
            heapq.heappop(heap)
        lc_n = cur[lt_n]
        q_key = lt_n - lt_d + pb
        if lc_n % lc_d or any(e < 0 for e in _unpack(q_key, m)):
            raise NotDivisible("leading term of divisor does not divide")
        q_c = lc_n // lc_d
        q[q_key] = q_c
        base = q_key - pb
        for k, c in d_items:
            key = base + k
            if key in cur:
                s = cur[key] - q_c * c
                if s:
                    cur[key] = s
                else:
                    del cur[key]
            else:
                s = -q_c * c
                if s:
                    cur[key] = s
                    heapq.heappush(heap, -key)
    shift = tuple(a - b for a, b in zip(m_num, m_den))
    return Poly(arena, q, _norm=True).shift(shift)


def divides(den, num):
    try:
        exact_div(num, den)
        return True
    except NotDivisible:
        return False


def substitute(p, assignment):
    """Evaluate p at the given {variable name: Poly} assignment.

    Every variable of p's arena must be assigned; all assigned values must
    share one arena, which becomes the result arena.  Negative exponents
    require the assigned value to be an invertible (unit-coefficient)
    monomial.
    """
    values = list(assignment.values())
    if not values:
        raise ValueError("empty assignment")
    target = values[0].arena
    for v in values:
        if v.arena != target:
            raise ArenaMismatch("assignment values use different arenas")
    cols = []
    for name in p.arena:
        if name not in assignment:
            raise KeyError(f"no assignment for variable {name}")
        cols.append(assignment[name])
    m_new = len(target)
    pb = _pack_one(m_new)
    if all(v.is_monomial() for v in cols):
        # Fast path: pure packed arithmetic when every image is a monomial.
        mono = [next(iter(v.terms.items())) for v in cols]
        out = {}
        for exps, c in p.iter_terms():
            key = pb
            coeff = c
            for e, (mk, mc) in zip(exps, mono):
                if not e:
                    continue
                if mc == 1:
                    pass
                elif mc == -1:
                    coeff = -coeff if e % 2 else coeff
                elif e > 0:
                    coeff *= mc ** e
                else:
                    raise NotDivisible("negative exponent at non-unit monomial")
                key += (mk - pb) * e
            s = out.get(key, 0) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly(target, out, _norm=True)
    result = Poly.zero(target)
    pow_cache = {}
    for exps, c in p.iter_terms():
        term = Poly.const(target, c)
        for i, e in enumerate(exps):
            if not e:
                continue
            cache_key = (i, e)
            if cache_key not in pow_cache:
                pow_cache[cache_key] = cols[i] ** e
            term = term * pow_cache[cache_key]
        result = result + term
    return result


def min_exponent_vector(p, indices=None):
    """Componentwise minimum exponents of p over the given arena positions."""
    return p.min_exponents(indices)


# -- text form ---------------------------------------------------------

def to_text(p):
    """Render in the canonical human-readable form, e.g. ``1 + y2 + y1*y2``.

    Terms are ordered by ascending graded lex so the rendering is unique.
    """
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in sorted(p.iter_terms(), key=lambda t: _grlex_key(t[0])):
        factors = []
        for name, e in zip(p.arena, exps):
            if not e:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if c < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^|\*\*)?(-?\d+)?$")


def _split_terms(text):
    """Split at top-level +/- signs; a sign directly after ^ or * is an exponent sign."""
    chunks = []
    cur = ""
    for ch in text:
        if ch in "+-" and cur and cur[-1] not in "^*":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        chunks.append(cur)
    return chunks


def parse_poly(arena, text):
    """Parse the text form produced by to_text (whitespace tolerant)."""
    arena = tuple(arena)
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial text")
    if text == "0":
        return Poly.zero(arena)
    terms = {}
    for chunk in _split_terms(text):
        if not chunk:
            continue
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        if not chunk:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * len(arena)
        for factor in chunk.split("*"):
            if not factor:
                continue
            if factor.lstrip("-").isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"bad factor {factor!r}")
            name, e = m.group(1), m.group(2)
            if name not in arena:
                raise ValueError(f"unknown variable {name!r}")
            exps[arena.index(name)] += int(e) if e is not None else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return Poly(arena, terms)


# -- JSON form ---------------------------------------------------------

def poly_to_json(p):
    """Encode as a list of {"exps": [...], "coeff": "<decimal>"} in grlex order."""
    return [
        {"exps": list(exps), "coeff": str(c)}
        for exps, c in sorted(p.iter_terms(), key=lambda t: _grlex_key(t[0]))
    ]


def poly_from_json(arena, data):
    terms = {}
    for item in data:
        exps = tuple(int(e) for e in item["exps"])
        terms[exps] = terms.get(exps, 0) + int(item["coeff"])
    return Poly(arena, terms)


def term_key(p):
    """Hashable canonical key for dict/set membership."""
    return tuple(sorted(p.terms.items()))
