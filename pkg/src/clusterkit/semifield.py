"""Semifield elements: tropical monomials, subtraction-free rationals, and
the trivial semifield, together with specialization and tropicalization.

Three semifields are supported, identified by string tags:

* ``"trop"``    -- Laurent monomials with coefficient 1; addition takes the
                   componentwise minimum of exponent vectors.
* ``"sf"``      -- rational functions presented as num/den with nonnegative
                   integer coefficients and nonzero num, den; addition is the
                   ordinary one, equality is cross-multiplication.
* ``"trivial"`` -- the one-element semifield, 1 (+) 1 = 1.

The integer m, used as a semifield element, means the m-fold sum
1 (+) ... (+) 1, which collapses to 1 in the tropical and trivial cases.
"""

from __future__ import annotations

from math import gcd

from .polyring import Poly, substitute


class TropMonomial:
    """Laurent monomial with coefficient 1, stored as its exponent vector."""

    __slots__ = ("exps",)

    def __init__(self, exps):
        object.__setattr__(self, "exps", tuple(int(e) for e in exps))

    def __setattr__(self, name, value):
        raise AttributeError("TropMonomial is immutable")

    @classmethod
    def one(cls, m):
        return cls((0,) * m)

    @classmethod
    def generator(cls, m, i):
        return cls(tuple(1 if j == i else 0 for j in range(m)))

    def _check(self, other):
        if len(self.exps) != len(other.exps):
            raise ValueError("tropical monomials of different dimension")

    def is_one(self):
        return not any(self.exps)

    def __eq__(self, other):
        return isinstance(other, TropMonomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __mul__(self, other):
        self._check(other)
        return TropMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other):
        self._check(other)
        return TropMonomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, n):
        n = int(n)
        return TropMonomial(tuple(a * n for a in self.exps))

    def __repr__(self):
        return f"TropMonomial({list(self.exps)})"

    def to_json(self):
        return list(self.exps)


def trop_sum(a, b):
    """Tropical addition: componentwise minimum of exponent vectors."""
    a._check(b)
    return TropMonomial(tuple(min(x, y) for x, y in zip(a.exps, b.exps)))


class SfRational:
    """Element of the universal semifield: a pair num/den of nonzero
    polynomials with nonnegative coefficients.

    Fractions are not reduced to lowest terms; only the common integer
    content of num and den is divided out.  Equality is exact
    cross-multiplication, so arithmetic never needs a gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.arena)
        if num.arena != den.arena:
            raise ValueError("num and den over different arenas")
        if num.is_zero() or den.is_zero():
            raise ValueError("subtraction-free rationals are nonzero with nonzero denominator")
        if not (num.has_nonneg_coeffs() and den.has_nonneg_coeffs()):
            raise ValueError("coefficients must be nonnegative")
        g = gcd(num.content(), den.content())
        if g > 1:
            num = Poly(num.arena, {e: c // g for e, c in num.terms.items()}, _norm=True)
            den = Poly(den.arena, {e: c // g for e, c in den.terms.items()}, _norm=True)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("SfRational is immutable")

    @classmethod
    def one(cls, arena):
        return cls(Poly.one(arena))

    @classmethod
    def generator(cls, arena, name):
        return cls(Poly.var(arena, name))

    @property
    def arena(self):
        return self.num.arena

    def __eq__(self, other):
        if not isinstance(other, SfRational):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("SfRational is unhashable (equality is cross-multiplication)")

    def __add__(self, other):
        other = self._coerce(other)
        return SfRational(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        return SfRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return SfRational(self.num * other.den, self.den * other.num)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return SfRational(self.den, self.num) ** (-n)
        return SfRational(self.num ** n, self.den ** n)

    def _coerce(self, other):
        if isinstance(other, SfRational):
            if other.arena != self.arena:
                raise ValueError("mixed arenas")
            return other
        if isinstance(other, int) and other > 0:
            return SfRational(Poly.const(self.arena, other))
        raise TypeError(f"cannot coerce {other!r} into the universal semifield")

    def __repr__(self):
        from .polyring import to_text

        if self.den.is_one():
            return f"SfRational({to_text(self.num)})"
        return f"SfRational(({to_text(self.num)}) / ({to_text(self.den)}))"

    def to_json(self):
        from .polyring import poly_to_json

        return {"num": poly_to_json(self.num), "den": poly_to_json(self.den)}


class TrivialUnit:
    """The single element of the trivial semifield."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, TrivialUnit)

    def __hash__(self):
        return hash("trivial-unit")

    def __mul__(self, other):
        return self

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self

    def __pow__(self, n):
        return self

    def __repr__(self):
        return "TrivialUnit()"


TRIVIAL_ONE = TrivialUnit()

SemifieldValue = TropMonomial | SfRational | TrivialUnit

TAGS = ("trop", "sf", "trivial")


def semifield_sum(tag, a, b):
    """The semifield addition (+) for values of the given tag."""
    if tag == "trop":
        return trop_sum(a, b)
    if tag == "sf":
        return a + b
    if tag == "trivial":
        return TRIVIAL_ONE
    raise ValueError(f"unknown semifield tag {tag!r}")


def _spec_poly_trop(p, assignment):
    """Image of a nonneg-coefficient polynomial under u_i -> assignment[i] in Trop.

    Integer coefficients m >= 1 collapse (m-fold tropical sum is idempotent),
    so the image is the componentwise minimum over terms of the assigned
    exponent combinations.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no semifield image")
    dim = len(assignment[0].exps)
    best = None
    for exps, _ in p.iter_terms():
        row = [0] * dim
        for e, mono in zip(exps, assignment):
            if e:
                for i, me in enumerate(mono.exps):
                    row[i] += me * e
        best = row if best is None else [min(a, b) for a, b in zip(best, row)]
    return TropMonomial(best)


def _spec_poly_sf(p, assignment, arena):
    if p.is_zero():
        raise ValueError("zero polynomial has no semifield image")
    num = Poly.zero(arena)
    den = Poly.one(arena)
    for exps, c in p.iter_terms():
        t_num = Poly.const(arena, c)
        t_den = Poly.one(arena)
        for e, val in zip(exps, assignment):
            if e > 0:
                t_num = t_num * val.num ** e
                t_den = t_den * val.den ** e
            elif e < 0:
                t_num = t_num * val.den ** (-e)
                t_den = t_den * val.num ** (-e)
        num = num * t_den + t_num * den
        den = den * t_den
    return SfRational(num, den)


def specialize(f, target, assignment):
    """Image of f under the unique semifield homomorphism u_i -> assignment[i].

    ``f`` is an SfRational over generators u_1..u_n; ``assignment`` lists n
    values in the target semifield (``target`` in {"trop", "sf", "trivial"}).
    Ordinary + becomes the target addition and an integer coefficient m acts
    as the m-fold sum.
    """
    n = len(f.arena)
    if target == "trivial":
        return TRIVIAL_ONE
    if len(assignment) != n:
        raise ValueError(f"assignment length {len(assignment)} != generator count {n}")
    if target == "trop":
        if not all(isinstance(v, TropMonomial) for v in assignment):
            raise TypeError("tropical specialization needs TropMonomial values")
        return _spec_poly_trop(f.num, assignment) / _spec_poly_trop(f.den, assignment)
    if target == "sf":
        if not all(isinstance(v, SfRational) for v in assignment):
            raise TypeError("sf specialization needs SfRational values")
        arena = assignment[0].arena if assignment else f.arena
        return _spec_poly_sf(f.num, assignment, arena) / _spec_poly_sf(f.den, assignment, arena)
    raise ValueError(f"unknown semifield tag {target!r}")


def tropicalize(f):
    """Leading-monomial extraction: specialize at the tropical generators.

    Equals (componentwise-min exponents of num) - (same for den).
    """
    num_min = f.num.min_exponents()
    den_min = f.den.min_exponents()
    return TropMonomial(tuple(a - b for a, b in zip(num_min, den_min)))


def sf_arith(a, b, op):
    """Universal-semifield arithmetic dispatcher: op in {"add", "mul", "div"}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def sf_from_poly(p):
    """View a nonneg-coefficient polynomial as an element of the universal semifield."""
    return SfRational(p)
