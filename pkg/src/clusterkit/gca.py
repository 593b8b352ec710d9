"""Generalized cluster patterns: degree-r reciprocal exchange polynomials in
place of binomials, with the corresponding B/C/G/F recursions, the two
ordinary companion patterns, and the duality identities.

The mutation data is (r, z): positive integer degrees r_i and formal
coefficients z_{i,s} (0 <= s <= r_i) that are monic (z_{i,0} = z_{i,r_i} = 1)
and reciprocal (z_{i,s} = z_{i,r_i-s}).  With r = (1,...,1) everything
reduces bit-exactly to the ordinary pattern operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exchange import ExchangeMatrix, find_skew_symmetrizer, pos
from .pattern import (
    InvariantViolation,
    PrincipalSeed,
    _identity,
    _matmul,
    initial_seed,
    mutate as mutate_ordinary,
    y_arena,
)
from .polyring import Poly, exact_div


class ReciprocityViolated(ValueError):
    pass


class NonMonic(ValueError):
    pass


@dataclass(frozen=True)
class MutationData:
    """Validated (r, z) data.

    ``z`` maps (i, s) for 1 <= i <= n, 0 < s < r_i to a formal variable name
    or to the integer 1; reciprocal positions share one name.  ``z_names``
    lists the distinct variable names in arena order.
    """

    r: tuple
    z: dict
    z_names: tuple

    @property
    def n(self):
        return len(self.r)

    def degree_matrix(self):
        n = self.n
        return tuple(tuple(self.r[i] if i == j else 0 for j in range(n)) for i in range(n))

    def is_trivial(self):
        return all(ri == 1 for ri in self.r)

    def coeff(self, i, s):
        """z_{i,s} for 0 <= s <= r_i: the name string or the integer 1."""
        if s == 0 or s == self.r[i - 1]:
            return 1
        return self.z[(i, s)]

    def to_json(self):
        rows = []
        for i in range(1, self.n + 1):
            rows.append([str(self.coeff(i, s)) if self.coeff(i, s) != 1 else 1
                         for s in range(self.r[i - 1] + 1)])
        return {"r": list(self.r), "z": rows}


def validate_data(r, z=None):
    """Build MutationData from degrees and per-index coefficient rows.

    ``z`` is a list of rows, one per index i, each of length r_i + 1 holding
    1 (or "1") or a variable-name string; omitted rows mean all inner
    coefficients get fresh names z<i>_<s>.  Enforces monicity and
    reciprocity at construction.
    """
    r = tuple(int(x) for x in r)
    if any(ri < 1 for ri in r):
        raise ValueError("mutation degrees must be positive")
    n = len(r)
    if z is None:
        z = [None] * n
    if len(z) != n:
        raise ValueError("need one z-row per index")
    table = {}
    names = []
    for i in range(1, n + 1):
        ri = r[i - 1]
        row = z[i - 1]
        if row is None:
            row = [1] + [f"z{i}_{min(s, ri - s)}" for s in range(1, ri)] + [1]
        if len(row) != ri + 1:
            raise ValueError(f"z-row {i} must have length r_{i}+1 = {ri + 1}")
        row = [1 if str(v) == "1" else str(v) for v in row]
        if row[0] != 1 or row[ri] != 1:
            raise NonMonic(f"z_{i},0 and z_{i},{ri} must be 1")
        for s in range(1, ri):
            if row[s] != row[ri - s]:
                raise ReciprocityViolated(f"z_{i},{s} != z_{i},{ri - s}")
            table[(i, s)] = row[s]
            if isinstance(row[s], str) and row[s] not in names:
                names.append(row[s])
    return MutationData(r=r, z=table, z_names=tuple(names))


def gca_arena(data):
    return y_arena(data.n) + data.z_names


@dataclass(frozen=True)
class GcaSeed:
    """Principal-coefficient data of a generalized pattern: matrices as in
    the ordinary case, exchange polynomials in both y and z variables."""

    data: MutationData
    b0: ExchangeMatrix
    b: ExchangeMatrix
    c: tuple
    g: tuple
    f: tuple
    path: tuple = field(default=(), compare=False)

    @property
    def n(self):
        return self.b0.n


def gca_initial(B, data):
    if B.n != data.n:
        raise ValueError("matrix rank must match the number of mutation degrees")
    one = Poly.one(gca_arena(data))
    n = B.n
    return GcaSeed(data=data, b0=B, b=B, c=_identity(n), g=_identity(n), f=(one,) * n)


def _z_poly(data, arena, i, s):
    v = data.coeff(i, s)
    if v == 1:
        return Poly.one(arena)
    return Poly.var(arena, v)


def _gca_f_mutation(seed, k0):
    """F_k' = M_k / F_k with
    M_k = (prod y^[-c r]+ F^[-b r]+) * sum_s z_{k,s} (prod y^c F^b)^s."""
    n = seed.n
    data = seed.data
    rk = data.r[k0]
    arena = seed.f[0].arena
    prefix = Poly.one(arena)
    ratio_num = Poly.one(arena)
    ratio_den = Poly.one(arena)
    for j in range(n):
        cjk = seed.c[j][k0]
        bjk = seed.b.rows[j][k0]
        yj = Poly.var(arena, f"y{j + 1}")
        if cjk < 0:
            prefix = prefix * yj ** (-cjk * rk)
            ratio_den = ratio_den * yj ** (-cjk)
        elif cjk > 0:
            ratio_num = ratio_num * yj ** cjk
        if bjk < 0:
            prefix = prefix * seed.f[j] ** (-bjk * rk)
            ratio_den = ratio_den * seed.f[j] ** (-bjk)
        elif bjk > 0:
            ratio_num = ratio_num * seed.f[j] ** bjk
    # prefix * sum_s z_s (num/den)^s = sum_s z_s num^s den^{rk-s}
    # since prefix = den^{rk}
    total = Poly.zero(arena)
    for s in range(rk + 1):
        total = total + _z_poly(data, arena, k0 + 1, s) * ratio_num ** s * ratio_den ** (rk - s)
    return exact_div(total, seed.f[k0])


def mutate_gca(seed, k, eps=1, validate=True):
    """(r, z)-mutation in direction k; eps-forms must agree for eps = +-1."""
    n = seed.n
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    k0 = k - 1
    rk = seed.data.r[k0]
    b_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k0 or j == k0:
                row.append(-seed.b.rows[i][j])
            else:
                row.append(
                    seed.b.rows[i][j]
                    + seed.b.rows[i][k0] * pos(eps * rk * seed.b.rows[k0][j])
                    + pos(-eps * seed.b.rows[i][k0] * rk) * seed.b.rows[k0][j]
                )
        b_new.append(row)
    c_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(-seed.c[i][k0])
            else:
                row.append(
                    seed.c[i][j]
                    + seed.c[i][k0] * pos(eps * rk * seed.b.rows[k0][j])
                    + pos(-eps * seed.c[i][k0] * rk) * seed.b.rows[k0][j]
                )
        c_new.append(tuple(row))
    g_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(
                    -seed.g[i][k0]
                    + sum(seed.g[i][l] * pos(-eps * seed.b.rows[l][k0] * rk) for l in range(n))
                    - sum(seed.b0.rows[i][l] * pos(-eps * seed.c[l][k0] * rk) for l in range(n))
                )
            else:
                row.append(seed.g[i][j])
        g_new.append(tuple(row))
    f_new = list(seed.f)
    f_new[k0] = _gca_f_mutation(seed, k0)
    out = GcaSeed(
        data=seed.data,
        b0=seed.b0,
        b=ExchangeMatrix(b_new, _trusted=True),
        c=tuple(c_new),
        g=tuple(g_new),
        f=tuple(f_new),
        path=seed.path + (k,),
    )
    if validate:
        for fi in out.f:
            if fi.constant_term() != 1 or not fi.has_nonneg_coeffs():
                raise InvariantViolation("generalized exchange polynomial invariant violated")
    return out


def gca_step_work_bound(seed, k):
    """Dense upper bound on the exchange-polynomial work of one mutation.

    Wild degree/arrow combinations grow doubly exponentially; callers can
    compare this against a budget to stop a walk before attempting an
    infeasible step.
    """
    k0 = k - 1
    rk = seed.data.r[k0]
    bound = rk + 1
    for j in range(seed.n):
        e = abs(seed.b.rows[j][k0]) * rk
        if e:
            bound *= max(len(seed.f[j].terms), 1) ** e
            if bound > 10 ** 12:
                return bound
    return bound


def _scale_matrix(B, r, side):
    """R*B (side='left') or B*R (side='right') as an ExchangeMatrix."""
    n = B.n
    if side == "left":
        rows = [[r[i] * B.rows[i][j] for j in range(n)] for i in range(n)]
    else:
        rows = [[B.rows[i][j] * r[j] for j in range(n)] for i in range(n)]
    return ExchangeMatrix(rows)


def companion_patterns(seed):
    """Replay the seed's path on the ordinary patterns of R*B0 and B0*R.

    Returns (left, right) PrincipalSeeds, whose C/G data tie to the
    generalized ones by C = C_left = R C_right R^{-1} and
    G = G_right = R^{-1} G_left R.
    """
    r = seed.data.r
    left = initial_seed(_scale_matrix(seed.b0, r, "left"))
    right = initial_seed(_scale_matrix(seed.b0, r, "right"))
    for k in seed.path:
        left = mutate_ordinary(left, k)
        right = mutate_ordinary(right, k)
    return left, right


def companion_identities_hold(seed, left=None, right=None):
    if left is None or right is None:
        left, right = companion_patterns(seed)
    n = seed.n
    r = seed.data.r
    if seed.c != left.c or seed.g != right.g:
        return False
    conj_c = tuple(
        tuple(Fraction(r[i]) * right.c[i][j] / r[j] for j in range(n)) for i in range(n)
    )
    if any(conj_c[i][j] != seed.c[i][j] for i in range(n) for j in range(n)):
        return False
    conj_g = tuple(
        tuple(Fraction(left.g[i][j]) * r[j] / r[i] for j in range(n)) for i in range(n)
    )
    return all(conj_g[i][j] == seed.g[i][j] for i in range(n) for j in range(n))


def gca_duality_check(seed):
    """The three duality identities, each with the skew-symmetrizer of its
    own pattern: R*B0 for the first, B0*R for the second, B0 for the third."""
    n = seed.n
    r = seed.data.r
    gt = tuple(zip(*seed.g))

    def diag(v):
        return tuple(tuple(v[i] if i == j else 0 for j in range(n)) for i in range(n))

    def frac_matmul(a, b):
        return tuple(
            tuple(sum(Fraction(a[i][k]) * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )

    eye = tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))
    report = {}

    d_left = find_skew_symmetrizer(_scale_matrix(seed.b0, r, "left").rows)
    inv = diag([Fraction(1, d_left[i] * r[i]) for i in range(n)])
    mid = diag([Fraction(r[i] * d_left[i]) for i in range(n)])
    report["left"] = frac_matmul(frac_matmul(frac_matmul(inv, gt), mid), seed.c) == eye

    d_right = find_skew_symmetrizer(_scale_matrix(seed.b0, r, "right").rows)
    inv = diag([Fraction(r[i], d_right[i]) for i in range(n)])
    mid = diag([Fraction(d_right[i], r[i]) for i in range(n)])
    report["right"] = frac_matmul(frac_matmul(frac_matmul(inv, gt), mid), seed.c) == eye

    d_gen = find_skew_symmetrizer(seed.b0.rows)
    inv = diag([Fraction(1, d_gen[i]) for i in range(n)])
    mid = diag([Fraction(d_gen[i]) for i in range(n)])
    report["generalized"] = frac_matmul(frac_matmul(frac_matmul(inv, gt), mid), seed.c) == eye

    report["ok"] = report["left"] and report["right"] and report["generalized"]
    return report


def right_companion_specialize(seed):
    """Drop the inner z-coefficients (z -> 0) and read off the ordinary
    pattern of B0*R.

    The specialized exchange polynomials live on the sublattice of y-degrees
    divisible by the r's; dividing the exponents out produces the right
    companion's polynomials, and the result is checked against the replayed
    ordinary pattern before returning it.
    """
    n = seed.n
    data = seed.data
    r = data.r
    n_z = len(data.z_names)
    arena = y_arena(n)
    fs = []
    for fi in seed.f:
        terms = {}
        for exps, coeff in fi.iter_terms():
            if any(e != 0 for e in exps[n:]):
                continue  # term carries a z-variable, killed by z -> 0
            row = []
            for j in range(n):
                if exps[j] % r[j]:
                    raise InvariantViolation(
                        "z->0 specialization left a y-degree outside the companion lattice"
                    )
                row.append(exps[j] // r[j])
            terms[tuple(row)] = coeff
        fs.append(Poly(arena, terms))
    right_b0 = _scale_matrix(seed.b0, r, "right")
    c_right = tuple(
        tuple(_exact_ratio(seed.c[i][j] * r[j], r[i]) for j in range(n)) for i in range(n)
    )
    out = PrincipalSeed(
        b0=right_b0,
        b=_scale_matrix(seed.b, r, "right"),
        c=c_right,
        g=seed.g,
        f=tuple(fs),
        path=seed.path,
    )
    replay = initial_seed(right_b0)
    for k in seed.path:
        replay = mutate_ordinary(replay, k)
    if (replay.b, replay.c, replay.g, replay.f) != (out.b, out.c, out.g, out.f):
        raise InvariantViolation("z->0 specialization disagrees with the right companion")
    return out


def _exact_ratio(a, b):
    if a % b:
        raise InvariantViolation("companion conjugation produced a non-integer entry")
    return a // b


def gca_seed_to_json(seed):
    from .polyring import poly_to_json

    return {
        "data": seed.data.to_json(),
        "b0": seed.b0.to_json(),
        "b": seed.b.to_json(),
        "c": [list(r) for r in seed.c],
        "g": [list(r) for r in seed.g],
        "f": [poly_to_json(fi) for fi in seed.f],
        "path": list(seed.path),
    }


def gca_seed_from_json(doc):
    from .polyring import poly_from_json

    data = validate_data(doc["data"]["r"], doc["data"]["z"])
    arena = gca_arena(data)
    return GcaSeed(
        data=data,
        b0=ExchangeMatrix(doc["b0"]),
        b=ExchangeMatrix(doc["b"]),
        c=tuple(tuple(int(x) for x in r) for r in doc["c"]),
        g=tuple(tuple(int(x) for x in r) for r in doc["g"]),
        f=tuple(poly_from_json(arena, fj) for fj in doc["f"]),
        path=tuple(int(k) for k in doc.get("path", [])),
    )
