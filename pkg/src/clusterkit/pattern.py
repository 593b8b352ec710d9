"""Seeds and patterns: principal-coefficient seeds with their C/G/F data,
free-coefficient seeds mutated directly in the universal semifield,
geometric-type seeds with frozen variables, invariant checks, and
exchange-graph enumeration.

A principal-coefficient seed is stored as (B0, B_t, C_t, G_t, F_t); cluster
variables are reconstructed on demand from that data, which keeps seeds
small and makes the reconstruction an executable cross-check of the direct
mutation rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exchange import (
    BudgetExceeded,
    ExchangeMatrix,
    ExtendedExchangeMatrix,
    det_int,
    find_skew_symmetrizer,
    mutate_extended,
    mutate_matrix,
    pos,
)


@lru_cache(maxsize=4096)
def _symmetrizer(rows):
    return find_skew_symmetrizer(rows)
from .polyring import (
    Poly,
    exact_div,
    poly_from_json,
    poly_to_json,
    substitute,
    term_key,
    to_text,
)
from .semifield import SfRational, TropMonomial, TRIVIAL_ONE, specialize

FREE_SIZE_BUDGET = 10 ** 6  # max num-terms * den-terms in a free-seed x-variable


class SizeBudgetExceeded(RuntimeError):
    pass


def y_arena(n):
    return tuple(f"y{i}" for i in range(1, n + 1))


def xy_arena(n):
    return tuple(f"x{i}" for i in range(1, n + 1)) + y_arena(n)


def xu_arena(n, m):
    return tuple(f"x{i}" for i in range(1, n + 1)) + tuple(f"u{j}" for j in range(1, m + 1))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a, b):
    n, mid, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(mid)) for j in range(m)) for i in range(n)
    )


def _column(mat, j):
    return tuple(row[j] for row in mat)


# -- principal-coefficient seeds ----------------------------------------

@dataclass(frozen=True)
class PrincipalSeed:
    """Seed data of a pattern with principal coefficients at the base vertex.

    ``c`` and ``g`` are rows-first integer matrices whose columns are the
    c-/g-vectors; ``f`` holds one polynomial in y per index.  ``path`` is
    bookkeeping (the mutation directions from the base vertex) and is
    ignored by equality.
    """

    b0: ExchangeMatrix
    b: ExchangeMatrix
    c: tuple
    g: tuple
    f: tuple
    path: tuple = field(default=(), compare=False)

    @property
    def n(self):
        return self.b0.n

    def f_text(self):
        return [to_text(fi) for fi in self.f]


def initial_seed(B):
    """The seed at the base vertex: C = G = I and unit F-polynomials."""
    n = B.n
    one = Poly.one(y_arena(n))
    return PrincipalSeed(b0=B, b=B, c=_identity(n), g=_identity(n), f=(one,) * n)


class InvariantViolation(AssertionError):
    pass


def _f_mutation(seed, k0):
    """Exchange polynomial update: F_k' = M_k / F_k with
    M_k = prod y^[c]+ F^[b]+  +  prod y^[-c]+ F^[-b]+ over column k."""
    n = seed.n
    arena = seed.f[0].arena
    plus = Poly.one(arena)
    minus = Poly.one(arena)
    for j in range(n):
        cjk = seed.c[j][k0]
        if cjk > 0:
            plus = plus * Poly.var(arena, f"y{j + 1}") ** cjk
        elif cjk < 0:
            minus = minus * Poly.var(arena, f"y{j + 1}") ** (-cjk)
        bjk = seed.b.rows[j][k0]
        if bjk > 0:
            plus = plus * seed.f[j] ** bjk
        elif bjk < 0:
            minus = minus * seed.f[j] ** (-bjk)
    return exact_div(plus + minus, seed.f[k0])


def mutate(seed, k, validate=True):
    """Mutation in direction k (1-based): B, C, G, F all updated."""
    n = seed.n
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    b_new = mutate_matrix(seed.b, k)
    c_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(-seed.c[i][k0])
            else:
                row.append(
                    seed.c[i][j]
                    + seed.c[i][k0] * pos(seed.b.rows[k0][j])
                    + pos(-seed.c[i][k0]) * seed.b.rows[k0][j]
                )
        c_new.append(tuple(row))
    g_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(
                    -seed.g[i][k0]
                    + sum(seed.g[i][l] * pos(-seed.b.rows[l][k0]) for l in range(n))
                    - sum(seed.b0.rows[i][l] * pos(-seed.c[l][k0]) for l in range(n))
                )
            else:
                row.append(seed.g[i][j])
        g_new.append(tuple(row))
    f_new = list(seed.f)
    f_new[k0] = _f_mutation(seed, k0)
    out = PrincipalSeed(
        b0=seed.b0,
        b=b_new,
        c=tuple(c_new),
        g=tuple(g_new),
        f=tuple(f_new),
        path=seed.path + (k,),
    )
    if validate:
        report = verify_invariants(out)
        if not report["ok"]:
            bad = [name for name, v in report.items() if name != "ok" and not v]
            raise InvariantViolation(f"seed invariants violated after mutation: {bad}")
    return out


def mutate_eps(seed, k, eps, validate=True):
    """Mutation written with the sign parameter eps; the result must not
    depend on eps, which makes this a property-test hook."""
    n = seed.n
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    k0 = k - 1
    b_new = mutate_matrix(seed.b, k, eps=eps)
    c_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(-seed.c[i][k0])
            else:
                row.append(
                    seed.c[i][j]
                    + seed.c[i][k0] * pos(eps * seed.b.rows[k0][j])
                    + pos(-eps * seed.c[i][k0]) * seed.b.rows[k0][j]
                )
        c_new.append(tuple(row))
    g_new = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == k0:
                row.append(
                    -seed.g[i][k0]
                    + sum(seed.g[i][l] * pos(-eps * seed.b.rows[l][k0]) for l in range(n))
                    - sum(seed.b0.rows[i][l] * pos(-eps * seed.c[l][k0]) for l in range(n))
                )
            else:
                row.append(seed.g[i][j])
        g_new.append(tuple(row))
    f_new = list(seed.f)
    f_new[k0] = _f_mutation(seed, k0)
    out = PrincipalSeed(
        b0=seed.b0, b=b_new, c=tuple(c_new), g=tuple(g_new), f=tuple(f_new),
        path=seed.path + (k,),
    )
    if validate:
        report = verify_invariants(out)
        if not report["ok"]:
            raise InvariantViolation("seed invariants violated after eps-mutation")
    return out


def principal_step_work_bound(seed, k):
    """Dense upper bound on the exchange-polynomial work of one mutation;
    callers can compare it against a budget before attempting a step into a
    wild (doubly exponentially growing) region."""
    k0 = k - 1
    bound = 2
    for j in range(seed.n):
        e = abs(seed.b.rows[j][k0])
        if e:
            bound *= max(len(seed.f[j].terms), 1) ** e
            if bound > 10 ** 12:
                return bound
    return bound


def geometric_step_work_bound(seed, k):
    k0 = k - 1
    rows = seed.bt.all_rows()
    bound = 2
    for j in range(seed.n):
        e = abs(rows[j][k0])
        if e:
            bound *= max(len(seed.x[j].terms), 1) ** e
            if bound > 10 ** 12:
                return bound
    return bound


def yhat_assignment(B0):
    """The coefficient-dressed variables: y_j -> y_j * prod_l x_l^{b0_lj}."""
    return _yhat_assignment(B0.rows)


@lru_cache(maxsize=1024)
def _yhat_assignment(rows):
    n = len(rows)
    arena = xy_arena(n)
    out = {}
    for j in range(n):
        exps = [0] * (2 * n)
        exps[n + j] = 1
        for l in range(n):
            exps[l] = rows[l][j]
        out[f"y{j + 1}"] = Poly.monomial(arena, exps)
    return out


def cluster_variable(seed, i):
    """Laurent polynomial in ZZ[x^{+-1}, y] for the i-th cluster variable.

    With principal coefficients the tropical specialization of every F is 1,
    so the variable is x^{g-vector} * F_i(yhat), expanded exactly.
    """
    n = seed.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    arena = xy_arena(n)
    fy = substitute(seed.f[i - 1], yhat_assignment(seed.b0))
    shift = tuple(seed.g[l][i - 1] for l in range(n)) + (0,) * n
    return fy.shift(shift)


def coefficient(seed, i, target="trop", assignment=None):
    """The i-th coefficient reconstructed in the target semifield.

    Evaluates y^(c-vector) times the product of specialized exchange
    polynomials F_j^(b_ji).  With the default tropical generators this
    returns the monomial cut out by the c-vector.
    """
    n = seed.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    i0 = i - 1
    if target == "trivial":
        return TRIVIAL_ONE
    if assignment is None:
        if target != "trop":
            raise ValueError("assignment required for non-tropical targets")
        assignment = [TropMonomial.generator(n, j) for j in range(n)]
    if target == "trop":
        acc = TropMonomial.one(len(assignment[0].exps))
        for j in range(n):
            c = seed.c[j][i0]
            if c:
                acc = acc * assignment[j] ** c
        for j in range(n):
            bji = seed.b.rows[j][i0]
            if bji:
                fj = specialize(SfRational(seed.f[j]), "trop", assignment)
                acc = acc * fj ** bji
        return acc
    if target == "sf":
        acc = SfRational.one(assignment[0].arena)
        for j in range(n):
            c = seed.c[j][i0]
            if c:
                acc = acc * assignment[j] ** c
        for j in range(n):
            bji = seed.b.rows[j][i0]
            if bji:
                fj = specialize(SfRational(seed.f[j]), "sf", assignment)
                acc = acc * fj ** bji
        return acc
    raise ValueError(f"unknown semifield tag {target!r}")


def d_vector(seed, i):
    """Denominator vector: negated minimal x-exponents of the i-th variable."""
    var = cluster_variable(seed, i)
    mins = var.min_exponents(range(seed.n))
    return tuple(-e for e in mins)


def verify_invariants(seed):
    """Evaluate the seven structural checks; returns {check: bool, "ok": bool}."""
    n = seed.n
    report = {}
    ok_cols = True
    for j in range(n):
        col = [seed.c[i][j] for i in range(n)]
        nonzero = [x for x in col if x]
        if not nonzero or (any(x > 0 for x in nonzero) and any(x < 0 for x in nonzero)):
            ok_cols = False
    report["c_columns_sign_coherent"] = ok_cols
    report["f_constant_term_one"] = all(fi.constant_term() == 1 for fi in seed.f)
    report["f_nonneg_coeffs"] = all(fi.has_nonneg_coeffs() for fi in seed.f)
    det_c = det_int(seed.c)
    det_g = det_int(seed.g)
    report["unimodular"] = det_c == det_g and det_c in (1, -1)
    # G^T D C = D, with D read in the matching frame on each side: rows of
    # C and G live in the initial frame (symmetrizer of b0), columns in the
    # current one (symmetrizer of b; identical until a relabeling is applied).
    d0 = _symmetrizer(seed.b0.rows)
    d_cur = _symmetrizer(seed.b.rows)
    gt_d_c = _matmul(
        _matmul(
            tuple(zip(*seed.g)),
            tuple(tuple(d0[i] if i == j else 0 for j in range(n)) for i in range(n)),
        ),
        seed.c,
    )
    report["duality"] = gt_d_c == tuple(
        tuple(d_cur[i] if i == j else 0 for j in range(n)) for i in range(n)
    )
    report["gb_equals_b0c"] = _matmul(seed.g, seed.b.rows) == _matmul(seed.b0.rows, seed.c)
    trop_ok = True
    for fi in seed.f:
        if fi.is_zero() or any(e != 0 for e in fi.min_exponents()):
            trop_ok = False
    report["f_tropicalizes_to_one"] = trop_ok
    report["ok"] = all(report.values())
    return report


def apply_permutation(seed, sigma):
    """Relabel a seed: sigma maps old index -> new index (1-based tuple).

    B is permuted in both rows and columns; C, G only in columns and F by
    component, since their row index refers to the fixed base vertex.
    """
    n = seed.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    inv = [0] * n  # inv[new0] = old0
    for old0, new in enumerate(sigma):
        inv[new - 1] = old0
    b_new = ExchangeMatrix([[seed.b.rows[inv[i]][inv[j]] for j in range(n)] for i in range(n)])
    c_new = tuple(tuple(seed.c[i][inv[j]] for j in range(n)) for i in range(n))
    g_new = tuple(tuple(seed.g[i][inv[j]] for j in range(n)) for i in range(n))
    f_new = tuple(seed.f[inv[j]] for j in range(n))
    return PrincipalSeed(b0=seed.b0, b=b_new, c=c_new, g=g_new, f=f_new, path=())


def check_commutation(B, k, l):
    """True when the two mutation orders agree on the principal seed of B."""
    s = initial_seed(B)
    return mutate(mutate(s, k), l) == mutate(mutate(s, l), k)


# -- free-coefficient seeds ----------------------------------------------

@dataclass(frozen=True)
class FreeSeed:
    """Seed with free coefficients: y-variables in the universal semifield
    over the initial y's, x-variables as subtraction-free fractions of
    Laurent polynomials in (x, y)."""

    b: ExchangeMatrix
    x: tuple  # of SfRational over xy_arena
    y: tuple  # of SfRational over y_arena
    path: tuple = field(default=(), compare=False)

    @property
    def n(self):
        return self.b.n

    def __eq__(self, other):
        if not isinstance(other, FreeSeed):
            return NotImplemented
        return self.b == other.b and self.x == other.x and self.y == other.y


def free_initial(B):
    n = B.n
    ax = xy_arena(n)
    ay = y_arena(n)
    xs = tuple(SfRational(Poly.var(ax, f"x{i + 1}")) for i in range(n))
    ys = tuple(SfRational(Poly.var(ay, f"y{i + 1}")) for i in range(n))
    return FreeSeed(b=B, x=xs, y=ys)


def _mul_bounded(a, b, budget):
    """Product with a work guard: refuses when the term-pair count of the
    multiplication would exceed the budget."""
    if len(a.terms) * len(b.terms) > budget:
        raise SizeBudgetExceeded(
            f"product of {len(a.terms)} x {len(b.terms)} terms exceeds the size budget"
        )
    return a * b


def _pow_bounded(p, e, budget):
    out = None
    for _ in range(e):
        out = p if out is None else _mul_bounded(out, p, budget)
    return out if out is not None else Poly.one(p.arena)


def _may_divide(d, n):
    """Cheap necessary conditions for d | n among nonneg-coefficient polys,
    where products never cancel terms."""
    if len(d.terms) > len(n.terms):
        return False
    lt_n, lc_n = n.leading()
    lt_d, lc_d = d.leading()
    if lc_n % lc_d or n.trailing_coeff() % d.trailing_coeff():
        return False
    span_n = [a - b for a, b in zip(lt_n, n.min_exponents())]
    span_d = [a - b for a, b in zip(lt_d, d.min_exponents())]
    return all(a >= b for a, b in zip(span_n, span_d))


def _reduce_fraction(num_factors, den_factors, budget=None):
    """Cancel factored num/den by pairwise exact division, then multiply out.

    Cancelling a factor pair is always value-preserving; the Laurent
    phenomenon makes the relevant divisions succeed in practice, which is
    what keeps free-seed fractions at cluster-variable size.  Monomial
    factors are left to the final common-content shift."""
    from .polyring import NotDivisible

    if budget is None:
        budget = FREE_SIZE_BUDGET
    nfs = [f for f in num_factors if not f.is_one()]
    dfs = [f for f in den_factors if not f.is_one()]
    changed = True
    while changed:
        changed = False
        for i, nf in enumerate(nfs):
            if nf.is_monomial():
                continue
            for j, df in enumerate(dfs):
                if df.is_monomial():
                    continue
                if nf == df:
                    nfs.pop(i)
                    dfs.pop(j)
                    changed = True
                    break
                if _may_divide(df, nf):
                    try:
                        nfs[i] = exact_div(nf, df)
                        dfs.pop(j)
                        changed = True
                        break
                    except NotDivisible:
                        pass
                if _may_divide(nf, df):
                    try:
                        dfs[j] = exact_div(df, nf)
                        nfs.pop(i)
                        changed = True
                        break
                    except NotDivisible:
                        pass
            if changed:
                break
    if not nfs and not dfs:
        raise ValueError("empty fraction")
    arena = (nfs + dfs)[0].arena
    num = Poly.one(arena)
    for f in nfs:
        num = _mul_bounded(num, f, budget)
    den = Poly.one(arena)
    for f in dfs:
        den = _mul_bounded(den, f, budget)
    n_min = num.min_exponents()
    d_min = den.min_exponents()
    common = tuple(min(a, b) for a, b in zip(n_min, d_min))
    if any(common):
        neg = tuple(-e for e in common)
        num = num.shift(neg)
        den = den.shift(neg)
    return num, den


def mutate_free(seed, k, budget=None):
    """Direct seed mutation with coefficients in the universal semifield.

    Raises SizeBudgetExceeded as soon as any intermediate product would
    exceed ``budget`` term-pairs (default FREE_SIZE_BUDGET): wild patterns
    grow doubly exponentially and the budget is the documented way out.
    """
    n = seed.n
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    if budget is None:
        budget = FREE_SIZE_BUDGET
    k0 = k - 1
    ax = seed.x[0].num.arena
    bcol = [seed.b.rows[j][k0] for j in range(n)]
    yk = seed.y[k0]

    # yhat_k = y_k * prod_j x_j^{b_jk} as a fraction A/B over (x, y)
    a_num = yk.num.extend(ax)
    a_den = yk.den.extend(ax)
    for j in range(n):
        e = bcol[j]
        if e > 0:
            a_num = _mul_bounded(a_num, _pow_bounded(seed.x[j].num, e, budget), budget)
            a_den = _mul_bounded(a_den, _pow_bounded(seed.x[j].den, e, budget), budget)
        elif e < 0:
            a_num = _mul_bounded(a_num, _pow_bounded(seed.x[j].den, -e, budget), budget)
            a_den = _mul_bounded(a_den, _pow_bounded(seed.x[j].num, -e, budget), budget)

    one_plus_y = yk.num + yk.den  # numerator of 1 (+) y_k over yk.den

    # x'_k = [D_k prod_{e<0} N_j^{-e} (a_num + a_den) yk.den]
    #      / [N_k prod_{e<0} D_j^{-e} a_den one_plus_y]
    # with a_den expanded into its atomic pieces for finer cancellation.
    num_factors = [seed.x[k0].den, a_num + a_den, yk.den.extend(ax)]
    den_factors = [seed.x[k0].num, one_plus_y.extend(ax), yk.den.extend(ax)]
    for j in range(n):
        e = bcol[j]
        if e > 0:
            den_factors.extend([seed.x[j].den] * e)
        elif e < 0:
            num_factors.extend([seed.x[j].num] * (-e))
            den_factors.extend([seed.x[j].num] * (-e))
            den_factors.extend([seed.x[j].den] * (-e))

    num, den = _reduce_fraction(num_factors, den_factors, budget)
    if len(num.terms) * len(den.terms) > budget:
        raise SizeBudgetExceeded("free-seed x-variable exceeded the size budget")
    x_new = list(seed.x)
    x_new[k0] = SfRational(num, den)

    y_new = list(seed.y)
    sum_y = yk.num + yk.den  # numerator of 1 (+) y_k over yk.den
    for i in range(n):
        if i == k0:
            y_new[i] = yk ** -1
            continue
        bki = seed.b.rows[k0][i]
        if bki == 0:
            continue
        yi = seed.y[i]
        if bki > 0:
            # y_i * y_k^b * (yk.den / sum_y)^b: the yk.den powers cancel
            ni, di = _reduce_fraction(
                [yi.num] + [yk.num] * bki, [yi.den] + [sum_y] * bki, budget
            )
        else:
            ni, di = _reduce_fraction(
                [yi.num] + [sum_y] * (-bki), [yi.den] + [yk.den] * (-bki), budget
            )
        y_new[i] = SfRational(ni, di)
    return FreeSeed(
        b=mutate_matrix(seed.b, k), x=tuple(x_new), y=tuple(y_new), path=seed.path + (k,)
    )


def apply_permutation_free(seed, sigma):
    """sigma relabels a free seed exactly as it relabels any labeled seed."""
    n = seed.n
    inv = [0] * n
    for old0, new in enumerate(sigma):
        inv[new - 1] = old0
    b_new = ExchangeMatrix([[seed.b.rows[inv[i]][inv[j]] for j in range(n)] for i in range(n)])
    return FreeSeed(
        b=b_new,
        x=tuple(seed.x[inv[i]] for i in range(n)),
        y=tuple(seed.y[inv[i]] for i in range(n)),
        path=(),
    )


def separation_mismatch(free, prin):
    """First failing reconstruction identity between the two engines, or None.

    The x-formula x_i == x^g * F_i(yhat) / F_i(y) and the y-formula
    y_i == y^c * prod_j F_j^{b_ji} are both checked as exact cross-multiplied
    equalities in the universal semifield.
    """
    n = prin.n
    ax = xy_arena(n)
    ay = y_arena(n)
    yhat = yhat_assignment(prin.b0)
    for i in range(n):
        f_yhat = substitute(prin.f[i], yhat)
        f_y = prin.f[i].extend(ax)
        gshift = tuple(prin.g[l][i] for l in range(n)) + (0,) * n
        if free.x[i].num * f_y != free.x[i].den * f_yhat.shift(gshift):
            return {"index": i + 1, "kind": "x"}
        num = Poly.one(ay)
        den = Poly.one(ay)
        for j in range(n):
            cji = prin.c[j][i]
            if cji > 0:
                num = num * Poly.var(ay, f"y{j + 1}") ** cji
            elif cji < 0:
                den = den * Poly.var(ay, f"y{j + 1}") ** (-cji)
            bji = prin.b.rows[j][i]
            if bji > 0:
                num = num * prin.f[j] ** bji
            elif bji < 0:
                den = den * prin.f[j] ** (-bji)
        if free.y[i].num * den != free.y[i].den * num:
            return {"index": i + 1, "kind": "y"}
    return None


def check_separation(B, path, budget=None):
    """Cross-check: free-coefficient mutation against C/G/F reconstruction.

    Walks the path with both engines and verifies the x- and y-formulas at
    every intermediate vertex.  Returns a report dict with the first
    discrepancy.  Raises SizeBudgetExceeded if the walk outgrows the budget.
    """
    free = free_initial(B)
    prin = initial_seed(B)
    for step, k in enumerate(path, start=1):
        free = mutate_free(free, k, budget=budget)
        prin = mutate(prin, k)
        bad = separation_mismatch(free, prin)
        if bad is not None:
            return {"ok": False, "step": step, **bad}
    return {"ok": True, "steps": len(path)}


# -- geometric-type seeds -------------------------------------------------

@dataclass(frozen=True)
class GeometricSeed:
    """Seed of geometric type: extended matrix plus the cluster variables as
    Laurent polynomials in the initial x's and the frozen u's."""

    bt: ExtendedExchangeMatrix
    x: tuple  # of Poly over xu_arena
    path: tuple = field(default=(), compare=False)

    @property
    def n(self):
        return self.bt.n

    @property
    def m(self):
        return self.bt.m


def geometric_initial(Bt):
    arena = xu_arena(Bt.n, Bt.m)
    xs = tuple(Poly.var(arena, f"x{i + 1}") for i in range(Bt.n))
    return GeometricSeed(bt=Bt, x=xs)


def mutate_geometric(seed, k):
    """Exchange relation in the frozen-variable presentation; the division by
    the old variable is exact and the result stays polynomial in the u's."""
    n, m = seed.n, seed.m
    if not 1 <= k <= n:
        raise ValueError(f"direction {k} out of range 1..{n}")
    k0 = k - 1
    arena = seed.x[0].arena
    rows = seed.bt.all_rows()
    plus = Poly.one(arena)
    minus = Poly.one(arena)
    for j in range(n):
        e = rows[j][k0]
        if e > 0:
            plus = plus * seed.x[j] ** e
        elif e < 0:
            minus = minus * seed.x[j] ** (-e)
    for j in range(m):
        e = rows[n + j][k0]
        uj = Poly.var(arena, f"u{j + 1}")
        if e > 0:
            plus = plus * uj ** e
        elif e < 0:
            minus = minus * uj ** (-e)
    new_xk = exact_div(plus + minus, seed.x[k0])
    if any(e < 0 for e in new_xk.min_exponents(range(n, n + m))):
        raise InvariantViolation("frozen-variable exponent went negative")
    x_new = list(seed.x)
    x_new[k0] = new_xk
    return GeometricSeed(bt=mutate_extended(seed.bt, k), x=tuple(x_new), path=seed.path + (k,))


# -- exchange-graph enumeration -------------------------------------------

@dataclass
class ExchangeGraphResult:
    seeds: list
    edges: list  # (seed_index, direction, seed_index)
    cluster_variables: list  # (g_vector, F poly)
    complete: bool


def canonical_seed(seed):
    """Representative of the unlabeled seed: relabel by sorting g-vectors.

    G is invertible, so its columns are distinct and sorting them fixes one
    labeled representative per orbit; ties never arise but C- and B-columns
    are included in the sort key anyway.
    """
    n = seed.n
    order = sorted(
        range(n),
        key=lambda j: (
            _column(seed.g, j),
            _column(seed.c, j),
            tuple(seed.b.rows[i][j] for i in range(n)),
        ),
    )
    sigma = [0] * n  # sigma[old0] = new 1-based
    for new0, old0 in enumerate(order):
        sigma[old0] = new0 + 1
    return apply_permutation(seed, tuple(sigma))


def _seed_key(seed):
    return (
        seed.b.rows,
        seed.c,
        seed.g,
        tuple(term_key(fi) for fi in seed.f),
    )


def enumerate_seeds(B, budget=50000):
    """Breadth-first closure of the unlabeled-seed graph from the initial seed.

    Distinct cluster variables are keyed by (g-vector, F-polynomial), which
    identifies a variable across all the seeds containing it.
    """
    start = canonical_seed(initial_seed(B))
    seeds = [start]
    index = {_seed_key(start): 0}
    edges = []
    frontier = [0]
    complete = True
    while frontier and complete:
        nxt = []
        for i in frontier:
            s = seeds[i]
            for k in range(1, B.n + 1):
                t = canonical_seed(mutate(s, k))
                key = _seed_key(t)
                j = index.get(key)
                if j is None:
                    if len(seeds) >= budget:
                        complete = False
                        break
                    j = len(seeds)
                    index[key] = j
                    seeds.append(t)
                    nxt.append(j)
                edges.append((i, k, j))
            if not complete:
                break
        frontier = nxt
    variables = {}
    for s in seeds:
        for i in range(B.n):
            gvec = _column(s.g, i)
            variables.setdefault((gvec, term_key(s.f[i])), (gvec, s.f[i]))
    return ExchangeGraphResult(
        seeds=seeds,
        edges=edges,
        cluster_variables=list(variables.values()),
        complete=complete,
    )


def graph_to_dot(result, name="exchange_graph"):
    lines = [f"graph {name} {{"]
    for i in range(len(result.seeds)):
        lines.append(f'  s{i} [label="{i}"];')
    seen = set()
    for i, k, j in result.edges:
        key = (min(i, j), max(i, j), k) if i != j else (i, j, k)
        if key in seen:
            continue
        seen.add(key)
        lines.append(f'  s{i} -- s{j} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines)


def g_fan(result):
    """Rank-2 G-fan: the seeds' g-vector pairs in counterclockwise order."""
    import math

    cones = []
    for s in result.seeds:
        g1 = _column(s.g, 0)
        g2 = _column(s.g, 1)
        if len(g1) != 2:
            raise ValueError("g-fan export is rank-2 only")
        mid = (g1[0] + g2[0], g1[1] + g2[1])
        cones.append((math.atan2(mid[1], mid[0]) % (2 * math.pi), [list(g1), list(g2)]))
    cones.sort(key=lambda t: t[0])
    return [c for _, c in cones]


def g_fan_svg(result, size=360):
    """Minimal SVG drawing of a rank-2 G-fan: rays from the origin."""
    rays = set()
    for cone in g_fan(result):
        for v in cone:
            rays.add(tuple(v))
    c = size / 2
    scale = size / 6
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for vx, vy in sorted(rays):
        lines.append(
            f'<line x1="{c}" y1="{c}" x2="{c + scale * vx}" y2="{c - scale * vy}" '
            'stroke="black" stroke-width="2"/>'
        )
        lines.append(
            f'<text x="{c + scale * vx * 1.15}" y="{c - scale * vy * 1.15}" '
            f'font-size="12" text-anchor="middle">({vx},{vy})</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines)


# -- JSON seed documents ---------------------------------------------------

def seed_to_json(seed):
    return {
        "b0": seed.b0.to_json(),
        "b": seed.b.to_json(),
        "c": [list(r) for r in seed.c],
        "g": [list(r) for r in seed.g],
        "f": [poly_to_json(fi) for fi in seed.f],
        "path": list(seed.path),
    }


def seed_from_json(doc):
    b0 = ExchangeMatrix(doc["b0"])
    n = b0.n
    arena = y_arena(n)
    return PrincipalSeed(
        b0=b0,
        b=ExchangeMatrix(doc["b"]),
        c=tuple(tuple(int(x) for x in r) for r in doc["c"]),
        g=tuple(tuple(int(x) for x in r) for r in doc["g"]),
        f=tuple(poly_from_json(arena, fj) for fj in doc["f"]),
        path=tuple(int(k) for k in doc.get("path", [])),
    )


def graph_to_json(result):
    return {
        "seeds": [seed_to_json(s) for s in result.seeds],
        "edges": [list(e) for e in result.edges],
        "cluster_variables": [
            {"g": list(g), "f": poly_to_json(f)} for g, f in result.cluster_variables
        ],
        "complete": result.complete,
    }
