"""Skew-symmetrizable matrices, quivers, their mutations, Cartan
counterparts, Dynkin recognition, and finite-type search.

Mutation directions are 1-based throughout the public API, matching the
usual indexing of matrix rows/columns by 1..n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


class NotSkewSymmetrizable(ValueError):
    pass


class NotSkewSymmetric(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """A search hit its budget without reaching a definitive answer."""


def pos(a):
    """[a]_+ = max(a, 0)."""
    return a if a > 0 else 0


def find_skew_symmetrizer(rows):
    """Minimal positive integer diagonal D with D*B skew-symmetric.

    The entries are determined per connected component of the nonzero
    pattern by the ratios |b_ij|/|b_ji| and scaled so each component's
    entries are integers with gcd 1.  Raises NotSkewSymmetrizable when the
    sign pattern is violated or the ratios are inconsistent.
    """
    n = len(rows)
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("matrix must be square")
        if rows[i][i] != 0:
            raise NotSkewSymmetrizable("nonzero diagonal entry")
        for j in range(n):
            a, b = rows[i][j], rows[j][i]
            if (a == 0) != (b == 0) or (a > 0 and b > 0) or (a < 0 and b < 0):
                raise NotSkewSymmetrizable(f"sign pattern violated at ({i + 1},{j + 1})")
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        component = [start]
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                ratio = Fraction(abs(rows[i][j]), abs(rows[j][i]))
                val = d[i] * ratio
                if d[j] is None:
                    d[j] = val
                    component.append(j)
                    stack.append(j)
                elif d[j] != val:
                    raise NotSkewSymmetrizable("inconsistent symmetrizer ratios")
        denom = lcm(*[x.denominator for x in (d[i] for i in component)])
        ints = [int(d[i] * denom) for i in component]
        g = 0
        for v in ints:
            g = gcd(g, v)
        for i, v in zip(component, ints):
            d[i] = v // g
    return tuple(int(x) for x in d)


class ExchangeMatrix:
    """Immutable n x n skew-symmetrizable integer matrix."""

    __slots__ = ("rows", "n")

    def __init__(self, rows, _trusted=False):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", len(rows))
        if not _trusted:
            find_skew_symmetrizer(rows)  # validates shape, signs, consistency

    def __setattr__(self, name, value):
        raise AttributeError("ExchangeMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, ExchangeMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        return f"ExchangeMatrix({[list(r) for r in self.rows]})"

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def skew_symmetrizer(self):
        return find_skew_symmetrizer(self.rows)

    def is_skew_symmetric(self):
        return all(
            self.rows[i][j] == -self.rows[j][i] for i in range(self.n) for j in range(self.n)
        )

    def to_json(self):
        return [list(r) for r in self.rows]


def _mutate_rows(rows, k0, eps, nrows, ncols):
    """Shared mutation kernel: all rows, columns < ncols, direction k0 (0-based)."""
    out = [list(r) for r in rows]
    for i in range(nrows):
        bik = rows[i][k0]
        for j in range(ncols):
            if i == k0 or j == k0:
                out[i][j] = -rows[i][j]
            else:
                bkj = rows[k0][j]
                out[i][j] = rows[i][j] + bik * pos(eps * bkj) + pos(-eps * bik) * bkj
    return out


def mutate_matrix(B, k, eps=1):
    """Mutation of B in direction k (1-based); the result is eps-independent."""
    if not 1 <= k <= B.n:
        raise ValueError(f"direction {k} out of range 1..{B.n}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    # mutation preserves every skew-symmetrizer, so skip re-validation
    return ExchangeMatrix(_mutate_rows(B.rows, k - 1, eps, B.n, B.n), _trusted=True)


@dataclass(frozen=True)
class ExtendedExchangeMatrix:
    """Top n x n exchange matrix stacked over m extra integer coefficient rows."""

    top: ExchangeMatrix
    bottom: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "bottom", tuple(tuple(int(x) for x in row) for row in self.bottom)
        )
        for row in self.bottom:
            if len(row) != self.top.n:
                raise ValueError("coefficient rows must have n columns")

    @property
    def n(self):
        return self.top.n

    @property
    def m(self):
        return len(self.bottom)

    @classmethod
    def from_rows(cls, rows, n):
        rows = [list(r) for r in rows]
        return cls(ExchangeMatrix(rows[:n]), tuple(tuple(r) for r in rows[n:]))

    def all_rows(self):
        return tuple(self.top.rows) + self.bottom

    def to_json(self):
        return {"top": self.top.to_json(), "bottom": [list(r) for r in self.bottom]}


def mutate_extended(Bt, k, eps=1):
    """One matrix mutation applied to all n+m rows and the first n columns."""
    if not 1 <= k <= Bt.n:
        raise ValueError(f"direction {k} out of range 1..{Bt.n}")
    rows = Bt.all_rows()
    out = _mutate_rows(rows, k - 1, eps, Bt.n + Bt.m, Bt.n)
    return ExtendedExchangeMatrix(
        ExchangeMatrix(out[: Bt.n], _trusted=True), tuple(tuple(r) for r in out[Bt.n :])
    )


# -- quivers -----------------------------------------------------------

class Quiver:
    """Quiver without loops or 2-cycles: vertices 1..n, arrow multiplicities."""

    __slots__ = ("n", "arrows")

    def __init__(self, n, arrows):
        clean = {}
        for (i, j), m in arrows.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"arrow ({i},{j}) out of range")
            if i == j:
                raise ValueError("loops are not allowed")
            if m < 0:
                raise ValueError("multiplicity must be positive")
            if m:
                clean[(i, j)] = int(m)
        for (i, j) in clean:
            if (j, i) in clean:
                raise ValueError("2-cycles are not allowed")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arrows", dict(clean))

    def __setattr__(self, name, value):
        raise AttributeError("Quiver is immutable")

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.n == other.n and self.arrows == other.arrows

    def __repr__(self):
        return f"Quiver({self.n}, {self.arrows})"


def to_quiver(B):
    """Quiver of a skew-symmetric exchange matrix: b_ij > 0 gives b_ij arrows i -> j."""
    if not B.is_skew_symmetric():
        raise NotSkewSymmetric("quivers encode skew-symmetric matrices only")
    arrows = {}
    for i in range(B.n):
        for j in range(B.n):
            if B.rows[i][j] > 0:
                arrows[(i + 1, j + 1)] = B.rows[i][j]
    return Quiver(B.n, arrows)


def from_quiver(Q):
    rows = [[0] * Q.n for _ in range(Q.n)]
    for (i, j), m in Q.arrows.items():
        rows[i - 1][j - 1] = m
        rows[j - 1][i - 1] = -m
    return ExchangeMatrix(rows)


def mutate_quiver(Q, k):
    """Quiver mutation at vertex k: compose through k, net out 2-cycles,
    then reverse every arrow at k."""
    if not 1 <= k <= Q.n:
        raise ValueError(f"vertex {k} out of range 1..{Q.n}")
    net = dict(Q.arrows)

    def add(i, j, m):
        have = net.get((i, j), 0) - net.get((j, i), 0) + m
        net.pop((i, j), None)
        net.pop((j, i), None)
        if have > 0:
            net[(i, j)] = have
        elif have < 0:
            net[(j, i)] = -have

    for i in range(1, Q.n + 1):
        p = Q.arrows.get((i, k), 0)
        if not p:
            continue
        for j in range(1, Q.n + 1):
            q = Q.arrows.get((k, j), 0)
            if q:
                add(i, j, p * q)
    out = {}
    for (i, j), m in net.items():
        if i == k or j == k:
            out[(j, i)] = m
        else:
            out[(i, j)] = m
    return Quiver(Q.n, out)


def quiver_to_dot(Q, frozen=(), name="quiver"):
    """Graphviz DOT rendering; frozen vertices are drawn as boxes."""
    frozen = set(frozen)
    lines = [f"digraph {name} {{"]
    for v in range(1, Q.n + 1):
        shape = "box" if v in frozen else "circle"
        lines.append(f'  v{v} [label="{v}", shape={shape}];')
    for (i, j), m in sorted(Q.arrows.items()):
        label = f' [label="{m}"]' if m > 1 else ""
        lines.append(f"  v{i} -> v{j}{label};")
    lines.append("}")
    return "\n".join(lines)


def extended_to_dot(Bt, name="quiver"):
    """DOT for an extended matrix: mutable round vertices, frozen boxes.

    Arrows among frozen vertices are not represented in the data and are
    omitted.
    """
    n, m = Bt.n, Bt.m
    rows = Bt.all_rows()
    lines = [f"digraph {name} {{"]
    for v in range(1, n + 1):
        lines.append(f'  v{v} [label="{v}", shape=circle];')
    for v in range(n + 1, n + m + 1):
        lines.append(f'  v{v} [label="u{v - n}", shape=box];')
    for i in range(n + m):
        for j in range(n):
            mult = rows[i][j]
            if mult > 0:
                label = f' [label="{mult}"]' if mult > 1 else ""
                lines.append(f"  v{i + 1} -> v{j + 1}{label};")
    lines.append("}")
    return "\n".join(lines)


# -- Cartan matrices and Dynkin recognition -----------------------------

@dataclass(frozen=True)
class DynkinLabel:
    """Finite Dynkin type together with the vertex relabeling that was found.

    ``relabeling[p]`` is the input vertex (1-based) sitting at standard
    diagram position p+1.  B2 and C2 are identified and reported as B2.
    """

    family: str
    rank: int
    relabeling: tuple = ()

    def __str__(self):
        return f"{self.family}{self.rank}"

    def same_type(self, other):
        return (self.family, self.rank) == (other.family, other.rank)


class CartanMatrix:
    """Generalized Cartan matrix: 2 on the diagonal, nonpositive off-diagonal,
    with a_ij < 0 iff a_ji < 0."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rows)
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("matrix must be square")
            if rows[i][i] != 2:
                raise ValueError("diagonal entries must equal 2")
            for j in range(n):
                if i != j:
                    if rows[i][j] > 0:
                        raise ValueError("off-diagonal entries must be <= 0")
                    if (rows[i][j] < 0) != (rows[j][i] < 0):
                        raise ValueError("a_ij < 0 must pair with a_ji < 0")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("CartanMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, CartanMatrix) and self.rows == other.rows

    def to_json(self):
        return [list(r) for r in self.rows]


def cartan_counterpart(B):
    """Cartan matrix with a_ii = 2 and a_ij = -|b_ij| off the diagonal."""
    n = B.n
    return CartanMatrix(
        [[2 if i == j else -abs(B.rows[i][j]) for j in range(n)] for i in range(n)]
    )


def det_int(rows):
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def all_principal_minors_positive(A):
    n = A.n
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        sub = [[A.rows[i][j] for j in idx] for i in idx]
        if det_int(sub) <= 0:
            return False
    return True


def _components(rows):
    n = len(rows)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if not seen[j] and (rows[i][j] or rows[j][i]):
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def decompose(B):
    """Connected components of the nonzero pattern, as 1-based index blocks."""
    return [[i + 1 for i in comp] for comp in _components(B.rows)]


def is_decomposable_cartan(A):
    return len(_components([[0 if i == j else A.rows[i][j] for j in range(A.n)] for i in range(A.n)])) > 1


def _match_dynkin_shape(A):
    """Shape matcher for indecomposable Cartan matrices; returns DynkinLabel or None."""
    n = A.n
    if n == 1:
        return DynkinLabel("A", 1, (1,))
    edges = {}
    adj = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if A.rows[i][j]:
                w = A.rows[i][j] * A.rows[j][i]
                edges[(i, j)] = w
                adj[i].append(j)
                adj[j].append(i)
    if len(edges) != n - 1:
        return None  # a finite Dynkin diagram is a tree
    if any(w > 3 for w in edges.values()):
        return None
    heavy = [(e, w) for e, w in edges.items() if w > 1]

    def arm(start, prev):
        # walk away from a branch/end vertex; return vertex list
        out = [start]
        cur, last = start, prev
        while True:
            nxt = [v for v in adj[cur] if v != last]
            if len(nxt) != 1:
                return out if not nxt else None
            last, cur = cur, nxt[0]
            out.append(cur)

    deg3 = [v for v in range(n) if len(adj[v]) == 3]
    if any(len(adj[v]) > 3 for v in range(n)):
        return None

    if not heavy:
        if not deg3:
            # path: type A_n
            ends = [v for v in range(n) if len(adj[v]) == 1]
            order = arm(ends[0], None)
            return DynkinLabel("A", n, tuple(v + 1 for v in order))
        if len(deg3) != 1:
            return None
        b = deg3[0]
        arms = []
        for w in adj[b]:
            a = arm(w, b)
            if a is None:
                return None
            arms.append(a)
        arms.sort(key=len)
        l1, l2, l3 = (len(a) for a in arms)
        if l1 == 1 and l2 == 1:
            # D_n: long arm then the two short ones
            order = list(reversed(arms[2])) + [b] + [arms[0][0], arms[1][0]]
            return DynkinLabel("D", n, tuple(v + 1 for v in order))
        if l1 == 1 and l2 == 2 and l3 in (2, 3, 4):
            rank = {2: 6, 3: 7, 4: 8}[l3]
            order = list(reversed(arms[2])) + [b] + arms[1] + arms[0]
            return DynkinLabel("E", rank, tuple(v + 1 for v in order))
        return None

    if len(heavy) != 1 or deg3:
        return None
    (hi, hj), w = heavy[0]
    if w == 3:
        if n != 2:
            return None
        # G2 standard orientation: a_12 = -1, a_21 = -3
        order = (hi, hj) if A.rows[hi][hj] == -1 else (hj, hi)
        return DynkinLabel("G", 2, tuple(v + 1 for v in order))
    # single double edge: B_n / C_n when terminal, F4 when central
    ends = [v for v in range(n) if len(adj[v]) == 1]
    if len(ends) != 2:
        return None
    path = arm(ends[0], None)
    if path is None or len(path) != n:
        return None
    if n == 2:
        # B2 and C2 are identified; put the short root last
        order = path if A.rows[path[1]][path[0]] == -2 else list(reversed(path))
        return DynkinLabel("B", 2, tuple(v + 1 for v in order))
    lo = min(path.index(hi), path.index(hj))
    if lo == 0:
        path = list(reversed(path))
        lo = n - 2 - lo
    if lo == n - 2:
        u, v = path[-1], path[-2]  # u is the end vertex at the double edge
        if A.rows[v][u] == -1 and A.rows[u][v] == -2:
            return DynkinLabel("B", n, tuple(x + 1 for x in path))
        return DynkinLabel("C", n, tuple(x + 1 for x in path))
    if n == 4 and lo == 1:
        u, v = path[1], path[2]
        if A.rows[u][v] == -1 and A.rows[v][u] == -2:
            return DynkinLabel("F", 4, tuple(x + 1 for x in path))
        return DynkinLabel("F", 4, tuple(x + 1 for x in reversed(path)))
    return None


def classify_cartan(A):
    """Dynkin label of an indecomposable Cartan matrix, or None.

    The diagram-shape match is cross-checked against the independent
    positive-principal-minors criterion; a disagreement would be an
    internal bug and raises.
    """
    if is_decomposable_cartan(A):
        raise ValueError("classify_cartan requires an indecomposable Cartan matrix")
    label = _match_dynkin_shape(A)
    minors_ok = all_principal_minors_positive(A)
    if (label is not None) != minors_ok:
        raise AssertionError(
            f"Dynkin shape match ({label}) disagrees with principal-minor test ({minors_ok})"
        )
    return label


def is_acyclic(B):
    """No directed cycle i_1 -> i_2 -> ... -> i_1 (length >= 3) with positive entries."""
    n = B.n
    color = [0] * n  # 0 unvisited, 1 on stack, 2 done

    def dfs(v):
        color[v] = 1
        for w in range(n):
            if B.rows[v][w] > 0:
                if color[w] == 1:
                    return False
                if color[w] == 0 and not dfs(w):
                    return False
        color[v] = 2
        return True

    return all(color[v] != 0 or dfs(v) for v in range(n))


# -- canonical form and finite-type search ------------------------------

def canonical_matrix(rows):
    """Lexicographically minimal matrix over simultaneous row/column permutations.

    Entries are compared shell by shell (the k-th shell is row k up to column
    k followed by column k up to row k-1), which lets the backtracking prune
    as soon as a partial assignment exceeds the best found so far.
    """
    n = len(rows)
    if n <= 1:
        return tuple(tuple(r) for r in rows)
    best = [None]

    def shell(perm, k):
        row = [rows[perm[k]][perm[j]] for j in range(k + 1)]
        col = [rows[perm[i]][perm[k]] for i in range(k)]
        return row + col

    def rec(perm, used, prefix):
        k = len(perm)
        if k == n:
            best[0] = prefix
            return
        candidates = []
        for v in range(n):
            if not used[v]:
                candidates.append((shell(perm + [v], k), v))
        candidates.sort()
        for sh, v in candidates:
            new_prefix = prefix + sh
            if best[0] is not None:
                cut = best[0][: len(new_prefix)]
                if new_prefix > cut:
                    continue
            used[v] = True
            rec(perm + [v], used, new_prefix)
            used[v] = False

    rec([], [False] * n, [])
    flat = best[0]
    # rebuild the matrix from its shells
    out = [[0] * n for _ in range(n)]
    pos_ = 0
    for k in range(n):
        for j in range(k + 1):
            out[k][j] = flat[pos_]
            pos_ += 1
        for i in range(k):
            out[i][k] = flat[pos_]
            pos_ += 1
    return tuple(tuple(r) for r in out)


def is_finite_type(B, max_matrices=10000, max_depth=12):
    """Dynkin label of the mutation class of an indecomposable B, else None.

    Breadth-first search over the mutation class (canonicalized up to
    simultaneous permutation) stops at the first matrix whose Cartan
    counterpart is of finite type.  A fully explored class with no hit is
    definitively not of finite type (None).  Raises BudgetExceeded when the
    budget runs out before either outcome.
    """
    if len(decompose(B)) > 1:
        raise ValueError("is_finite_type requires an indecomposable matrix")
    n = B.n
    if n == 1:
        return DynkinLabel("A", 1, (1,))
    if n == 2:
        m = abs(B.rows[0][1] * B.rows[1][0])
        if m <= 3:
            return classify_cartan(cartan_counterpart(B))
        return None
    label = classify_cartan(cartan_counterpart(B))
    if label is not None:
        return label
    seen = {canonical_matrix(B.rows)}
    frontier = [B]
    depth = 0
    while frontier:
        if depth >= max_depth:
            raise BudgetExceeded(f"depth budget {max_depth} exhausted")
        depth += 1
        nxt = []
        for cur in frontier:
            for k in range(1, n + 1):
                mut = mutate_matrix(cur, k)
                key = canonical_matrix(mut.rows)
                if key in seen:
                    continue
                label = classify_cartan(cartan_counterpart(mut))
                if label is not None:
                    return label
                if len(seen) >= max_matrices:
                    raise BudgetExceeded(f"matrix budget {max_matrices} exhausted")
                seen.add(key)
                nxt.append(mut)
        frontier = nxt
    return None


def classify_blocks(B, max_matrices=10000, max_depth=12):
    """Per-block finite-type labels for a possibly decomposable matrix."""
    labels = []
    for block in decompose(B):
        idx = [i - 1 for i in block]
        sub = ExchangeMatrix([[B.rows[i][j] for j in idx] for i in idx])
        labels.append(is_finite_type(sub, max_matrices=max_matrices, max_depth=max_depth))
    return labels


def matrix_from_json(data):
    return ExchangeMatrix(data)
