"""Embedded reference tables for the worked rank-2, Grassmannian, and
generalized examples, plus the replay routines that diff a fresh
computation against them.

Each replay function returns a list of mismatch strings; an empty list
means the recomputation agrees with the stored tables everywhere.
"""

from __future__ import annotations

from .exchange import ExchangeMatrix, ExtendedExchangeMatrix
from .gca import (
    companion_identities_hold,
    companion_patterns,
    gca_duality_check,
    gca_initial,
    mutate_gca,
    right_companion_specialize,
    validate_data,
)
from .pattern import (
    apply_permutation_free,
    cluster_variable,
    d_vector,
    enumerate_seeds,
    free_initial,
    geometric_initial,
    initial_seed,
    mutate,
    mutate_free,
    mutate_geometric,
    term_key,
    xy_arena,
    y_arena,
)
from .polyring import parse_poly, to_text

A2_MATRIX = [[0, -1], [1, 0]]
B2_MATRIX = [[0, -1], [2, 0]]
G2_MATRIX = [[0, -1], [3, 0]]

# C_t, G_t (rows), F_t (text in y) for the alternating walk 1,2,1,2,1 from
# the initial vertex of the rank-2 case with single arrows.
A2_CGF = [
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
    {"c": [[-1, 0], [0, 1]], "g": [[-1, 0], [0, 1]], "f": ["1 + y1", "1"]},
    {"c": [[-1, 0], [0, -1]], "g": [[-1, 0], [0, -1]], "f": ["1 + y1", "1 + y2 + y1*y2"]},
    {"c": [[1, -1], [0, -1]], "g": [[1, 0], [-1, -1]], "f": ["1 + y2", "1 + y2 + y1*y2"]},
    {"c": [[0, 1], [-1, 1]], "g": [[1, 1], [-1, 0]], "f": ["1 + y2", "1"]},
    {"c": [[0, 1], [1, 0]], "g": [[0, 1], [1, 0]], "f": ["1", "1"]},
]

# The complete cluster-variable lists, expanded in ZZ[x^{+-1}, y].
A2_VARIABLES = [
    "x1",
    "x2",
    "x1^-1 + y1*x1^-1*x2",
    "x2^-1 + y2*x1^-1*x2^-1 + y1*y2*x1^-1",
    "x1*x2^-1 + y2*x2^-1",
]

B2_VARIABLES = [
    "x1",
    "x2",
    "x1^-1 + y1*x1^-1*x2^2",
    "x2^-1 + y2*x1^-1*x2^-1 + y1*y2*x1^-1*x2",
    "x1*x2^-2 + 2*y2*x2^-2 + y2^2*x1^-1*x2^-2 + y1*y2^2*x1^-1",
    "x1*x2^-1 + y2*x2^-1",
]

G2_VARIABLES = [
    "x1",
    "x2",
    "x1^-1 + y1*x1^-1*x2^3",
    "x2^-1 + y2*x1^-1*x2^-1 + y1*y2*x1^-1*x2^2",
    "x1*x2^-3 + 3*y2*x2^-3 + 3*y2^2*x1^-1*x2^-3 + y2^3*x1^-2*x2^-3"
    " + 3*y1*y2^2*x1^-1 + 2*y1*y2^3*x1^-2 + y1^2*y2^3*x1^-2*x2^3",
    "x1*x2^-2 + 2*y2*x2^-2 + y2^2*x1^-1*x2^-2 + y1*y2^2*x1^-1*x2",
    "x1^2*x2^-3 + 3*y2*x1*x2^-3 + 3*y2^2*x2^-3 + y2^3*x1^-1*x2^-3 + y1*y2^3*x1^-1",
    "x1*x2^-1 + y2*x2^-1",
]

A2_D_VECTORS = [(0, 1), (1, 0), (1, 1)]
B2_D_VECTORS = [(0, 1), (1, 0), (1, 1), (1, 2)]
G2_D_VECTORS = [(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 3)]

# Per-step C/G/F data for the longer rank-2 walks, read off the monomial
# parts of the same reference tables as the variable lists above.
B2_CGF = [
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
    {"c": [[-1, 0], [0, 1]], "g": [[-1, 0], [0, 1]], "f": ["1 + y1", "1"]},
    {"c": [[-1, 0], [0, -1]], "g": [[-1, 0], [0, -1]], "f": ["1 + y1", "1 + y2 + y1*y2"]},
    {
        "c": [[1, -1], [0, -1]],
        "g": [[1, 0], [-2, -1]],
        "f": ["1 + 2*y2 + y2^2 + y1*y2^2", "1 + y2 + y1*y2"],
    },
    {
        "c": [[-1, 1], [-2, 1]],
        "g": [[1, 1], [-2, -1]],
        "f": ["1 + 2*y2 + y2^2 + y1*y2^2", "1 + y2"],
    },
    {"c": [[1, 0], [2, -1]], "g": [[1, 1], [0, -1]], "f": ["1", "1 + y2"]},
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
]

_G2_F1_DEEP = "1 + 3*y2 + 3*y2^2 + y2^3 + 3*y1*y2^2 + 2*y1*y2^3 + y1^2*y2^3"
_G2_F1_TALL = "1 + 3*y2 + 3*y2^2 + y2^3 + y1*y2^3"
G2_CGF = [
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
    {"c": [[-1, 0], [0, 1]], "g": [[-1, 0], [0, 1]], "f": ["1 + y1", "1"]},
    {"c": [[-1, 0], [0, -1]], "g": [[-1, 0], [0, -1]], "f": ["1 + y1", "1 + y2 + y1*y2"]},
    {
        "c": [[1, -1], [0, -1]],
        "g": [[1, 0], [-3, -1]],
        "f": [_G2_F1_DEEP, "1 + y2 + y1*y2"],
    },
    {
        "c": [[-2, 1], [-3, 1]],
        "g": [[1, 1], [-3, -2]],
        "f": [_G2_F1_DEEP, "1 + 2*y2 + y2^2 + y1*y2^2"],
    },
    {
        "c": [[2, -1], [3, -2]],
        "g": [[2, 1], [-3, -2]],
        "f": [_G2_F1_TALL, "1 + 2*y2 + y2^2 + y1*y2^2"],
    },
    {
        "c": [[-1, 1], [-3, 2]],
        "g": [[2, 1], [-3, -1]],
        "f": [_G2_F1_TALL, "1 + y2"],
    },
    {"c": [[1, 0], [3, -1]], "g": [[1, 1], [0, -1]], "f": ["1", "1 + y2"]},
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
]

# Extended exchange matrices along the alternating walk for the pentagon
# cluster structure with five frozen sides; rows are the two mutable rows
# followed by the frozen rows a..e.
GR25_MATRICES = [
    [[0, -1], [1, 0], [-1, 0], [1, 0], [-1, 1], [0, -1], [0, 1]],
    [[0, 1], [-1, 0], [1, -1], [-1, 0], [1, 0], [0, -1], [0, 1]],
    [[0, -1], [1, 0], [0, 1], [-1, 0], [1, 0], [-1, 1], [0, -1]],
    [[0, 1], [-1, 0], [0, 1], [1, -1], [-1, 0], [1, 0], [0, -1]],
    [[0, -1], [1, 0], [0, -1], [0, 1], [-1, 0], [1, 0], [-1, 1]],
    [[0, 1], [-1, 0], [0, -1], [0, 1], [1, -1], [-1, 0], [1, 0]],
]

# Chord labels carried by (x_{1;t}, x_{2;t}) along the same walk.
GR25_LABELS = [
    ("13", "14"),
    ("24", "14"),
    ("24", "25"),
    ("35", "25"),
    ("35", "13"),
    ("14", "13"),
]

GCA_B2_R = [2, 1]
GCA_B2_Z = [[1, "z", 1], [1, 1]]
GCA_B2_TABLE = [
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
    {"c": [[-1, 0], [0, 1]], "g": [[-1, 0], [0, 1]], "f": ["1 + y1*z + y1^2", "1"]},
    {
        "c": [[-1, 0], [0, -1]],
        "g": [[-1, 0], [0, -1]],
        "f": ["1 + y1*z + y1^2", "1 + y2 + y1*y2*z + y1^2*y2"],
    },
    {
        "c": [[1, -2], [0, -1]],
        "g": [[1, 0], [-2, -1]],
        "f": [
            "1 + 2*y2 + y2^2 + y1*y2*z + y1*y2^2*z + y1^2*y2^2",
            "1 + y2 + y1*y2*z + y1^2*y2",
        ],
    },
    {
        "c": [[-1, 2], [-1, 1]],
        "g": [[1, 1], [-2, -1]],
        "f": ["1 + 2*y2 + y2^2 + y1*y2*z + y1*y2^2*z + y1^2*y2^2", "1 + y2"],
    },
    {"c": [[1, 0], [1, -1]], "g": [[1, 1], [0, -1]], "f": ["1", "1 + y2"]},
    {"c": [[1, 0], [0, 1]], "g": [[1, 0], [0, 1]], "f": ["1", "1"]},
]


def _walk_dirs(length):
    return [1 + (t % 2) for t in range(length)]


def _diff_cgf(tag, t, seed, row, arena):
    out = []
    if [list(r) for r in seed.c] != row["c"]:
        out.append(f"{tag} t={t}: C = {[list(r) for r in seed.c]}, expected {row['c']}")
    if [list(r) for r in seed.g] != row["g"]:
        out.append(f"{tag} t={t}: G = {[list(r) for r in seed.g]}, expected {row['g']}")
    expect_f = [parse_poly(arena, s) for s in row["f"]]
    if list(seed.f) != expect_f:
        out.append(f"{tag} t={t}: F = {seed.f_text()}, expected {row['f']}")
    return out


def _check_variables(tag, B, expected_texts):
    out = []
    arena = xy_arena(B.n)
    expected = {term_key(parse_poly(arena, s)) for s in expected_texts}
    result = enumerate_seeds(B)
    got = set()
    for s in result.seeds:
        for i in range(1, B.n + 1):
            got.add(term_key(cluster_variable(s, i)))
    if got != expected:
        out.append(f"{tag}: cluster-variable set mismatch ({len(got)} computed)")
    if len(result.cluster_variables) != len(expected_texts):
        out.append(
            f"{tag}: {len(result.cluster_variables)} variables enumerated, "
            f"expected {len(expected_texts)}"
        )
    return out, result


def _check_d_vectors(tag, result, expected):
    dvs = set()
    for s in result.seeds:
        for i in range(1, s.n + 1):
            dv = d_vector(s, i)
            if any(e > 0 for e in dv):
                dvs.add(dv)
    if dvs != set(expected):
        return [f"{tag}: d-vectors {sorted(dvs)}, expected {sorted(expected)}"]
    return []


def replay_a2():
    diffs = []
    B = ExchangeMatrix(A2_MATRIX)
    arena = y_arena(2)
    seed = initial_seed(B)
    for t in range(6):
        diffs += _diff_cgf("a2", t, seed, A2_CGF[t], arena)
        if t < 5:
            seed = mutate(seed, _walk_dirs(5)[t])
    var_diffs, result = _check_variables("a2", B, A2_VARIABLES)
    diffs += var_diffs
    diffs += _check_d_vectors("a2", result, A2_D_VECTORS)
    free = free_initial(B)
    for k in _walk_dirs(5):
        free = mutate_free(free, k)
    if free != apply_permutation_free(free_initial(B), (2, 1)):
        diffs.append("a2: the five-step walk is not the transposition of the initial seed")
    return diffs


def _replay_rank2(tag, matrix, period, variables, dvectors, cgf):
    diffs = []
    B = ExchangeMatrix(matrix)
    arena = y_arena(2)
    seed = initial_seed(B)
    for t in range(period + 1):
        diffs += _diff_cgf(tag, t, seed, cgf[t], arena)
        if t < period:
            seed = mutate(seed, _walk_dirs(period)[t])
    free = free_initial(B)
    for k in _walk_dirs(period):
        free = mutate_free(free, k)
    if free != free_initial(B):
        diffs.append(f"{tag}: free-coefficient walk of length {period} did not return")
    var_diffs, result = _check_variables(tag, B, variables)
    diffs += var_diffs
    if len(result.seeds) != period:
        diffs.append(f"{tag}: {len(result.seeds)} seeds enumerated, expected {period}")
    diffs += _check_d_vectors(tag, result, dvectors)
    return diffs


def replay_b2():
    return _replay_rank2("b2", B2_MATRIX, 6, B2_VARIABLES, B2_D_VECTORS, B2_CGF)


def replay_g2():
    return _replay_rank2("g2", G2_MATRIX, 8, G2_VARIABLES, G2_D_VECTORS, G2_CGF)


def replay_a1xa1():
    diffs = []
    B = ExchangeMatrix([[0, 0], [0, 0]])
    free = free_initial(B)
    for k in (1, 2, 1, 2):
        free = mutate_free(free, k)
    if free != free_initial(B):
        diffs.append("a1xa1: four-step walk did not return")
    result = enumerate_seeds(B)
    if len(result.seeds) != 4:
        diffs.append(f"a1xa1: {len(result.seeds)} seeds, expected 4")
    if len(result.cluster_variables) != 4:
        diffs.append(f"a1xa1: {len(result.cluster_variables)} variables, expected 4")
    return diffs


def replay_gr25():
    diffs = []
    Bt = ExtendedExchangeMatrix.from_rows(GR25_MATRICES[0], 2)
    seed = geometric_initial(Bt)
    seen = {}
    for t in range(6):
        rows = [list(r) for r in seed.bt.all_rows()]
        if rows != GR25_MATRICES[t]:
            diffs.append(f"gr25 t={t}: extended matrix mismatch: {rows}")
        for i in (0, 1):
            seen.setdefault(term_key(seed.x[i]), GR25_LABELS[t][i])
            if seen[term_key(seed.x[i])] != GR25_LABELS[t][i]:
                diffs.append(f"gr25 t={t}: variable label changed for slot {i + 1}")
        if t < 5:
            seed = mutate_geometric(seed, 1 + (t % 2))
    if len(seen) != 5:
        diffs.append(f"gr25: {len(seen)} distinct variables, expected 5")
    # exchange at the first step: x1 * x1' = u2 x2 + u1 u3
    first = mutate_geometric(geometric_initial(Bt), 1)
    arena = first.x[0].arena
    lhs = geometric_initial(Bt).x[0] * first.x[0]
    rhs = parse_poly(arena, "u2*x2 + u1*u3")
    if lhs != rhs:
        diffs.append("gr25: quadrilateral exchange relation failed")
    # ten alternating steps return to the initial labeled seed
    seed = geometric_initial(Bt)
    for t in range(10):
        seed = mutate_geometric(seed, 1 + (t % 2))
        for x in seed.x:
            if any(e < 0 for e in x.min_exponents(range(2, 7))):
                diffs.append(f"gr25: negative frozen exponent after step {t + 1}")
    if seed.bt != Bt or seed.x != geometric_initial(Bt).x:
        diffs.append("gr25: ten-step walk did not return to the initial seed")
    return diffs


def replay_gca_b2():
    diffs = []
    data = validate_data(GCA_B2_R, GCA_B2_Z)
    B = ExchangeMatrix(A2_MATRIX)
    seed = gca_initial(B, data)
    arena = seed.f[0].arena
    for t in range(7):
        row = GCA_B2_TABLE[t]
        if [list(r) for r in seed.c] != row["c"]:
            diffs.append(f"gca-b2 t={t}: C mismatch {[list(r) for r in seed.c]}")
        if [list(r) for r in seed.g] != row["g"]:
            diffs.append(f"gca-b2 t={t}: G mismatch {[list(r) for r in seed.g]}")
        if list(seed.f) != [parse_poly(arena, s) for s in row["f"]]:
            diffs.append(f"gca-b2 t={t}: F mismatch {[to_text(f) for f in seed.f]}")
        if not companion_identities_hold(seed):
            diffs.append(f"gca-b2 t={t}: companion identities failed")
        dual = gca_duality_check(seed)
        if not dual["ok"]:
            diffs.append(f"gca-b2 t={t}: duality failed {dual}")
        try:
            right_companion_specialize(seed)
        except Exception as e:
            diffs.append(f"gca-b2 t={t}: z->0 specialization failed: {e}")
        if t < 6:
            seed = mutate_gca(seed, 1 + (t % 2))
    if (seed.b, seed.c, seed.g, seed.f) != (
        gca_initial(B, data).b,
        gca_initial(B, data).c,
        gca_initial(B, data).g,
        gca_initial(B, data).f,
    ):
        diffs.append("gca-b2: six-step walk did not return")
    return diffs


EXAMPLES = {
    "a2": replay_a2,
    "b2": replay_b2,
    "g2": replay_g2,
    "a1xa1": replay_a1xa1,
    "gr25": replay_gr25,
    "gca-b2": replay_gca_b2,
}
