import random

import pytest

from clusterkit.exchange import ExchangeMatrix, pos
from clusterkit.pattern import (
    apply_permutation,
    canonical_seed,
    check_commutation,
    cluster_variable,
    coefficient,
    d_vector,
    enumerate_seeds,
    g_fan,
    initial_seed,
    mutate,
    mutate_eps,
    seed_from_json,
    seed_to_json,
    verify_invariants,
    xy_arena,
    y_arena,
)
from clusterkit.polyring import parse_poly
from clusterkit.semifield import SfRational, TropMonomial, specialize
from conftest import random_exchange_matrix

A2 = ExchangeMatrix([[0, -1], [1, 0]])
B2 = ExchangeMatrix([[0, -1], [2, 0]])
G2 = ExchangeMatrix([[0, -1], [3, 0]])


def walk(B, path, **kw):
    s = initial_seed(B)
    for k in path:
        s = mutate(s, k, **kw)
    return s


def test_initial_seed():
    s = initial_seed(A2)
    assert s.c == ((1, 0), (0, 1))
    assert s.g == ((1, 0), (0, 1))
    assert s.f_text() == ["1", "1"]
    assert verify_invariants(s)["ok"]
    s1 = initial_seed(ExchangeMatrix([[0]]))
    assert s1.c == ((1,),)


def test_a2_table_at_depth3():
    s = walk(A2, [1, 2, 1])
    assert s.c == ((1, -1), (0, -1))
    assert s.g == ((1, 0), (-1, -1))
    assert s.f_text() == ["1 + y2", "1 + y2 + y1*y2"]


def test_mutation_involutive(rng):
    for _ in range(30):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = walk(B, [rng.randint(1, n) for _ in range(4)])
        k = rng.randint(1, n)
        assert mutate(mutate(s, k), k) == s


def test_b2_depth4_fixture():
    s = walk(B2, [1, 2, 1, 2])
    assert s.f_text()[0] == "1 + 2*y2 + y2^2 + y1*y2^2"
    # x_{1;4} = x1 x2^-2 * (...), so the first g-vector is (1, -2)
    assert (s.g[0][0], s.g[1][0]) == (1, -2)


def test_eps_independence_random(rng):
    for _ in range(30):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = walk(B, [rng.randint(1, n) for _ in range(4)])
        k = rng.randint(1, n)
        assert mutate_eps(s, k, 1) == mutate_eps(s, k, -1) == mutate(s, k)


def test_sign_coherent_simplified_forms(rng):
    # with eps the sign of the mutating c-column, the dropped terms vanish
    for _ in range(30):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = walk(B, [rng.randint(1, n) for _ in range(5)])
        k = rng.randint(1, n)
        col = [s.c[i][k - 1] for i in range(n)]
        eps = 1 if any(x > 0 for x in col) else -1
        full = mutate(s, k)
        simple_c = tuple(
            tuple(
                -s.c[i][k - 1]
                if j == k - 1
                else s.c[i][j] + s.c[i][k - 1] * pos(eps * s.b.rows[k - 1][j])
                for j in range(n)
            )
            for i in range(n)
        )
        simple_g = tuple(
            tuple(
                -s.g[i][k - 1]
                + sum(s.g[i][l] * pos(-eps * s.b.rows[l][k - 1]) for l in range(n))
                if j == k - 1
                else s.g[i][j]
                for j in range(n)
            )
            for i in range(n)
        )
        assert simple_c == full.c
        assert simple_g == full.g


def test_a2_eps_walk_both_ways():
    path = [1, 2, 1, 2, 1]
    a = initial_seed(A2)
    b = initial_seed(A2)
    for k in path:
        a = mutate_eps(a, k, 1)
        b = mutate_eps(b, k, -1)
    assert a == b


def test_cluster_variable_examples():
    s = walk(A2, [1, 2])
    arena = xy_arena(2)
    assert cluster_variable(s, 2) == parse_poly(
        arena, "x2^-1 + y2*x1^-1*x2^-1 + y1*y2*x1^-1"
    )
    assert cluster_variable(initial_seed(A2), 1) == parse_poly(arena, "x1")
    g = walk(G2, [1, 2, 1])
    assert cluster_variable(g, 1) == parse_poly(
        arena,
        "x1*x2^-3 + 3*y2*x2^-3 + 3*y2^2*x1^-1*x2^-3 + y2^3*x1^-2*x2^-3"
        " + 3*y1*y2^2*x1^-1 + 2*y1*y2^3*x1^-2 + y1^2*y2^3*x1^-2*x2^3",
    )


def test_coefficient_tropical():
    s = walk(A2, [1])
    # principal coefficients: the c-vector columns cut out the monomials
    assert coefficient(s, 1) == TropMonomial((-1, 0))
    assert coefficient(s, 2) == TropMonomial((0, 1))
    assert coefficient(initial_seed(A2), 1) == TropMonomial((1, 0))


def test_coefficient_sf_matches_free_engine():
    from clusterkit.pattern import free_initial, mutate_free

    s = initial_seed(A2)
    f = free_initial(A2)
    gens = [SfRational.generator(y_arena(2), v) for v in y_arena(2)]
    for k in [1, 2, 1]:
        s = mutate(s, k)
        f = mutate_free(f, k)
        for i in (1, 2):
            assert coefficient(s, i, "sf", gens) == f.y[i - 1]


def test_d_vectors():
    res = enumerate_seeds(A2)
    dvs = {d_vector(s, i) for s in res.seeds for i in (1, 2)}
    assert {(1, 0), (1, 1), (0, 1)} <= dvs
    assert d_vector(initial_seed(A2), 1) == (-1, 0)


def test_verify_invariants_on_walks(rng):
    for _ in range(25):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = initial_seed(B)
        for _ in range(6):
            s = mutate(s, rng.randint(1, n), validate=False)
            report = verify_invariants(s)
            assert report["ok"], report


def test_apply_permutation_compatibility(rng):
    # relabeling commutes with mutation
    for _ in range(20):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = walk(B, [rng.randint(1, n) for _ in range(3)])
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        sigma = tuple(sigma)
        k = rng.randint(1, n)
        left = apply_permutation(mutate(s, k), sigma)
        right = mutate(apply_permutation(s, sigma), sigma[k - 1])
        assert left == right


def test_pentagon_permutation():
    s = walk(A2, [1, 2, 1, 2, 1])
    assert s == apply_permutation(initial_seed(A2), (2, 1))
    assert apply_permutation(s, (1, 2)) == s


def test_commutation():
    assert check_commutation(ExchangeMatrix([[0, 0], [0, 0]]), 1, 2)
    assert not check_commutation(A2, 1, 2)
    B = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    assert check_commutation(B, 1, 3)
    assert not check_commutation(B, 1, 2)


def test_commutation_iff_zero_entry(rng):
    for _ in range(20):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        k = rng.randint(1, n)
        l = rng.randint(1, n)
        if k == l:
            continue
        assert check_commutation(B, k, l) == (B.rows[k - 1][l - 1] == 0)


def test_enumerate_counts():
    assert len(enumerate_seeds(A2).seeds) == 5
    assert len(enumerate_seeds(A2).cluster_variables) == 5
    r = enumerate_seeds(B2)
    assert (len(r.seeds), len(r.cluster_variables)) == (6, 6)
    r = enumerate_seeds(G2)
    assert (len(r.seeds), len(r.cluster_variables)) == (8, 8)
    r = enumerate_seeds(ExchangeMatrix([[0, 0], [0, 0]]))
    assert (len(r.seeds), len(r.cluster_variables)) == (4, 4)
    assert len(enumerate_seeds(ExchangeMatrix([[0]])).seeds) == 2


def test_enumerate_complete_closure():
    r = enumerate_seeds(G2)
    assert r.complete
    # every direction from every seed stays inside the set
    touched = {(i, k) for i, k, _ in r.edges}
    assert touched == {(i, k) for i in range(len(r.seeds)) for k in (1, 2)}


def test_enumerate_budget():
    r = enumerate_seeds(ExchangeMatrix([[0, -2], [2, 0]]), budget=30)
    assert not r.complete
    assert len(r.seeds) == 30


def test_canonical_seed_is_orbit_invariant(rng):
    for _ in range(20):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        s = walk(B, [rng.randint(1, n) for _ in range(4)])
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        c1 = canonical_seed(s)
        c2 = canonical_seed(apply_permutation(s, tuple(sigma)))
        assert (c1.b, c1.c, c1.g, c1.f) == (c2.b, c2.c, c2.g, c2.f)


def test_seed_json_roundtrip():
    s = walk(B2, [1, 2, 1])
    doc = seed_to_json(s)
    t = seed_from_json(doc)
    assert t == s and t.path == s.path


def test_g_fan_a2():
    fan = g_fan(enumerate_seeds(A2))
    assert len(fan) == 5
    rays = {tuple(v) for cone in fan for v in cone}
    assert rays == {(1, 0), (0, 1), (-1, 0), (0, -1), (1, -1)}
