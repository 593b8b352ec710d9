import random

import pytest

from clusterkit.exchange import ExchangeMatrix
from clusterkit.gca import (
    NonMonic,
    ReciprocityViolated,
    companion_identities_hold,
    companion_patterns,
    gca_duality_check,
    gca_initial,
    gca_seed_from_json,
    gca_seed_to_json,
    mutate_gca,
    right_companion_specialize,
    validate_data,
)
from clusterkit.golden import GCA_B2_TABLE
from clusterkit.pattern import initial_seed, mutate
from clusterkit.polyring import parse_poly, to_text
from conftest import random_exchange_matrix

B0 = ExchangeMatrix([[0, -1], [1, 0]])


def example_seed():
    return gca_initial(B0, validate_data([2, 1], [[1, "z", 1], [1, 1]]))


def walk(seed, path):
    for k in path:
        seed = mutate_gca(seed, k)
    return seed


def test_validate_data():
    data = validate_data([2, 1], [[1, "z", 1], [1, 1]])
    assert data.r == (2, 1)
    assert data.coeff(1, 1) == "z"
    assert data.coeff(2, 0) == 1
    assert validate_data([1, 1]).is_trivial()
    with pytest.raises(ReciprocityViolated):
        validate_data([3], [[1, "a", "b", 1]])
    with pytest.raises(NonMonic):
        validate_data([2], [["w", "z", 1]])


def test_exchange_polynomial_examples():
    s = walk(example_seed(), [1])
    assert to_text(s.f[0]) == "1 + y1*z + y1^2"
    s = walk(example_seed(), [1, 2])
    assert to_text(s.f[1]) == "1 + y2 + y1*y2*z + y1^2*y2"


def test_full_seven_step_table():
    s = example_seed()
    arena = s.f[0].arena
    for t in range(7):
        row = GCA_B2_TABLE[t]
        assert [list(r) for r in s.c] == row["c"]
        assert [list(r) for r in s.g] == row["g"]
        assert list(s.f) == [parse_poly(arena, x) for x in row["f"]]
        if t < 6:
            s = mutate_gca(s, 1 + (t % 2))
    start = example_seed()
    assert (s.b, s.c, s.g, s.f) == (start.b, start.c, start.g, start.f)


def test_involution_and_eps(rng):
    s = walk(example_seed(), [1, 2])
    for k in (1, 2):
        t = mutate_gca(mutate_gca(s, k), k)
        assert (t.b, t.c, t.g, t.f) == (s.b, s.c, s.g, s.f)
        assert mutate_gca(s, k, eps=1).c == mutate_gca(s, k, eps=-1).c
        assert mutate_gca(s, k, eps=1).g == mutate_gca(s, k, eps=-1).g
        assert mutate_gca(s, k, eps=1).b == mutate_gca(s, k, eps=-1).b


def test_skew_symmetrizer_preserved():
    s = walk(example_seed(), [1, 2, 1])
    # the generalized matrices all admit the initial symmetrizer
    d = s.b0.skew_symmetrizer()
    n = s.n
    assert all(
        d[i] * s.b.rows[i][j] == -d[j] * s.b.rows[j][i] for i in range(n) for j in range(n)
    )


def test_trivial_degrees_reduce_to_ordinary(rng):
    for _ in range(10):
        n = rng.randint(2, 3)
        B = random_exchange_matrix(rng, n, 2)
        data = validate_data([1] * n)
        g_seed = gca_initial(B, data)
        o_seed = initial_seed(B)
        for _ in range(5):
            k = rng.randint(1, n)
            g_seed = mutate_gca(g_seed, k)
            o_seed = mutate(o_seed, k)
            assert g_seed.b == o_seed.b
            assert g_seed.c == o_seed.c
            assert g_seed.g == o_seed.g
            assert list(g_seed.f) == list(o_seed.f)


def test_companion_patterns_example():
    s = walk(example_seed(), [1, 2, 1])
    left, right = companion_patterns(s)
    assert right.b0.rows == ((0, -1), (2, 0))
    assert left.b0.rows == ((0, -2), (1, 0))
    assert companion_identities_hold(s, left, right)
    assert s.c == left.c
    assert s.g == right.g


def test_duality_identities_example_walk():
    s = example_seed()
    for t in range(6):
        s = mutate_gca(s, 1 + (t % 2))
        report = gca_duality_check(s)
        assert report["ok"], report


def test_random_gca_walks(rng):
    for _ in range(20):
        B = random_exchange_matrix(rng, 2, 2)
        data = validate_data([rng.randint(1, 3), rng.randint(1, 3)])
        s = gca_initial(B, data)
        for _ in range(6):
            s = mutate_gca(s, rng.randint(1, 2))
        assert companion_identities_hold(s)
        assert gca_duality_check(s)["ok"]
        for fi in s.f:
            assert fi.constant_term() == 1
            assert fi.has_nonneg_coeffs()


def test_right_companion_specialize():
    s = walk(example_seed(), [1, 2, 1])
    ordinary = right_companion_specialize(s)
    # matches the degree-2 pattern's exchange polynomial at the same vertex
    assert to_text(ordinary.f[0]) == "1 + 2*y2 + y2^2 + y1*y2^2"
    trivial = walk(gca_initial(B0, validate_data([1, 1])), [1, 2])
    again = right_companion_specialize(trivial)
    assert again.f == trivial.f


def test_specialization_matches_companion_along_walk():
    s = example_seed()
    for t in range(6):
        s = mutate_gca(s, 1 + (t % 2))
        right_companion_specialize(s)  # raises on any mismatch


def test_gca_json_roundtrip():
    s = walk(example_seed(), [1, 2])
    doc = gca_seed_to_json(s)
    t = gca_seed_from_json(doc)
    assert (t.b, t.c, t.g, t.f, t.path) == (s.b, s.c, s.g, s.f, s.path)
    assert t.data.r == s.data.r
