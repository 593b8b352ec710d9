import itertools
import random

import pytest

from clusterkit.exchange import (
    BudgetExceeded,
    CartanMatrix,
    ExchangeMatrix,
    ExtendedExchangeMatrix,
    NotSkewSymmetric,
    NotSkewSymmetrizable,
    all_principal_minors_positive,
    canonical_matrix,
    cartan_counterpart,
    classify_blocks,
    classify_cartan,
    decompose,
    det_int,
    find_skew_symmetrizer,
    from_quiver,
    is_acyclic,
    is_decomposable_cartan,
    is_finite_type,
    mutate_extended,
    mutate_matrix,
    mutate_quiver,
    quiver_to_dot,
    to_quiver,
)
from conftest import random_exchange_matrix

EX_3X3 = [[0, 6, -3], [-12, 0, 6], [2, -2, 0]]
EX_4X4 = [[0, 3, -2, 2], [-3, 0, 4, 0], [2, -4, 0, 1], [-2, 0, -1, 0]]


def test_skew_symmetrizer_examples():
    assert find_skew_symmetrizer(EX_3X3) == (2, 1, 3)
    assert find_skew_symmetrizer([[0, 1, 0], [-1, 0, 2], [0, -2, 0]]) == (1, 1, 1)
    assert find_skew_symmetrizer([[0, -1], [2, 0]]) == (2, 1)


def test_skew_symmetrizer_rejects():
    with pytest.raises(NotSkewSymmetrizable):
        find_skew_symmetrizer([[0, 1], [1, 0]])
    with pytest.raises(NotSkewSymmetrizable):
        find_skew_symmetrizer([[1, 1], [-1, 0]])
    with pytest.raises(NotSkewSymmetrizable):
        # cycle with inconsistent ratios
        find_skew_symmetrizer([[0, 2, -1], [-1, 0, 1], [2, -2, 0]])


def test_matrix_mutation_fixture():
    B = ExchangeMatrix(EX_3X3)
    assert mutate_matrix(B, 1).rows == ((0, -6, 3), (12, 0, -30), (-2, 10, 0))


def test_quiver_mutation_fixture():
    B = ExchangeMatrix(EX_4X4)
    expected = ((0, -3, 2, -2), (3, 0, -2, 0), (-2, 2, 0, 5), (2, 0, -5, 0))
    assert mutate_matrix(B, 1).rows == expected
    assert from_quiver(mutate_quiver(to_quiver(B), 1)).rows == expected


def test_mutation_involutive_det_symmetrizer(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        B = random_exchange_matrix(rng, n, 3)
        d = find_skew_symmetrizer(B.rows)
        k = rng.randint(1, n)
        M = mutate_matrix(B, k)
        assert mutate_matrix(M, k) == B
        assert det_int(M.rows) == det_int(B.rows)
        # any symmetrizer of B also symmetrizes the mutated matrix
        assert all(
            d[i] * M.rows[i][j] == -d[j] * M.rows[j][i] for i in range(n) for j in range(n)
        )


def test_eps_independence(rng):
    for _ in range(60):
        n = rng.randint(2, 5)
        B = random_exchange_matrix(rng, n, 3)
        k = rng.randint(1, n)
        assert mutate_matrix(B, k, eps=1) == mutate_matrix(B, k, eps=-1)


def test_block_compatibility():
    top = ExchangeMatrix([[0, -1], [2, 0]])
    bottom = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    rows = [[0] * 5 for _ in range(5)]
    for i in range(2):
        for j in range(2):
            rows[i][j] = top.rows[i][j]
    for i in range(3):
        for j in range(3):
            rows[2 + i][2 + j] = bottom.rows[i][j]
    B = ExchangeMatrix(rows)
    assert decompose(B) == [[1, 2], [3, 4, 5]]
    M = mutate_matrix(B, 4)
    # only the second block moved
    assert all(M.rows[i][j] == B.rows[i][j] for i in range(2) for j in range(2))
    sub = ExchangeMatrix([[B.rows[i][j] for j in (2, 3, 4)] for i in (2, 3, 4)])
    expected = mutate_matrix(sub, 2)
    assert all(M.rows[2 + i][2 + j] == expected.rows[i][j] for i in range(3) for j in range(3))


def test_extended_mutation_first_step():
    rows = [[0, -1], [1, 0], [-1, 0], [1, 0], [-1, 1], [0, -1], [0, 1]]
    Bt = ExtendedExchangeMatrix.from_rows(rows, 2)
    out = mutate_extended(Bt, 1)
    assert [list(r) for r in out.all_rows()] == [
        [0, 1], [-1, 0], [1, -1], [-1, 0], [1, 0], [0, -1], [0, 1],
    ]
    assert mutate_extended(out, 1) == Bt


def test_quiver_roundtrip_random(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        B = random_exchange_matrix(rng, n, 3, skew_symmetric=True)
        Q = to_quiver(B)
        assert from_quiver(Q) == B
        k = rng.randint(1, n)
        assert from_quiver(mutate_quiver(Q, k)) == mutate_matrix(B, k)


def test_quiver_guards():
    with pytest.raises(NotSkewSymmetric):
        to_quiver(ExchangeMatrix([[0, -1], [2, 0]]))
    empty = to_quiver(ExchangeMatrix([[0, 0], [0, 0]]))
    assert mutate_quiver(empty, 1) == empty
    dot = quiver_to_dot(to_quiver(ExchangeMatrix(EX_4X4)), frozen={4})
    assert "shape=box" in dot and 'label="4"' in dot


def test_cartan_counterpart():
    assert cartan_counterpart(ExchangeMatrix([[0, -1], [1, 0]])).rows == ((2, -1), (-1, 2))
    assert cartan_counterpart(ExchangeMatrix([[0, -1], [3, 0]])).rows == ((2, -1), (-3, 2))
    assert cartan_counterpart(ExchangeMatrix([[0, 0], [0, 0]])).rows == ((2, 0), (0, 2))


def test_classify_small_types():
    assert str(classify_cartan(CartanMatrix([[2]]))) == "A1"
    assert str(classify_cartan(CartanMatrix([[2, -1], [-1, 2]]))) == "A2"
    assert str(classify_cartan(CartanMatrix([[2, -1], [-2, 2]]))) == "B2"
    assert str(classify_cartan(CartanMatrix([[2, -2], [-1, 2]]))) == "B2"
    assert str(classify_cartan(CartanMatrix([[2, -1], [-3, 2]]))) == "G2"
    assert classify_cartan(CartanMatrix([[2, -2], [-2, 2]])) is None  # det 0
    assert classify_cartan(CartanMatrix([[2, -1], [-4, 2]])) is None


def test_classify_rank3_and_orientations():
    b3 = CartanMatrix([[2, -1, 0], [-1, 2, -1], [0, -2, 2]])
    c3 = CartanMatrix([[2, -1, 0], [-1, 2, -2], [0, -1, 2]])
    a3 = CartanMatrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert str(classify_cartan(b3)) == "B3"
    assert str(classify_cartan(c3)) == "C3"
    assert str(classify_cartan(a3)) == "A3"
    f4 = CartanMatrix(
        [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    )
    assert str(classify_cartan(f4)) == "F4"
    d4 = CartanMatrix(
        [[2, -1, -1, -1], [-1, 2, 0, 0], [-1, 0, 2, 0], [-1, 0, 0, 2]]
    )
    assert str(classify_cartan(d4)) == "D4"


def test_classify_relabeling_applies():
    # A3 with its middle vertex listed first
    a3 = CartanMatrix([[2, -1, -1], [-1, 2, 0], [-1, 0, 2]])
    label = classify_cartan(a3)
    assert str(label) == "A3"
    order = label.relabeling
    assert order[1] == 1  # position 2 of the path is the branchless middle vertex


def _cartan_pairs(values):
    pairs = [(0, 0)]
    for a in values:
        for b in values:
            pairs.append((-a, -b))
    return pairs


def test_classify_agrees_with_minor_oracle_exhaustively():
    # exhaustive over bounded entries up to rank 4: shape recognition must
    # match the positive-principal-minors criterion (the cross-check inside
    # classify also raises on any disagreement).  Rank <= 3 sweeps entries
    # down to -3, rank 4 down to -2.
    for n, values in ((2, (1, 2, 3)), (3, (1, 2, 3)), (4, (1, 2))):
        idx = list(itertools.combinations(range(n), 2))
        for combo in itertools.product(_cartan_pairs(values), repeat=len(idx)):
            rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
            for (i, j), (a, b) in zip(idx, combo):
                rows[i][j] = a
                rows[j][i] = b
            A = CartanMatrix(rows)
            if is_decomposable_cartan(A):
                continue
            label = classify_cartan(A)
            assert (label is not None) == all_principal_minors_positive(A)


def test_acyclic():
    # every 2x2 matrix is acyclic (a cycle needs length >= 3)
    for a in range(-3, 4):
        for b in range(1, 4):
            if a == 0:
                assert is_acyclic(ExchangeMatrix([[0, 0], [0, 0]]))
                continue
            rows = [[0, a], [-b if a > 0 else b, 0]]
            assert is_acyclic(ExchangeMatrix(rows))
    markov = ExchangeMatrix([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
    assert not is_acyclic(markov)
    assert is_acyclic(ExchangeMatrix([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]))


def test_canonical_matrix_invariance(rng):
    for _ in range(40):
        n = rng.randint(2, 4)
        B = random_exchange_matrix(rng, n, 2)
        base = canonical_matrix(B.rows)
        perm = list(range(n))
        rng.shuffle(perm)
        shuffled = [[B.rows[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
        assert canonical_matrix(shuffled) == base


def test_finite_type_rank2():
    assert str(is_finite_type(ExchangeMatrix([[0, -1], [2, 0]]))) == "B2"
    assert is_finite_type(ExchangeMatrix([[0, -2], [2, 0]])) is None
    assert str(is_finite_type(ExchangeMatrix([[0, -1], [1, 0]]))) == "A2"
    assert str(is_finite_type(ExchangeMatrix([[0, -1], [3, 0]]))) == "G2"


def test_finite_type_blocks():
    labels = classify_blocks(ExchangeMatrix([[0, 0], [0, 0]]))
    assert [str(l) for l in labels] == ["A1", "A1"]


def test_finite_type_search_and_budget():
    # cyclic orientation of the triangle mutates into a path shape
    B = ExchangeMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])
    assert str(is_finite_type(B)) == "A3"
    markov = ExchangeMatrix([[0, 2, -2], [-2, 0, 2], [2, -2, 0]])
    assert is_finite_type(markov) is None  # class closes without a finite hit
    rows = [[0, 3, -3], [-3, 0, 3], [3, -3, 0]]
    with pytest.raises(BudgetExceeded):
        is_finite_type(ExchangeMatrix(rows), max_matrices=5, max_depth=2)


def test_finite_type_requires_indecomposable():
    with pytest.raises(ValueError):
        is_finite_type(ExchangeMatrix([[0, 0], [0, 0]]))
