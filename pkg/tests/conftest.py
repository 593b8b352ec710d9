import random

import pytest

from clusterkit.exchange import ExchangeMatrix, NotSkewSymmetrizable


def random_exchange_matrix(rng, n, bound, skew_symmetric=False):
    """Random valid n x n exchange matrix with entries bounded by |bound|."""
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rng.randint(-bound, bound)
                if v:
                    w = v if v > 0 else -v
                    if not skew_symmetric:
                        w = rng.randint(1, bound)
                    rows[i][j] = v
                    rows[j][i] = -w if v > 0 else w
        try:
            return ExchangeMatrix(rows)
        except NotSkewSymmetrizable:
            continue


@pytest.fixture
def rng():
    return random.Random(20230817)
