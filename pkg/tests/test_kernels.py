"""Backend parity and correctness of the F_p kernels."""

import math
import random

import pytest

from expfilt import _kernels
from expfilt._kernels import pure

BACKENDS = _kernels.backends()


def random_matrix(rng, n, m, p):
    return [[rng.randrange(p) for _ in range(m)] for _ in range(n)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_row_matches_exact(p):
    for n in range(0, 120):
        row = _kernels.lucas_row(n, p)
        assert row == [math.comb(n, j) % p for j in range(n + 1)]


@pytest.mark.parametrize("p", [2, 5])
def test_binom_mod_matches_exact(p):
    rng = random.Random(1)
    for _ in range(300):
        n = rng.randrange(500)
        j = rng.randrange(600)
        want = math.comb(n, j) % p if j <= n else 0
        assert _kernels.binom_mod(n, j, p) == want


def test_rref_shape_and_idempotence():
    rng = random.Random(2)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        n, m = rng.randrange(1, 8), rng.randrange(1, 8)
        mat = random_matrix(rng, n, m, p)
        red, pivots = _kernels.rref(mat, m, p)
        assert len(red) == len(pivots)
        for row, piv in zip(red, pivots):
            assert row[piv] == 1
            assert all(other[piv] == 0 for other in red if other is not row)
        again, pivots2 = _kernels.rref(red, m, p)
        assert again == red and pivots2 == pivots


def test_nullspace_is_kernel():
    rng = random.Random(3)
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        n, m = rng.randrange(1, 7), rng.randrange(1, 7)
        mat = random_matrix(rng, n, m, p)
        basis = _kernels.nullspace(mat, m, p)
        rank = _kernels.rank(mat, m, p)
        assert len(basis) == m - rank
        for vec in basis:
            assert all(
                sum(a * b for a, b in zip(row, vec)) % p == 0 for row in mat
            )


def test_matmul_matches_naive():
    rng = random.Random(4)
    for _ in range(20):
        p = rng.choice([2, 3, 5])
        n, k, m = (rng.randrange(1, 6) for _ in range(3))
        a = random_matrix(rng, n, k, p)
        b = random_matrix(rng, k, m, p)
        got = _kernels.matmul(a, b, p)
        want = [
            [sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)]
            for i in range(n)
        ]
        assert got == want


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
def test_backend_parity():
    rng = random.Random(5)
    fast = BACKENDS["compiled"]
    for _ in range(30):
        p = rng.choice([2, 3, 5, 7])
        n, m = rng.randrange(1, 10), rng.randrange(1, 10)
        mat = random_matrix(rng, n, m, p)
        assert pure.rref(mat, m, p) == fast.rref(mat, m, p)
        a = random_matrix(rng, n, n, p)
        b = random_matrix(rng, n, n, p)
        assert pure.matmul(a, b, p) == fast.matmul(a, b, p)
        nn = rng.randrange(0, 400)
        assert pure.lucas_row(nn, p) == fast.lucas_row(nn, p)
        j = rng.randrange(0, nn + 1)
        assert pure.binom_mod(nn, j, p) == fast.binom_mod(nn, j, p)
