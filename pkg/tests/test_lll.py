import math
import random

import pytest
from gmpy2 import mpq

from framelattice.exact.linalg import NotPositiveDefinite
from framelattice.exact.lll import is_lll_reduced, lll_reduce
from framelattice.exact.matrix import det, identity, int_det, matmul, transpose


def congruent(G, U):
    Um = [[mpq(x) for x in row] for row in U]
    return matmul(transpose(Um), matmul(G, Um))


def test_identity_unchanged():
    G = identity(3)
    R, U = lll_reduce(G)
    assert R == G and U == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_unimodular_form_reduces_to_identity():
    G = [[mpq(5), mpq(3)], [mpq(3), mpq(2)]]
    R, U = lll_reduce(G)
    assert R == identity(2)
    assert congruent(G, U) == R


def test_hexagonal_already_reduced():
    h = mpq(-1, 2)
    G = [[mpq(1), h], [h, mpq(1)]]
    R, U = lll_reduce(G)
    assert [R[0][0], R[1][1]] == [1, 1] and abs(R[0][1]) == mpq(1, 2)
    assert is_lll_reduced(R)


def test_rejects_bad_input():
    with pytest.raises(NotPositiveDefinite):
        lll_reduce([[mpq(1), mpq(2)], [mpq(2), mpq(1)]])
    with pytest.raises(ValueError):
        lll_reduce(identity(2), mpq(1, 5))


def test_random_invariants():
    rng = random.Random(99)
    for _ in range(40):
        k = rng.randint(2, 6)
        B = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(k)]
        if int_det(B) == 0:
            continue
        Bq = [[mpq(x, rng.choice([1, 2, 3])) for x in row] for row in B]
        G = matmul(transpose(Bq), Bq)
        R, U = lll_reduce(G)
        assert congruent(G, U) == R
        assert abs(int_det(U)) == 1
        assert is_lll_reduced(R)
        # Hermite-type bound b1^2 <= (4/3)^((k-1)/2) det^(1/k), with margin for float
        bound = (4 / 3) ** ((k - 1) / 2) * math.exp(math.log(float(det(G))) / k)
        assert float(R[0][0]) <= bound * (1 + 1e-9)
