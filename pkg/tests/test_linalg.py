import random

import pytest
import sympy
from gmpy2 import mpq

from framelattice.exact.linalg import (
    Inconsistent,
    NotPositiveDefinite,
    inverse,
    ldl_decompose,
    rank_solve,
    solve,
)
from framelattice.exact.matrix import identity, matmul, transpose
from framelattice.exact.scalars import QuadScalar


def Q(rows):
    return [[mpq(x) for x in row] for row in rows]


def test_identity_system():
    B = [[mpq(2)], [mpq(-1)], [mpq(1, 3)]]
    sol = rank_solve(identity(3), B)
    assert sol.rank == 3
    assert sol.particular == B
    assert rank_solve(identity(3), [mpq(2), mpq(-1), mpq(1, 3)]).particular == [mpq(2), mpq(-1), mpq(1, 3)]
    assert sol.nullspace == []


def test_rank_one_kernel():
    sol = rank_solve(Q([[1, 1], [1, 1]]))
    assert sol.rank == 1
    assert len(sol.nullspace) == 1
    v = sol.nullspace[0]
    assert v[0] == -v[1] != 0


def test_simplex_gram_kernel():
    h = mpq(-1, 2)
    M = [[mpq(1), h, h], [h, mpq(1), h], [h, h, mpq(1)]]
    sol = rank_solve(M)
    assert sol.rank == 2
    (v,) = sol.nullspace
    assert v[0] == v[1] == v[2] != 0
    assert all(sum(M[i][j] * v[j] for j in range(3)) == 0 for i in range(3))


def test_inconsistent_is_distinct():
    sol = rank_solve(Q([[1, 1], [1, 1]]), [mpq(1), mpq(2)])
    assert not sol.consistent and sol.rank == 1
    with pytest.raises(Inconsistent):
        solve(Q([[1, 1], [1, 1]]), [mpq(1), mpq(2)])


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        base = [[mpq(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(2)]
        # rows as random combinations of two rows, plus noise rows sometimes
        rows = []
        for _ in range(r):
            if rng.random() < 0.5:
                a, b = rng.randint(-2, 2), rng.randint(-2, 2)
                rows.append([a * x + b * y for x, y in zip(*base)])
            else:
                rows.append([mpq(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(c)])
        ref = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in rows]).rank()
        sol = rank_solve(rows)
        assert sol.rank == ref
        for v in sol.nullspace:
            assert all(sum(row[j] * v[j] for j in range(c)) == 0 for row in rows)


def test_solve_over_quadratic_field():
    s = QuadScalar(0, 1, 5)
    M = [[QuadScalar(1), s], [s, QuadScalar(2)]]
    x = solve(M, [QuadScalar(1), QuadScalar(0)])
    assert M[0][0] * x[0] + M[0][1] * x[1] == 1
    assert M[1][0] * x[0] + M[1][1] * x[1] == 0


def test_inverse():
    A = Q([[2, 1], [7, 4]])
    assert matmul(A, inverse(A)) == identity(2)


def recompose(L, D):
    n = len(D)
    return [[sum(L[i][t] * D[t] * L[j][t] for t in range(n)) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize(
    "G, D",
    [
        ([[1, 0], [0, 1]], [1, 1]),
        ([[1, mpq(-1, 2)], [mpq(-1, 2), 1]], [1, mpq(3, 4)]),
        ([[2, 1], [1, 2]], [2, mpq(3, 2)]),
    ],
)
def test_ldl_examples(G, D):
    G = Q(G)
    L, Dg = ldl_decompose(G)
    assert Dg == [mpq(x) for x in D]
    assert recompose(L, Dg) == G


def test_ldl_random_recomposition():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(1, 5)
        A = [[mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        G = matmul(transpose(A), A)
        for i in range(n):
            G[i][i] += 1
        L, D = ldl_decompose(G)
        assert all(x > 0 for x in D)
        assert recompose(L, D) == G


def test_ldl_reports_failing_minor():
    with pytest.raises(NotPositiveDefinite) as info:
        ldl_decompose(Q([[1, 2], [2, 1]]))
    assert info.value.index == 1
