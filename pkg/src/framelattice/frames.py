"""Frames given by coordinates or by a rational Gram matrix, and the checks on them.

A coordinate :class:`Frame` stores the ``k x n`` matrix ``G`` over Q(sqrt d).
Coordinates may be taken with respect to an orthogonal basis whose squared
lengths are ``weights`` (all 1 for an orthonormal basis); this lets frames
such as the pentagon, whose sines leave Q(sqrt 5), stay exact.  The Euclidean
Gram matrix is ``G^T diag(weights) G``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .exact.linalg import ldl_decompose, row_reduce, NotPositiveDefinite
from .exact.matrix import (
    field_of,
    int_matmul,
    is_rational_matrix,
    is_symmetric,
    matmul,
    submatrix,
    to_rational,
    trace,
    transpose,
)
from .exact.scalars import QuadScalar, as_rational

__all__ = [
    "Frame",
    "GramFrame",
    "FrameError",
    "RankDeficient",
    "NotEtf",
    "SeidelError",
    "TightnessReport",
    "EtfReport",
    "RationalityClass",
    "gram_of",
    "tightness_check",
    "rationality_class",
    "etf_check",
    "gerzon_check",
    "construct",
    "validate_seidel",
]


class FrameError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class RankDeficient(FrameError):
    """The vectors do not span R^k."""


class NotEtf(FrameError):
    pass


class SeidelError(FrameError):
    pass


@dataclass(frozen=True)
class Frame:
    k: int
    n: int
    G: list = field(repr=False)
    d: int = 0
    weights: tuple | None = None
    name: str = ""

    def __post_init__(self):
        if len(self.G) != self.k or any(len(row) != self.n for row in self.G):
            raise FrameError(f"coordinate matrix is not {self.k}x{self.n}")
        if self.n < self.k:
            raise FrameError("need n >= k")
        d = field_of(self.G)
        if self.weights is not None:
            if len(self.weights) != self.k:
                raise FrameError("one weight per coordinate row is required")
            d = d or field_of([list(self.weights)])
            if any(QuadScalar.lift(w).sign() <= 0 for w in self.weights):
                raise FrameError("row weights must be positive")
        if d and self.d and d != self.d:
            raise FrameError(f"entries live in Q(sqrt {d}), header says d={self.d}")
        if len(row_reduce(self.G)[1]) != self.k:
            raise RankDeficient("frame vectors do not span R^k")

    @property
    def row_weights(self):
        return list(self.weights) if self.weights is not None else [mpq(1)] * self.k

    def column(self, j):
        return [self.G[i][j] for i in range(self.k)]


@dataclass(frozen=True)
class GramFrame:
    n: int
    k: int
    M: list = field(repr=False)
    name: str = ""

    def __post_init__(self):
        M = self.M
        if len(M) != self.n or any(len(row) != self.n for row in M):
            raise FrameError(f"Gram matrix is not {self.n}x{self.n}")
        if not is_rational_matrix(M):
            raise FrameError("Gram-only frames must have rational entries")
        if not is_symmetric(M):
            i, j = next(
                (i, j) for i in range(self.n) for j in range(i + 1, self.n) if M[i][j] != M[j][i]
            )
            raise FrameError("Gram matrix is not symmetric", (i, j))
        _, pivots, _ = row_reduce(M)
        if len(pivots) != self.k:
            raise RankDeficient(f"Gram matrix has rank {len(pivots)}, expected {self.k}")
        # rank k plus a positive definite principal k-minor on a column basis => PSD
        try:
            ldl_decompose(submatrix(M, pivots, pivots))
        except NotPositiveDefinite as exc:
            raise FrameError(f"Gram matrix is not positive semidefinite ({exc})") from exc
        object.__setattr__(self, "M", to_rational(M))


@dataclass(frozen=True)
class TightnessReport:
    is_tight: bool
    frame_constant: object  # A with G G^T = A I
    gamma: object  # 1/A, the constant in ||x||^2 = gamma * sum <f_i, x>^2


@dataclass(frozen=True)
class EtfReport:
    is_unit_etf: bool
    c: object
    alpha: object
    alpha_is_integer: bool
    is_maximal: bool
    n: int
    k: int


@dataclass(frozen=True)
class RationalityClass:
    kind: str  # "Rational" | "ScaledRational" | "Irrational"
    scale: object = None  # t with M = t * R, R rational (ScaledRational only)

    @property
    def mu_sq(self):
        """A scalar ``mu^2`` making ``mu^2 M`` rational."""
        if self.kind == "Rational":
            return mpq(1)
        if self.kind == "ScaledRational":
            return 1 / self.scale
        return None

    def __str__(self):
        return self.kind


# -- Gram and tightness -----------------------------------------------------------

def gram_of(F: Frame):
    """``G^T W G`` for a coordinate frame; a Gram frame returns its matrix."""
    if isinstance(F, GramFrame):
        return F.M
    w = F.row_weights
    WG = [[w[i] * x for x in F.G[i]] for i in range(F.k)]
    return matmul(transpose(F.G), WG)


def _gram_matrix(F):
    """Gram matrix of a frame; a bare matrix is taken to be one already."""
    if isinstance(F, list):
        return F
    return F.M if isinstance(F, GramFrame) else gram_of(F)


def _square(M):
    if is_rational_matrix(M):
        from .exact.matrix import scaled_integer

        N, D = scaled_integer(M)
        P = int_matmul(N, N)
        return [[mpq(x, D * D) for x in row] for row in P]
    return matmul(M, M)


def tightness_check(F) -> TightnessReport:
    if isinstance(F, GramFrame):
        M = F.M
        A = trace(M) / F.k
        M2 = _square(M)
        tight = all(M2[i][j] == A * M[i][j] for i in range(F.n) for j in range(F.n))
    else:
        # G G^T W = A I is the tightness condition in weighted coordinates
        w = F.row_weights
        S = matmul(F.G, transpose(F.G))
        SW = [[S[i][j] * w[j] for j in range(F.k)] for i in range(F.k)]
        A = trace(SW) / F.k
        tight = all(
            SW[i][j] == (A if i == j else 0) for i in range(F.k) for j in range(F.k)
        )
    if A == 0:
        raise RankDeficient("zero frame")
    return TightnessReport(tight, _clean(A), _clean(1 / A))


# -- rationality ---------------------------------------------------------------------

def rationality_class(F) -> RationalityClass:
    M = _gram_matrix(F)
    if is_rational_matrix(M):
        return RationalityClass("Rational")
    # canonical scale: first irrational entry divided by its sqrt(d)-coefficient
    first = next(x for row in M for x in row if isinstance(x, QuadScalar) and x.b != 0)
    t = QuadScalar(first.a / first.b, 1, first.d)
    for row in M:
        for x in row:
            if x == 0:
                continue
            r = QuadScalar.lift(x) / t
            if not r.is_rational():
                return RationalityClass("Irrational")
    return RationalityClass("ScaledRational", t)


def rationalized_gram(F):
    """``(R, t)`` with ``M = t R`` and ``R`` rational, or ``None`` for irrational frames."""
    M = _gram_matrix(F)
    cls = rationality_class(M)
    if cls.kind == "Rational":
        return to_rational(M), mpq(1)
    if cls.kind == "ScaledRational":
        t = cls.scale
        return [[as_rational(QuadScalar.lift(x) / t) for x in row] for row in M], t
    return None


# -- equiangular tight frames ---------------------------------------------------------

def gerzon_check(n: int, k: int) -> str:
    if n <= k:
        return "belowRange"
    top = k * (k + 1) // 2
    if n < top:
        return "inRange"
    if n == top:
        return "maximal"
    return "aboveRange"


def etf_check(F) -> EtfReport:
    """Verify ``F`` is a unit equiangular tight frame and report its angle data.

    Raises :class:`NotEtf` with a witness index (pair) for the first failure.
    """
    M = _gram_matrix(F)
    n, k = F.n, F.k
    if n <= k:
        raise NotEtf("an ETF needs n > k")
    for i in range(n):
        if M[i][i] != 1:
            raise NotEtf(f"vector {i} is not a unit vector", (i, i))
    c = abs(QuadScalar.lift(M[0][1]))
    for i, j in combinations(range(n), 2):
        if abs(QuadScalar.lift(M[i][j])) != c:
            raise NotEtf(f"|<f_{i}, f_{j}>| differs from |<f_0, f_1>|", (i, j))
    rep = tightness_check(F)
    if not rep.is_tight:
        raise NotEtf("frame is not tight", (0, 0))
    expected = mpq(n - k, k * (n - 1))
    if c * c != expected:
        raise NotEtf(f"angle {c} disagrees with sqrt((n-k)/(k(n-1)))", (0, 1))
    alpha = 1 / c
    alpha_int = alpha.is_rational() and alpha.a.denominator == 1
    return EtfReport(
        True,
        c if not c.is_rational() else c.a,
        alpha if not alpha.is_rational() else alpha.a,
        alpha_int,
        gerzon_check(n, k) == "maximal",
        n,
        k,
    )


# -- constructions -----------------------------------------------------------------------

def _simplex(k: int) -> GramFrame:
    off = mpq(-1, k)
    M = [[mpq(1) if i == j else off for j in range(k + 1)] for i in range(k + 1)]
    return GramFrame(k + 1, k, M, name=f"simplex({k})")


def _q(a, b=0, d=0):
    return QuadScalar(a, b, d)


# cos(2 pi / n), and sin(2 pi / n) when it lies in the same quadratic field
_HARMONIC = {
    3: (_q(mpq(-1, 2)), _q(0, mpq(1, 2), 3), 3),
    4: (_q(0), _q(1), 0),
    5: (_q(mpq(-1, 4), mpq(1, 4), 5), None, 5),
    6: (_q(mpq(1, 2)), _q(0, mpq(1, 2), 3), 3),
    8: (_q(0, mpq(1, 2), 2), _q(0, mpq(1, 2), 2), 2),
    10: (_q(mpq(1, 4), mpq(1, 4), 5), None, 5),
    12: (_q(0, mpq(1, 2), 3), _q(mpq(1, 2)), 3),
}


def _chebyshev(c, count):
    """``cos(j t)`` and ``sin(j t)/sin(t)`` for ``j < count`` given ``c = cos t``."""
    T = [_q(1), c]
    U = [_q(0), _q(1)]  # U_{j-1}
    while len(T) < count:
        T.append(2 * c * T[-1] - T[-2])
    while len(U) < count:
        U.append(2 * c * U[-1] - U[-2])
    return T[:count], U[:count]


def _clean(x):
    x = QuadScalar.lift(x)
    return x.a if x.is_rational() else x


def _harmonic2d(n: int) -> Frame:
    if n not in _HARMONIC:
        raise FrameError(f"harmonic2d({n}) has no exact coordinates over a single Q(sqrt d)")
    c, s, d = _HARMONIC[n]
    cos_j, sin_ratio = _chebyshev(c, n)
    if s is not None:
        ys = [s * u for u in sin_ratio]
        weights = None
    else:
        ys = sin_ratio
        weights = (mpq(1), _clean(1 - c * c))
    G = [[_clean(x) for x in cos_j], [_clean(y) for y in ys]]
    return Frame(2, n, G, d, weights, name=f"harmonic2d({n})")


def _icosahedron() -> Frame:
    # f_0 = e_1; f_j has first coordinate 1/sqrt5 and its projection to e_1^perp
    # at angle 2 pi j / 5 with length 2/sqrt5
    c5 = _HARMONIC[5][0]
    cos_j, sin_ratio = _chebyshev(c5, 5)
    inv_sqrt5 = _q(0, mpq(1, 5), 5)
    two = 2 * inv_sqrt5
    G = [
        [_q(1)] + [inv_sqrt5] * 5,
        [_q(0)] + [two * x for x in cos_j],
        [_q(0)] + [two * y for y in sin_ratio],
    ]
    G = [[_clean(x) for x in row] for row in G]
    return Frame(3, 6, G, 5, (mpq(1), mpq(1), _clean(1 - c5 * c5)), name="icosahedron")


def _etf28_7() -> GramFrame:
    pairs = list(combinations(range(8), 2))
    third = mpq(1, 3)
    M = []
    for p in pairs:
        row = []
        for q in pairs:
            shared = len(set(p) & set(q))
            row.append(mpq(1) if shared == 2 else third if shared == 1 else -third)
        M.append(row)
    return GramFrame(28, 7, M, name="etf28_7")


def validate_seidel(S, n: int | None = None, eigen=(-5, 55)):
    """Check a Seidel matrix and the identity ``(S - l1 I)(S - l2 I) = 0``.

    Raises :class:`SeidelError` naming the first violated condition.
    """
    size = len(S)
    if n is not None and size != n:
        raise SeidelError(f"Seidel matrix has size {size}, expected {n}")
    for i, row in enumerate(S):
        if len(row) != size:
            raise SeidelError(f"row {i} has length {len(row)}", (i, None))
    for i in range(size):
        if S[i][i] != 0:
            raise SeidelError(f"diagonal entry {i} is not 0", (i, i))
        for j in range(size):
            if i != j and S[i][j] not in (1, -1):
                raise SeidelError(f"entry ({i},{j}) is not +-1", (i, j))
    for i in range(size):
        for j in range(i + 1, size):
            if S[i][j] != S[j][i]:
                raise SeidelError(f"not symmetric at ({i},{j})", (i, j))
    l1, l2 = eigen
    S2 = int_matmul(S, S)
    for i in range(size):
        for j in range(size):
            want = (l1 + l2) * S[i][j] - (l1 * l2 if i == j else 0)
            if S2[i][j] != want:
                raise SeidelError(
                    f"S^2 != {l1 + l2}S + {-l1 * l2}I at ({i},{j})", (i, j)
                )


def _etf276_23(seidel) -> GramFrame:
    validate_seidel(seidel, 276)
    fifth = mpq(1, 5)
    M = [[mpq(1) if i == j else fifth * seidel[i][j] for j in range(276)] for i in range(276)]
    return GramFrame(276, 23, M, name="etf276_23")


def _xi_example(xi) -> Frame:
    xi = QuadScalar.lift(xi)
    G = [[mpq(1), _clean(xi), mpq(0)], [mpq(0), mpq(1), mpq(0)], [mpq(0), mpq(0), mpq(1)]]
    return Frame(3, 3, G, xi.d if not xi.is_rational() else 0, name="xi-example")


def construct(kind: str, **params):
    """Build one of the bundled example frames.

    ``simplex(k)``, ``harmonic2d(n)``, ``icosahedron``, ``etf28_7``,
    ``etf276_23(seidel=<matrix>)`` and ``xi_example(xi=<scalar>)``.
    """
    if kind == "simplex":
        return _simplex(int(params["k"]))
    if kind == "harmonic2d":
        return _harmonic2d(int(params["n"]))
    if kind == "icosahedron":
        return _icosahedron()
    if kind == "etf28_7":
        return _etf28_7()
    if kind == "etf276_23":
        return _etf276_23(params["seidel"])
    if kind == "xi_example":
        return _xi_example(params.get("xi", QuadScalar(0, 1, 2)))
    raise FrameError(f"unknown construction {kind!r}")


def scaled_frame(F: Frame, mu) -> Frame:
    """``mu F`` for a coordinate frame (``mu`` in the frame's field)."""
    G = [[_clean(mu * x) for x in row] for row in F.G]
    d = field_of(G)
    return Frame(F.k, F.n, G, d or F.d, F.weights, name=f"{F.name}*{mu}")
