"""Exact scalars and the linear/lattice algebra kernels used throughout."""

from .contfrac import ContinuedFraction, cf_expand
from .intlat import NotSaturated, hnf_complete, integer_kernel, kernel_and_complement
from .linalg import (
    Inconsistent,
    NotPositiveDefinite,
    RankSolution,
    inverse,
    ldl_decompose,
    rank,
    rank_solve,
    solve,
)
from .lll import DEFAULT_DELTA, is_lll_reduced, lll_reduce
from .lp import LPResult, NonnegClassification, lp_classify_nonneg, simplex_max
from .scalars import (
    FieldMismatch,
    NonCanonicalToken,
    Q,
    QuadScalar,
    as_rational,
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    qs_arith,
    qs_sign,
    sign,
    sqrt_rational,
)

__all__ = [
    "ContinuedFraction",
    "cf_expand",
    "NotSaturated",
    "hnf_complete",
    "integer_kernel",
    "kernel_and_complement",
    "Inconsistent",
    "NotPositiveDefinite",
    "RankSolution",
    "inverse",
    "ldl_decompose",
    "rank",
    "rank_solve",
    "solve",
    "DEFAULT_DELTA",
    "is_lll_reduced",
    "lll_reduce",
    "LPResult",
    "NonnegClassification",
    "lp_classify_nonneg",
    "simplex_max",
    "FieldMismatch",
    "NonCanonicalToken",
    "Q",
    "QuadScalar",
    "as_rational",
    "format_rational",
    "format_scalar",
    "parse_rational",
    "parse_scalar",
    "qs_arith",
    "qs_sign",
    "sign",
    "sqrt_rational",
]
