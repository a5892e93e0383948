"""Exact lattice invariants of tight frames.

Decides whether the integer span of a finite vector system is a lattice,
extracts a reduced basis, enumerates minimal vectors, and classifies the
lattice as eutactic, perfect and extreme, all in exact arithmetic over Q or
a real quadratic field.
"""

from .classify import (
    EutaxyReport,
    PerfectionReport,
    SeparationReport,
    eutaxy_classify,
    extreme_verdict,
    norm_form_eval,
    perfection_check,
    separation_search,
    xi_gap_witness,
)
from .exact import QuadScalar
from .frames import (
    Frame,
    GramFrame,
    construct,
    etf_check,
    gerzon_check,
    gram_of,
    rationality_class,
    tightness_check,
)
from .lattice import (
    MinimalVectorSet,
    QuadraticLattice,
    lattice_detect,
    min_norm_bound_check,
    minimal_vectors,
    minvec_vs_frame,
    span_to_lattice,
)

__all__ = [
    "EutaxyReport",
    "PerfectionReport",
    "SeparationReport",
    "eutaxy_classify",
    "extreme_verdict",
    "norm_form_eval",
    "perfection_check",
    "separation_search",
    "xi_gap_witness",
    "QuadScalar",
    "Frame",
    "GramFrame",
    "construct",
    "etf_check",
    "gerzon_check",
    "gram_of",
    "rationality_class",
    "tightness_check",
    "MinimalVectorSet",
    "QuadraticLattice",
    "lattice_detect",
    "min_norm_bound_check",
    "minimal_vectors",
    "minvec_vs_frame",
    "span_to_lattice",
]
