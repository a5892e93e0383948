"""End-to-end analysis of a frame: tightness through extremality, with rendering."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .classify import (
    EUTACTIC,
    STRONG,
    EutaxyReport,
    PerfectionReport,
    eutaxy_classify,
    eutaxy_residual_gram,
    extreme_verdict,
    perfection_check,
)
from .exact.lll import DEFAULT_DELTA
from .exact.matrix import int_matmul, scaled_integer, transpose
from .exact.scalars import format_scalar
from .frames import (
    EtfReport,
    Frame,
    FrameError,
    NotEtf,
    RationalityClass,
    TightnessReport,
    etf_check,
    rationality_class,
    rationalized_gram,
    tightness_check,
)
from .lattice import (
    DEFAULT_NODE_CAP,
    BoundCheck,
    LatticeDetectReport,
    MinimalVectorSet,
    NotTight,
    QuadraticLattice,
    frame_subset,
    lattice_detect,
    min_norm_bound_check,
    minimal_vectors,
    minvec_vs_frame,
    span_to_lattice,
)

# ranks above this are enumerated only with allow_large
LARGE_RANK = 12

SUBSET_LABEL = "subset +-F; extremality per Thm 1.4/1.5 logic conditional on |Lambda(F)|=1"


class InvariantViolation(RuntimeError):
    """An exact identity that must hold by construction failed."""


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class AnalysisOptions:
    no_minvec: bool = False
    allow_large: bool = False
    node_cap: int = DEFAULT_NODE_CAP
    delta: mpq = DEFAULT_DELTA


@dataclass
class AnalysisReport:
    n: int
    k: int
    d: int
    source: str
    tightness: TightnessReport | None = None
    etf: EtfReport | None = None
    etf_failure: str | None = None
    rationality: RationalityClass | None = None
    detect: LatticeDetectReport | None = None
    lattice: QuadraticLattice | None = None
    minvec: MinimalVectorSet | None = None
    relation: str | None = None
    bound: BoundCheck | None = None
    eutaxy: EutaxyReport | None = None
    perfection: PerfectionReport | None = None
    extreme: bool | None = None
    verdicts: list = field(default_factory=list)  # (theorem label, statement)
    notes: list = field(default_factory=list)
    error: str | None = None

    @property
    def subset_mode(self) -> bool:
        return self.minvec is not None and self.minvec.subset_mode


def _check_lattice(L: QuadraticLattice, M) -> None:
    N, D = scaled_integer(M)
    E = L.embed
    B = int_matmul(transpose(E), int_matmul(N, E))
    if any(mpq(B[i][j], D) != L.basis_gram[i][j] for i in range(L.k) for j in range(L.k)):
        raise InvariantViolation("basis Gram differs from embed^T M embed")


def analyze_frame(F, options: AnalysisOptions | None = None, source: str = "") -> AnalysisReport:
    """Run every stage that applies; a failing stage raises :class:`StageError`
    after recording what was computed in ``exc.report``."""
    opts = options or AnalysisOptions()
    d = F.d if isinstance(F, Frame) else 0
    rep = AnalysisReport(F.n, F.k, d, source or F.name)
    try:
        _run(F, opts, rep)
    except (InvariantViolation, StageError) as exc:
        exc.report = rep
        raise
    return rep


def _stage(rep, stage, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (FrameError, ValueError, ArithmeticError, RuntimeError) as exc:
        if isinstance(exc, InvariantViolation):
            raise
        rep.error = f"{stage}: {exc}"
        raise StageError(stage, exc) from exc


def _run(F, opts: AnalysisOptions, rep: AnalysisReport) -> None:
    rep.tightness = _stage(rep, "tightness", tightness_check, F)
    if not rep.tightness.is_tight:
        _stage(rep, "tightness", _raise, NotTight("frame is not tight"))
    try:
        rep.etf = etf_check(F)
    except NotEtf as exc:
        rep.etf_failure = str(exc)
    rep.rationality = rationality_class(F)
    kind = rep.rationality.kind

    if isinstance(F, Frame):
        rep.detect = _stage(rep, "lattice", lattice_detect, F)
        if rep.detect.equivalent_to_rationality:
            agree = rep.detect.is_lattice == (kind == "Rational")
            rep.verdicts.append((
                "Thm 1.2",
                f"k={F.k} tight frame with a unit vector: lattice={_b(rep.detect.is_lattice)} "
                f"rational={_b(kind == 'Rational')} agree={_b(agree)}",
            ))
            if not agree:
                raise InvariantViolation("lattice test disagrees with rationality for k in {2,3}")
    if kind == "Rational":
        rep.verdicts.append(("Prop 1.1", "rational frame: the integer span is a lattice"))
    if kind == "Irrational":
        if rep.detect is not None and rep.detect.is_lattice:
            rep.notes.append("lattice with an irrational Gram: basis extraction needs a rational Gram")
        return
    if rep.detect is not None and not rep.detect.is_lattice:
        return

    M, scale = rationalized_gram(F)
    if scale != 1:
        rep.notes.append(f"Gram = {format_scalar(scale)} * rational Gram; invariants computed on the latter")
    L = _stage(rep, "lattice", span_to_lattice, M, opts.delta)
    L.scale = scale
    _check_lattice(L, M)
    rep.lattice = L

    large = F.k > LARGE_RANK and not opts.allow_large
    if opts.no_minvec or large:
        if large and not opts.no_minvec:
            rep.notes.append(f"rank {F.k} > {LARGE_RANK}: enumeration skipped (use --allow-large)")
        S = _stage(rep, "minvec", frame_subset, L, M)
    else:
        S = _stage(rep, "minvec", minimal_vectors, L, M, opts.node_cap)
    rep.minvec = S
    rep.relation = minvec_vs_frame(S, L)

    etf = rep.etf
    int_alpha = etf is not None and etf.alpha_is_integer and scale == 1
    if int_alpha:
        rep.bound = min_norm_bound_check(S, L, etf.alpha)
        q = "integral" if rep.bound.quantized else "NOT integral"
        rep.verdicts.append((
            "Thm 1.3",
            f"min norm^2 {S.min_norm_sq} >= 1/{etf.alpha}: {_b(rep.bound.holds)}; "
            f"{etf.alpha}*basis Gram {q}" + (" (min taken over +-F, not enumerated)" if S.subset_mode else ""),
        ))
        if not (rep.bound.holds and rep.bound.quantized):
            raise InvariantViolation("minimal-norm bound or quantization failed for an integer alpha")

    rep.eutaxy = _stage(rep, "eutaxy", eutaxy_classify, S, M, L)
    if rep.eutaxy.coefficients is not None and not eutaxy_residual_gram(rep.eutaxy, S, M):
        raise InvariantViolation("eutaxy witness does not satisfy the Gram-side identity")
    closed = int_alpha and etf.is_maximal and (S.subset_mode or rep.relation == "equalsPlusMinusFrame")
    rep.perfection = _stage(
        rep, "perfection", perfection_check, S, M, L, etf.alpha if closed else None
    )
    rep.extreme = extreme_verdict(rep.eutaxy, rep.perfection)
    if rep.extreme and not (
        rep.perfection.is_perfect and rep.eutaxy.eutaxy_class in (EUTACTIC, STRONG)
    ):
        raise InvariantViolation("extreme reported without perfect and eutactic")

    if etf is not None and etf.is_maximal and int_alpha:
        label = "Thm 1.5" if (F.n, F.k) == (276, 23) else "Thm 1.4"
        text = f"maximal ETF, alpha={etf.alpha}: perfect={_b(rep.perfection.is_perfect)} " \
               f"eutactic={_b(rep.eutaxy.at_least(EUTACTIC))} extreme={_b(rep.extreme)}"
        if S.subset_mode:
            text += f" [{SUBSET_LABEL}]"
        rep.verdicts.append((label, text))
    else:
        rep.verdicts.append(("Voronoi", f"perfect and eutactic <=> extreme: extreme={_b(rep.extreme)}"))


def _raise(exc):
    raise exc


def _b(x: bool) -> str:
    return "true" if x else "false"


# -- rendering ------------------------------------------------------------------------------

def _matrix_text(B) -> str:
    return ";".join(",".join(format_scalar(x) for x in row) for row in B)


def eutaxy_line(e: EutaxyReport, p: PerfectionReport, extreme: bool) -> str:
    if e.strong_coefficient is not None:
        coeff = format_scalar(e.strong_coefficient)
    elif e.coefficients is None:
        coeff = "none"
    else:
        coeff = "varies"
    return (
        f"eutaxy={e.eutaxy_class} coeff={coeff} perfect={_b(p.is_perfect)} "
        f"rank={p.span_rank}/{p.required} extreme={_b(extreme)}"
    )


def render_machine(rep: AnalysisReport) -> str:
    out = [f"frame n={rep.n} k={rep.k} d={rep.d} source={rep.source}"]
    if rep.tightness is not None:
        t = rep.tightness
        out.append(
            f"tight={_b(t.is_tight)} A={format_scalar(t.frame_constant)} gamma={format_scalar(t.gamma)}"
        )
    if rep.etf is not None:
        e = rep.etf
        out.append(
            f"etf=true c={format_scalar(e.c)} alpha={format_scalar(e.alpha)} "
            f"alpha_integer={_b(e.alpha_is_integer)} maximal={_b(e.is_maximal)}"
        )
    elif rep.tightness is not None:
        out.append("etf=false")
    if rep.rationality is not None:
        r = rep.rationality
        extra = f" scale={format_scalar(r.scale)}" if r.kind == "ScaledRational" else ""
        out.append(f"rationality={r.kind}{extra}")
    if rep.detect is not None:
        w = rep.detect.witness
        wt = w if isinstance(w, str) else f"{w[0]},{w[1]}"
        piv = ",".join(map(str, rep.detect.pivot_columns))
        out.append(f"detect lattice={_b(rep.detect.is_lattice)} pivots={piv} witness={wt}")
    if rep.lattice is not None:
        L = rep.lattice
        out.append(f"lattice=true rank={L.k} det={format_scalar(L.det_gram)} basis={_matrix_text(L.basis_gram)}")
    if rep.minvec is not None:
        S = rep.minvec
        mode = "subset" if S.subset_mode else "enumerated"
        out.append(f"minsq={format_scalar(S.min_norm_sq)} count={S.count} relation={rep.relation} mode={mode}")
    if rep.eutaxy is not None and rep.perfection is not None:
        out.append(eutaxy_line(rep.eutaxy, rep.perfection, rep.extreme))
    for label, text in rep.verdicts:
        out.append(f"verdict {label.replace(' ', '')}: {text}")
    for note in rep.notes:
        out.append(f"note {note}")
    if rep.error:
        out.append(f"error {rep.error}")
    return "\n".join(out) + "\n"


def render_human(rep: AnalysisReport) -> str:
    out = [f"Frame {rep.source}: n={rep.n}, k={rep.k}" + (f", field Q(sqrt {rep.d})" if rep.d else "")]
    if rep.tightness is not None:
        t = rep.tightness
        out.append(f"  tightness     : {'tight' if t.is_tight else 'NOT tight'}, "
                   f"A = {format_scalar(t.frame_constant)} (G G^T = A I), gamma = 1/A = {format_scalar(t.gamma)}")
    if rep.etf is not None:
        e = rep.etf
        out.append(f"  ETF           : unit ETF, c = {_pretty(e.c)}, alpha = {_pretty(e.alpha)}"
                   f"{' (integer)' if e.alpha_is_integer else ''}{', maximal' if e.is_maximal else ''}")
    elif rep.etf_failure:
        out.append(f"  ETF           : no ({rep.etf_failure})")
    if rep.rationality is not None:
        out.append(f"  rationality   : {rep.rationality.kind}")
    if rep.detect is not None:
        d = rep.detect
        how = "all entries of G0^-1 G rational" if d.is_lattice else f"irrational entry at {d.witness}"
        out.append(f"  lattice test  : {'lattice' if d.is_lattice else 'not a lattice'} "
                   f"(pivot columns {list(d.pivot_columns)}; {how})")
    if rep.lattice is not None:
        L = rep.lattice
        out.append(f"  lattice       : rank {L.k}, det Gram = {format_scalar(L.det_gram)}")
        if L.k <= 8:
            for row in L.basis_gram:
                out.append("      " + "  ".join(format_scalar(x) for x in row))
    if rep.minvec is not None:
        S = rep.minvec
        mode = " (subset mode: +-F, not enumerated)" if S.subset_mode else ""
        out.append(f"  minimal vecs  : min norm^2 = {format_scalar(S.min_norm_sq)}, {S.count} vectors, "
                   f"{rep.relation}{mode}")
    if rep.eutaxy is not None:
        e = rep.eutaxy
        coeff = f", coefficient {format_scalar(e.strong_coefficient)}" if e.strong_coefficient is not None else ""
        out.append(f"  eutaxy        : {e.eutaxy_class}{coeff}")
    if rep.perfection is not None:
        p = rep.perfection
        how = " (closed form)" if p.used_closed_form else ""
        out.append(f"  perfection    : rank {p.span_rank}/{p.required}{how}, "
                   f"{'perfect' if p.is_perfect else 'not perfect'}")
    if rep.extreme is not None:
        out.append(f"  extreme       : {'yes' if rep.extreme else 'no'}")
    for label, text in rep.verdicts:
        out.append(f"  [{label}] {text}")
    for note in rep.notes:
        out.append(f"  note: {note}")
    if rep.error:
        out.append(f"  stopped at {rep.error}")
    return "\n".join(out) + "\n"


def _pretty(x) -> str:
    s = format_scalar(x)
    if "|" in s:
        a, b = s.split("|")
        root = f"sqrt({x.d})" if b == "1" else f"{b}*sqrt({x.d})"
        return root if a == "0" else f"{a} + {root}"
    return s
