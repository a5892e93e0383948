"""Command-line interface: ``framelattice <command> ...``.

Exit codes: 0 success, 2 parse error, 3 validation failure, 4 budget
exceeded, 5 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .classify import (
    DEFAULT_VALUE_BUDGET,
    SearchBudgetExceeded,
    eutaxy_classify,
    extreme_verdict,
    perfection_check,
    separation_search,
)
from .exact.scalars import NonCanonicalToken, format_scalar, parse_rational, parse_scalar
from .fileio import ParseError, format_frame, parse_frame_file, parse_seidel_file
from .frames import Frame, FrameError, construct, etf_check, gram_of, rationalized_gram
from .lattice import (
    DEFAULT_NODE_CAP,
    EnumerationBudgetExceeded,
    frame_subset,
    minimal_vectors,
    minvec_vs_frame,
    span_to_lattice,
)
from .pipeline import (
    LARGE_RANK,
    AnalysisOptions,
    InvariantViolation,
    StageError,
    analyze_frame,
    eutaxy_line,
    render_human,
    render_machine,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_BUDGET = 4
EXIT_INVARIANT = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _delta(text: str):
    try:
        return parse_rational(text, strict=False)
    except (NonCanonicalToken, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad delta {text!r}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--machine", action="store_true", help="line-oriented key=value output")
    p.add_argument("--minvec-budget", type=int, default=DEFAULT_NODE_CAP, metavar="N",
                   help="node cap for shortest-vector enumeration (default 10^8)")
    p.add_argument("--allow-large", action="store_true",
                   help=f"enumerate minimal vectors even in rank > {LARGE_RANK}")
    p.add_argument("--lll-delta", type=_delta, default=None, metavar="P/Q",
                   help="LLL parameter in (1/4, 1), default 3/4")
    p.add_argument("--no-minvec", action="store_true",
                   help="skip enumeration; classify +-F (subset mode)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="framelattice",
        description="Exact lattice invariants of tight frames. "
        "Global flags are accepted after the command name.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="write an example frame file")
    c.add_argument("kind", choices=["simplex", "harmonic2d", "icosahedron", "etf28_7", "etf276_23", "xi_example"])
    c.add_argument("--k", type=int, help="simplex dimension")
    c.add_argument("--n", type=int, help="harmonic2d size")
    c.add_argument("--seidel", help="Seidel matrix file for etf276_23")
    c.add_argument("--xi", default="0|1", help="xi as a scalar token (default sqrt d)")
    c.add_argument("--d", type=int, default=2, help="field of --xi (default 2)")
    c.add_argument("--out", help="output path (default standard output)")

    for name, text in (
        ("analyze", "full report: tightness, ETF, rationality, lattice, eutaxy, perfection"),
        ("minvec", "list the minimal vectors in generator coordinates"),
        ("classify", "eutaxy / perfection / extremality line"),
    ):
        a = sub.add_parser(name, parents=[common], help=text)
        a.add_argument("frame", help="frame file")

    s = sub.add_parser("sepsearch", parents=[common], help="search for small gaps between norm-form values")
    s.add_argument("frame")
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--threshold", default="1/100", help="gap below this is reported as GapBelow")
    s.add_argument("--value-budget", type=int, default=DEFAULT_VALUE_BUDGET)
    return parser


def _options(args) -> AnalysisOptions:
    opts = AnalysisOptions(no_minvec=args.no_minvec, allow_large=args.allow_large,
                           node_cap=args.minvec_budget)
    if args.lll_delta is not None:
        opts.delta = args.lll_delta
    return opts


def _load(path):
    try:
        return parse_frame_file(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def cmd_construct(args, out) -> int:
    params = {}
    if args.kind == "simplex":
        if args.k is None:
            raise CliError("simplex needs --k", EXIT_VALIDATION)
        params["k"] = args.k
    elif args.kind == "harmonic2d":
        if args.n is None:
            raise CliError("harmonic2d needs --n", EXIT_VALIDATION)
        params["n"] = args.n
    elif args.kind == "etf276_23":
        if not args.seidel:
            raise CliError("etf276_23 needs --seidel", EXIT_VALIDATION)
        try:
            params["seidel"] = parse_seidel_file(args.seidel)
        except OSError as exc:
            raise CliError(f"cannot read {args.seidel}: {exc}", EXIT_PARSE) from exc
        except ParseError as exc:
            raise CliError(f"{args.seidel}: {exc}", EXIT_PARSE) from exc
    elif args.kind == "xi_example":
        try:
            params["xi"] = parse_scalar(args.xi, args.d)
        except NonCanonicalToken as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
    F = construct(args.kind, **params)
    text = format_frame(F)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
        out.write(f"wrote {args.out}: {'coords' if isinstance(F, Frame) else 'gram'} n={F.n} k={F.k}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_analyze(args, out) -> int:
    F = _load(args.frame)
    try:
        rep = analyze_frame(F, _options(args))
    except StageError as exc:
        out.write((render_machine if args.machine else render_human)(exc.report))
        cause = exc.cause
        if isinstance(cause, EnumerationBudgetExceeded):
            raise CliError(str(exc), EXIT_BUDGET) from exc
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    out.write((render_machine if args.machine else render_human)(rep))
    return EXIT_OK


def _lattice_and_minvec(args):
    F = _load(args.frame)
    rg = rationalized_gram(F)
    if rg is None:
        raise CliError("the Gram matrix is irrational; no lattice basis to enumerate", EXIT_VALIDATION)
    M, _ = rg
    opts = _options(args)
    L = span_to_lattice(M, opts.delta)
    if opts.no_minvec or (L.k > LARGE_RANK and not opts.allow_large):
        S = frame_subset(L, M)
    else:
        S = minimal_vectors(L, M, opts.node_cap)
    return F, M, L, S


def cmd_minvec(args, out) -> int:
    F, M, L, S = _lattice_and_minvec(args)
    out.write(f"minsq={format_scalar(S.min_norm_sq)} count={S.count}\n")
    if S.subset_mode:
        out.write("# subset mode: +-F, not certified minimal\n")
    for a in S.vectors:
        out.write(" ".join(str(x) for x in a) + "\n")
    return EXIT_OK


def cmd_classify(args, out) -> int:
    F, M, L, S = _lattice_and_minvec(args)
    e = eutaxy_classify(S, M, L)
    alpha = None
    try:
        etf = etf_check(F)
        if etf.alpha_is_integer and etf.is_maximal and (
            S.subset_mode or minvec_vs_frame(S, L) == "equalsPlusMinusFrame"
        ):
            alpha = etf.alpha
    except FrameError:
        pass
    p = perfection_check(S, M, L, alpha)
    line = eutaxy_line(e, p, extreme_verdict(e, p))
    if S.subset_mode:
        line += " mode=subset"
    out.write(line + "\n")
    return EXIT_OK


def cmd_sepsearch(args, out) -> int:
    F = _load(args.frame)
    try:
        threshold = parse_rational(args.threshold, strict=False)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad threshold {args.threshold!r}", EXIT_PARSE) from exc
    rep = separation_search(gram_of(F), args.radius, threshold, args.value_budget)
    a, b = rep.witness_pair
    vec = lambda v: "(" + ",".join(map(str, v)) + ")"  # noqa: E731
    out.write(f"sep gap={format_scalar(rep.min_positive_gap)} a={vec(a)} b={vec(b)} radius={rep.radius}\n")
    if args.machine:
        out.write(f"verdict={rep.verdict} threshold={format_scalar(rep.threshold)} values={rep.value_count}\n")
    else:
        out.write(f"verdict: {rep.verdict_text} ({rep.value_count} values, float gap ~ {float(rep.min_positive_gap):.3e})\n")
    if rep.quantization_floor is not None:
        out.write(f"floor={format_scalar(rep.quantization_floor)} (rational form: values lie in a lattice of step 1/D)\n")
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct,
    "analyze": cmd_analyze,
    "minvec": cmd_minvec,
    "classify": cmd_classify,
    "sepsearch": cmd_sepsearch,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except (EnumerationBudgetExceeded, SearchBudgetExceeded) as exc:
        err.write(f"error: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except InvariantViolation as exc:
        err.write(f"error: invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (FrameError, ValueError, ArithmeticError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
