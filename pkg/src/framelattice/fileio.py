"""Text formats for frames and Seidel matrices.

Coordinate frame::

    frame coords n=<n> k=<k> d=<d>
    weights <w_1> ... <w_k>          (optional; squared lengths of the coordinate axes)
    <k rows of n scalar tokens>

Gram frame::

    frame gram n=<n> k=<k>
    <n rows of n rational tokens>

Seidel matrix::

    seidel n=<n>
    <n rows of n characters from + - 0>

Scalars are ``p/q`` or ``p/q|r/s`` (``p/q + r/s sqrt d``).  Parsing is strict:
only the canonical spelling the writer produces is accepted, so
``write(parse(text)) == text`` for every valid file.
"""

from __future__ import annotations

import re
from pathlib import Path

from .exact.scalars import NonCanonicalToken, format_scalar, parse_scalar, squarefree_part
from .frames import Frame, FrameError, GramFrame


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_COORDS = re.compile(r"^frame coords n=([1-9][0-9]*) k=([1-9][0-9]*) d=(0|[1-9][0-9]*)$")
_GRAM = re.compile(r"^frame gram n=([1-9][0-9]*) k=([1-9][0-9]*)$")
_SEIDEL = re.compile(r"^seidel n=([1-9][0-9]*)$")


def _lines(text: str) -> list[str]:
    if not text.endswith("\n"):
        raise ParseError("file must end with a newline", text.count("\n") + 1)
    return text[:-1].split("\n")


def _tokens(line: str, lineno: int, count: int, d: int, rational: bool) -> list:
    parts = line.split(" ")
    if len(parts) != count:
        raise ParseError(f"expected {count} tokens, found {len(parts)}", lineno)
    out = []
    col = 1
    for tok in parts:
        if rational and "|" in tok:
            raise ParseError(f"irrational token {tok!r} in a rational matrix", lineno, col)
        try:
            out.append(parse_scalar(tok, d, strict=True))
        except NonCanonicalToken as exc:
            raise ParseError(str(exc), lineno, col) from None
        col += len(tok) + 1
    return out


def parse_frame_text(text: str, name: str = ""):
    lines = _lines(text)
    head = lines[0]
    m = _COORDS.match(head)
    if m:
        n, k, d = (int(g) for g in m.groups())
        if d > 1 and squarefree_part(d)[0] != 1:
            raise ParseError(f"d={d} is not squarefree", 1)
        if d == 1:
            raise ParseError("d=1 is not canonical; use d=0", 1)
        body = lines[1:]
        weights = None
        if body and body[0].startswith("weights "):
            weights = tuple(_tokens(body[0][len("weights "):], 2, k, d, False))
            body = body[1:]
            first = 3
        else:
            first = 2
        if len(body) != k:
            raise ParseError(f"expected {k} coordinate rows, found {len(body)}", first + len(body))
        G = [_tokens(row, first + i, n, d, False) for i, row in enumerate(body)]
        try:
            return Frame(k, n, G, d, weights, name=name)
        except FrameError as exc:
            raise ParseError(f"invalid frame: {exc}", 1) from None
    m = _GRAM.match(head)
    if m:
        n, k = (int(g) for g in m.groups())
        body = lines[1:]
        if len(body) != n:
            raise ParseError(f"expected {n} Gram rows, found {len(body)}", 2 + len(body))
        M = [_tokens(row, 2 + i, n, 0, True) for i, row in enumerate(body)]
        try:
            return GramFrame(n, k, M, name=name)
        except FrameError as exc:
            raise ParseError(f"invalid Gram frame: {exc}", 1) from None
    raise ParseError(f"unrecognised header {head!r}", 1)


def parse_frame_file(path):
    path = Path(path)
    return parse_frame_text(path.read_text(encoding="ascii"), name=path.stem)


def format_frame(F) -> str:
    out = []
    if isinstance(F, GramFrame):
        out.append(f"frame gram n={F.n} k={F.k}")
        rows = F.M
    else:
        out.append(f"frame coords n={F.n} k={F.k} d={F.d}")
        if F.weights is not None:
            out.append("weights " + " ".join(format_scalar(w) for w in F.weights))
        rows = F.G
    out.extend(" ".join(format_scalar(x) for x in row) for row in rows)
    return "\n".join(out) + "\n"


def write_frame_file(F, path) -> None:
    Path(path).write_text(format_frame(F), encoding="ascii")


# -- Seidel matrices ------------------------------------------------------------------

_SIGN = {"+": 1, "-": -1, "0": 0}
_CHAR = {1: "+", -1: "-", 0: "0"}


def parse_seidel_text(text: str) -> list[list[int]]:
    """Parse the character matrix; structural checks are left to ``validate_seidel``."""
    lines = _lines(text)
    m = _SEIDEL.match(lines[0])
    if not m:
        raise ParseError(f"unrecognised header {lines[0]!r}", 1)
    n = int(m.group(1))
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} rows, found {len(body)}", 2 + len(body))
    S = []
    for i, row in enumerate(body):
        if len(row) != n:
            raise ParseError(f"expected {n} characters, found {len(row)}", i + 2)
        vals = []
        for j, ch in enumerate(row):
            if ch not in _SIGN:
                raise ParseError(f"invalid character {ch!r}", i + 2, j + 1)
            vals.append(_SIGN[ch])
        S.append(vals)
    return S


def parse_seidel_file(path) -> list[list[int]]:
    return parse_seidel_text(Path(path).read_text(encoding="ascii"))


def format_seidel(S) -> str:
    lines = [f"seidel n={len(S)}"]
    lines.extend("".join(_CHAR[v] for v in row) for row in S)
    return "\n".join(lines) + "\n"


def data_path(name: str) -> Path:
    """Path of a bundled data file."""
    return Path(__file__).resolve().parent / "data" / name
