import pytest
from gmpy2 import mpq

from framelattice.exact.scalars import QuadScalar
from framelattice.fileio import (
    ParseError,
    data_path,
    format_frame,
    format_seidel,
    parse_frame_file,
    parse_frame_text,
    parse_seidel_text,
)
from framelattice.frames import Frame, GramFrame, construct

BUNDLED = ["s32.frame", "icosahedron.frame", "etf28_7.frame", "h4.frame", "h5.frame", "xi_sqrt2.frame"]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_round_trip(name):
    path = data_path(name)
    text = path.read_text()
    assert format_frame(parse_frame_file(path)) == text


def test_seidel_round_trip():
    text = data_path("tg276.seidel").read_text()
    assert format_seidel(parse_seidel_text(text)) == text


def test_simplex_file():
    F = parse_frame_file(data_path("s32.frame"))
    assert isinstance(F, GramFrame) and (F.n, F.k) == (3, 2)
    assert F.M == construct("simplex", k=2).M


def test_quadratic_token():
    F = parse_frame_text("frame coords n=2 k=2 d=5\n1/2|1/2 0\n0 1\n")
    assert isinstance(F, Frame)
    assert F.G[0][0] == QuadScalar(mpq(1, 2), mpq(1, 2), 5)


def test_unreduced_fraction_located():
    with pytest.raises(ParseError) as info:
        parse_frame_text("frame gram n=2 k=2\n1 0\n0 2/4\n")
    assert "non-canonical rational" in str(info.value)
    assert (info.value.line, info.value.column) == (3, 3)


@pytest.mark.parametrize(
    "text, line",
    [
        ("frame gram n=2 k=2\n1 0\n0 1", 3),  # missing final newline
        ("frame gram n=2 k=2\n1 0\n", 3),  # missing row
        ("frame gram n=2 k=2\n1 0 0\n0 1\n", 2),  # too many tokens
        ("frame gram n=2 k=2\n1  0\n0 1\n", 2),  # double space
        ("frame gram n=2 k=2\n1 0|1\n0|1 1\n", 2),  # irrational in a Gram file
        ("frame coords n=2 k=2 d=4\n1 0\n0 1\n", 1),  # d not squarefree
        ("frame coords n=2 k=2 d=1\n1 0\n0 1\n", 1),
        ("frame thing\n", 1),
        ("frame gram n=2 k=2\n1 1\n0 1\n", 1),  # not symmetric
        ("frame coords n=2 k=2 d=0\n1 2\n2 4\n", 1),  # rank deficient
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_frame_text(text)
    assert info.value.line == line


def test_weights_line():
    F = construct("harmonic2d", n=5)
    text = format_frame(F)
    assert text.splitlines()[1] == "weights 1 5/8|1/8"
    G = parse_frame_text(text)
    assert G.weights == F.weights and G.G == F.G


def test_seidel_errors():
    with pytest.raises(ParseError) as info:
        parse_seidel_text("seidel n=2\n0+\n+x\n")
    assert (info.value.line, info.value.column) == (3, 2)
    with pytest.raises(ParseError):
        parse_seidel_text("seidel n=2\n0+\n")
