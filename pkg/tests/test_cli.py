import io

import pytest

import framelattice.pipeline as pipeline
from framelattice.cli import main
from framelattice.fileio import data_path


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def data(name):
    return str(data_path(name))


def test_construct_matches_bundled(tmp_path):
    target = tmp_path / "s32.frame"
    code, out, _ = run("construct", "simplex", "--k", "2", "--out", str(target))
    assert code == 0 and "n=3 k=2" in out
    assert target.read_text() == data_path("s32.frame").read_text()
    code, out, _ = run("construct", "harmonic2d", "--n", "5")
    assert code == 0 and out.startswith("frame coords n=5 k=2 d=5\n")


def test_construct_etf276(tmp_path):
    target = tmp_path / "e276.frame"
    code, _, _ = run("construct", "etf276_23", "--seidel", data("tg276.seidel"), "--out", str(target))
    assert code == 0
    assert target.read_text().startswith("frame gram n=276 k=23\n")


def test_construct_bad_seidel(tmp_path):
    bad = tmp_path / "bad.seidel"
    bad.write_text("seidel n=2\n0+\n-0\n")
    code, _, err = run("construct", "etf276_23", "--seidel", str(bad))
    assert code == 3 and "size" in err


def test_analyze_simplex_machine():
    code, out, _ = run("analyze", "--machine", data("s32.frame"))
    assert code == 0
    assert "eutaxy=StronglyEutactic coeff=1/3 perfect=true rank=3/3 extreme=true" in out
    assert "tight=true A=3/2" in out
    assert "verdict Thm1.4:" in out and "verdict Prop1.1:" in out


def test_analyze_is_deterministic():
    first = run("analyze", "--machine", data("etf28_7.frame"))
    second = run("analyze", "--machine", data("etf28_7.frame"))
    assert first == second


def test_analyze_icosahedron():
    code, out, _ = run("analyze", "--machine", data("icosahedron.frame"))
    assert code == 0
    assert "alpha=0|1" in out and "rationality=Irrational" in out
    assert "detect lattice=false" in out and "eutaxy=" not in out


def test_human_output():
    code, out, _ = run("analyze", data("icosahedron.frame"))
    assert code == 0 and "alpha = sqrt(5)" in out and "not a lattice" in out


def test_extreme_only_with_perfect_and_eutactic():
    for name in ("s32.frame", "etf28_7.frame", "h4.frame"):
        _, out, _ = run("analyze", "--machine", data(name))
        line = next(l for l in out.splitlines() if l.startswith("eutaxy="))
        fields = dict(kv.split("=") for kv in line.split())
        if fields["extreme"] == "true":
            assert fields["perfect"] == "true"
            assert fields["eutaxy"] in ("Eutactic", "StronglyEutactic")
    assert "extreme=false" in run("analyze", "--machine", data("h4.frame"))[1]


def test_minvec_output():
    code, out, _ = run("minvec", data("s32.frame"))
    lines = out.splitlines()
    assert code == 0 and lines[0] == "minsq=1 count=6"
    vecs = [tuple(map(int, l.split())) for l in lines[1:]]
    assert vecs == sorted(vecs) and len(vecs) == 6


def test_classify_command():
    code, out, _ = run("classify", data("etf28_7.frame"))
    assert code == 0
    assert out == "eutaxy=StronglyEutactic coeff=1/8 perfect=true rank=28/28 extreme=true\n"
    code, out, _ = run("classify", "--no-minvec", data("s32.frame"))
    assert out.rstrip().endswith("mode=subset")


def test_sepsearch():
    code, out, _ = run("sepsearch", data("s32.frame"), "--radius", "3")
    assert code == 0 and out.startswith("sep gap=1 a=") and "radius=3" in out
    code, out, _ = run("sepsearch", data("h4.frame"), "--radius", "5")
    assert out.startswith("sep gap=1 ")
    code, out, _ = run("sepsearch", "--machine", data("xi_sqrt2.frame"), "--radius", "20")
    assert code == 0 and "verdict=GapBelow" in out


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.frame"
    bad.write_text("frame gram n=2 k=2\n1 0\n0 2/4\n")
    code, _, err = run("analyze", str(bad))
    assert code == 2 and "line 3, column 3" in err
    assert run("analyze", str(tmp_path / "missing.frame"))[0] == 2
    assert run("nonsense")[0] == 2
    code, out, err = run("analyze", data("xi_sqrt2.frame"))
    assert code == 3 and "not tight" in err
    code, _, err = run("analyze", "--minvec-budget", "5", data("etf28_7.frame"))
    assert code == 4
    code, _, _ = run("sepsearch", data("etf28_7.frame"), "--radius", "1")
    assert code == 4
    assert run("classify", data("icosahedron.frame"))[0] == 3


def test_invariant_violation_exit(monkeypatch):
    monkeypatch.setattr(pipeline, "eutaxy_residual_gram", lambda *a: False)
    code, _, err = run("analyze", data("s32.frame"))
    assert code == 5 and "invariant" in err


def test_lll_delta_flag():
    code, out, _ = run("analyze", "--machine", "--lll-delta", "99/100", data("etf28_7.frame"))
    assert code == 0 and "extreme=true" in out
    assert run("analyze", "--lll-delta", "1/5", data("s32.frame"))[0] == 3
