import functools

import pytest

from framelattice.fileio import data_path, parse_seidel_file
from framelattice.frames import construct
from framelattice.lattice import minimal_vectors, span_to_lattice


@functools.lru_cache(maxsize=None)
def seidel276():
    return parse_seidel_file(data_path("tg276.seidel"))


@functools.lru_cache(maxsize=None)
def etf276():
    return construct("etf276_23", seidel=seidel276())


@functools.lru_cache(maxsize=None)
def lattice276():
    return span_to_lattice(etf276())


@functools.lru_cache(maxsize=None)
def etf28():
    F = construct("etf28_7")
    L = span_to_lattice(F)
    return F, L, minimal_vectors(L, F.M)


@pytest.fixture
def simplex2():
    F = construct("simplex", k=2)
    L = span_to_lattice(F)
    return F, L, minimal_vectors(L, F.M)


_ACCEPTANCE = {}


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion; printed at the end of the run."""

    def record(number, ok, detail):
        _ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
