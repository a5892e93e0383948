"""Acceptance criteria 1-9, each with its time budget."""

import random
import time

import numpy as np
from gmpy2 import mpq

from conftest import seidel276
from framelattice.classify import (
    STRONG,
    eutaxy_classify,
    perfection_check,
    separation_search,
    xi_gap_witness,
)
from framelattice.exact.matrix import quadratic_form, scaled_integer
from framelattice.exact.scalars import QuadScalar
from framelattice.fileio import data_path, parse_frame_file
from framelattice.frames import construct, etf_check, gram_of, rationality_class, validate_seidel
from framelattice.lattice import (
    frame_subset,
    lattice_detect,
    minimal_vectors,
    minvec_vs_frame,
    span_to_lattice,
)
from framelattice.pipeline import AnalysisOptions, analyze_frame
from oracles import box_shortest, eutaxy_oracle
from test_classify import HAND_BUILT, point_set
from test_lattice import random_pd_gram

HEX = [[mpq(1), mpq(-1, 2)], [mpq(-1, 2), mpq(1)]]


def congruent_to_hex(B):
    """Find a unimodular U with U^T B U = HEX among small integer matrices."""
    from itertools import product

    for a, b, c, d in product(range(-1, 2), repeat=4):
        if abs(a * d - b * c) != 1:
            continue
        U = [[a, b], [c, d]]
        R = [[sum(U[r][i] * B[r][s] * U[s][j] for r in range(2) for s in range(2)) for j in range(2)] for i in range(2)]
        if R == HEX:
            return U
    return None


def test_criterion_1_simplex_pipeline(acceptance):
    t0 = time.perf_counter()
    rep = analyze_frame(parse_frame_file(data_path("s32.frame")))
    dt = time.perf_counter() - t0
    L, S, e, p = rep.lattice, rep.minvec, rep.eutaxy, rep.perfection
    checks = [
        rep.tightness.is_tight and rep.tightness.frame_constant == mpq(3, 2),
        rep.etf.alpha == 2 and rep.etf.is_maximal,
        rep.rationality.kind == "Rational",
        congruent_to_hex(L.basis_gram) is not None and L.det_gram == mpq(3, 4),
        S.min_norm_sq == 1 and S.count == 6 and rep.relation == "equalsPlusMinusFrame",
        e.eutaxy_class == STRONG and e.strong_coefficient == mpq(1, 3),
        p.is_perfect and (p.span_rank, p.required) == (3, 3),
        rep.extreme is True,
        dt < 1.0,
    ]
    ok = acceptance(1, all(checks), f"(3,2) pipeline exact; checks={checks.count(True)}/{len(checks)} time={dt:.3f}s (<1s)")
    assert ok


def test_criterion_2_icosahedron(acceptance):
    t0 = time.perf_counter()
    rep = analyze_frame(parse_frame_file(data_path("icosahedron.frame")))
    dt = time.perf_counter() - t0
    checks = [
        rep.etf.alpha == QuadScalar(0, 1, 5) and not rep.etf.alpha_is_integer,
        rep.rationality.kind == "Irrational",
        rep.detect is not None and rep.detect.is_lattice is False,
        rep.lattice is None,
        dt < 1.0,
    ]
    ok = acceptance(2, all(checks), f"(6,3) alpha=sqrt5, Irrational, isLattice=false; time={dt:.3f}s (<1s)")
    assert ok


def test_criterion_3_etf28(acceptance):
    t0 = time.perf_counter()
    F = parse_frame_file(data_path("etf28_7.frame"))
    rep = analyze_frame(F)
    dt = time.perf_counter() - t0
    S = rep.minvec
    checks = [
        rep.etf.alpha == 3,
        rep.lattice is not None and rep.lattice.k == 7,
        S.min_norm_sq == 1 and S.count == 56 and not S.subset_mode,
        rep.relation == "equalsPlusMinusFrame",
        rep.eutaxy.eutaxy_class == STRONG and rep.eutaxy.strong_coefficient == mpq(1, 8),
        rep.perfection.is_perfect and (rep.perfection.span_rank, rep.perfection.required) == (28, 28),
        rep.extreme is True,
        dt < 30.0,
    ]
    ok = acceptance(3, all(checks), f"(28,7) 56 minimal vectors, coeff 1/8, rank 28/28, extreme; time={dt:.2f}s (<30s)")
    assert ok


def test_criterion_4_etf276(acceptance):
    t0 = time.perf_counter()
    S = seidel276()
    validate_seidel(S, 276)  # S^2 = 50 S + 275 I, exact
    F = construct("etf276_23", seidel=S)
    etf = etf_check(F)
    L = span_to_lattice(F)
    five_b = all((5 * x).denominator == 1 for row in L.basis_gram for x in row)

    # Thm 1.3 on 10^4 random generator combinations, exactly: 5Q(a) = a^T (5M) a is an integer
    N, D = scaled_integer(F.M)
    assert D == 5
    rng = np.random.default_rng(276)
    A = rng.integers(-2, 3, size=(10_000, 276), dtype=np.int64)
    A[rng.random(A.shape) < 0.8] = 0
    five_q = ((A @ np.array(N, dtype=np.int64)) * A).sum(axis=1)
    sample = [mpq(int(v), 5) for v in five_q]
    exact_spot = all(quadratic_form(F.M, list(map(int, A[i]))) == sample[i] for i in range(20))
    values_ok = all(v >= 0 and (5 * v).denominator == 1 and (v == 0 or v >= mpq(1, 5)) for v in sample)

    sub = frame_subset(L, F.M)
    e = eutaxy_classify(sub, F.M, L)
    p = perfection_check(sub, F.M, L, alpha=etf.alpha)
    rep = analyze_frame(F, AnalysisOptions(no_minvec=True))
    dt = time.perf_counter() - t0
    thm15 = any(label == "Thm 1.5" and "extreme=true" in text and "conditional" in text for label, text in rep.verdicts)
    checks = [
        etf.alpha == 5 and etf.is_maximal,
        L.k == 23 and five_b,
        values_ok and exact_spot,
        sub.subset_mode and minvec_vs_frame(sub, L) == "equalsPlusMinusFrame",
        e.eutaxy_class == STRONG and e.strong_coefficient == mpq(23, 552),
        p.used_closed_form and (p.span_rank, p.required) == (276, 276) and p.is_perfect,
        rep.extreme is True and thm15,
        dt < 300.0,
    ]
    ok = acceptance(
        4,
        all(checks),
        f"(276,23) S^2=50S+275I, alpha=5, 5B integral, 10^4 samples in (1/5)Z>=0, "
        f"subset coeff 23/552, rank 276/276 closed form, extreme per Thm 1.5; time={dt:.1f}s (<300s)",
    )
    assert ok


def test_criterion_5_two_dim_equivalence(acceptance):
    t0 = time.perf_counter()
    expected = {3: True, 4: True, 6: True, 5: False, 8: False, 10: False, 12: False}
    agree = 0
    for n, lattice in expected.items():
        F = construct("harmonic2d", n=n)
        cls = rationality_class(F).kind
        det = lattice_detect(F)
        if det.is_lattice == lattice and (cls == "Rational") == lattice and det.equivalent_to_rationality:
            agree += 1
    dt = time.perf_counter() - t0
    ok = acceptance(5, agree == 7 and dt < 5.0, f"harmonic2d agreement {agree}/7; time={dt:.3f}s (<5s)")
    assert ok


def test_criterion_6_simplex_family(acceptance):
    t0 = time.perf_counter()
    rng = random.Random(6)
    good = 0
    for k in range(2, 9):
        F = construct("simplex", k=k)
        etf = etf_check(F)
        L = span_to_lattice(F)
        S = minimal_vectors(L, F.M)
        values = [quadratic_form(F.M, [rng.randint(-5, 5) for _ in range(k + 1)]) for _ in range(1000)]
        if (
            etf.alpha == k
            and S.min_norm_sq == 1 >= mpq(1, k)
            and all((k * v).denominator == 1 and k * v >= 0 for v in values)
        ):
            good += 1
    dt = time.perf_counter() - t0
    ok = acceptance(6, good == 7 and dt < 30.0, f"simplex(k), k=2..8: {good}/7 with minsq=1>=1/k and kQ in Z>=0; time={dt:.2f}s (<30s)")
    assert ok


def test_criterion_7_svp_oracle(acceptance):
    t0 = time.perf_counter()
    rng = random.Random(7007)
    agree = 0
    for _ in range(100):
        k = rng.randint(1, 4)
        G = random_pd_gram(rng, k, height=10)
        L = span_to_lattice(G)
        S = minimal_vectors(L, G)
        best, found = box_shortest(G)
        agree += S.min_norm_sq == best and S.vectors == found
    dt = time.perf_counter() - t0
    ok = acceptance(7, agree == 100 and dt < 60.0, f"Fincke-Pohst vs box oracle {agree}/100 exact; time={dt:.2f}s (<60s)")
    assert ok


def test_criterion_8_separation(acceptance):
    t0 = time.perf_counter()
    xi = QuadScalar(0, 1, 2)
    witnesses = []
    for e in (2, 4, 6):
        eps = mpq(1, 10**e)
        a1, a2 = xi_gap_witness(xi, eps)
        v = (a1 + a2 * xi) ** 2
        witnesses.append(0 < v < eps)
    M = gram_of(parse_frame_file(data_path("xi_sqrt2.frame")))
    rep = separation_search(M, 20)
    a, b = rep.witness_pair
    exact = abs(quadratic_form(M, a) - quadratic_form(M, b)) == rep.min_positive_gap
    dt = time.perf_counter() - t0
    checks = all(witnesses) and 0 < rep.min_positive_gap < mpq(4, 1000) and exact and dt < 10.0
    ok = acceptance(
        8, checks,
        f"xi=sqrt2 witnesses for eps=1e-2,1e-4,1e-6: {witnesses.count(True)}/3; radius-20 gap "
        f"{float(rep.min_positive_gap):.3e} < 4e-3 (exact in Q(sqrt2)); time={dt:.2f}s (<10s)",
    )
    assert ok


def test_criterion_9_eutaxy_lp(acceptance):
    t0 = time.perf_counter()
    agree = 0
    classes = set()
    for name, (points, expected) in HAND_BUILT.items():
        M, L, S = point_set(points)
        got = eutaxy_classify(S, M, L).eutaxy_class
        oracle = eutaxy_oracle(points, S.min_norm_sq)
        agree += got == oracle == expected
        classes.add(got)
    dt = time.perf_counter() - t0
    ok = acceptance(
        9, agree == len(HAND_BUILT) and len(classes) == 5 and dt < 10.0,
        f"hand-built 2D/3D sets {agree}/{len(HAND_BUILT)} match vertex oracle, {len(classes)}/5 classes; time={dt:.2f}s (<10s)",
    )
    assert ok
