"""Write the Seidel matrix of the regular two-graph on 276 points.

Points are the 23 pairs {0, j} and the 253 octads of the extended binary Golay
code that contain coordinate 0.  Writing each point as a Leech-type vector v
(4,4 on a pair; 2 on an octad) the lines v - w/2 with w = (5, 1^23) are
equiangular, and the sign of their inner product is

    pair/pair      +      pair {0,j} / octad   + iff j in the octad
    octad/octad    + iff the octads meet in 4 points (else they meet in 2)

Usage: python tools/make_seidel276.py src/framelattice/data/tg276.seidel
"""

import itertools
import sys

import numpy as np

GOLAY_POLY = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1]  # 1 + x^2 + x^4 + x^5 + x^6 + x^10 + x^11


def golay_octads():
    gens = []
    for shift in range(12):
        word = [0] * 23
        for i, c in enumerate(GOLAY_POLY):
            word[(i + shift) % 23] = c
        word.append(sum(word) % 2)
        gens.append(word)
    gens = np.array(gens, dtype=np.int64)
    octads = []
    for coeffs in itertools.product((0, 1), repeat=12):
        w = (np.array(coeffs) @ gens) % 2
        if w.sum() == 8:
            octads.append(frozenset(np.flatnonzero(w).tolist()))
    assert len(octads) == 759, len(octads)
    return octads


def seidel276():
    octads = [o for o in golay_octads() if 0 in o]
    assert len(octads) == 253
    points = [("pair", j) for j in range(1, 24)] + [("octad", o) for o in sorted(octads, key=sorted)]
    n = len(points)
    S = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            (ka, pa), (kb, pb) = points[a], points[b]
            if ka == "pair" and kb == "pair":
                s = 1
            elif ka == "pair":
                s = 1 if pa in pb else -1
            elif kb == "pair":
                s = 1 if pb in pa else -1
            else:
                s = 1 if len(pa & pb) == 4 else -1
            S[a, b] = s
    assert (S @ S == 50 * S + 275 * np.eye(n, dtype=np.int64)).all()
    return S


def main(path):
    S = seidel276()
    sym = {1: "+", -1: "-", 0: "0"}
    with open(path, "w") as fh:
        fh.write(f"seidel n={len(S)}\n")
        for row in S:
            fh.write("".join(sym[int(x)] for x in row) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
