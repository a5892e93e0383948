"""Regenerate the bundled frame files in src/framelattice/data."""

from pathlib import Path

from framelattice.exact.scalars import QuadScalar
from framelattice.fileio import write_frame_file
from framelattice.frames import construct

DATA = Path(__file__).resolve().parents[1] / "src" / "framelattice" / "data"

FILES = {
    "s32.frame": ("simplex", {"k": 2}),
    "icosahedron.frame": ("icosahedron", {}),
    "etf28_7.frame": ("etf28_7", {}),
    "h4.frame": ("harmonic2d", {"n": 4}),
    "h5.frame": ("harmonic2d", {"n": 5}),
    "xi_sqrt2.frame": ("xi_example", {"xi": QuadScalar(0, 1, 2)}),
}

if __name__ == "__main__":
    for name, (kind, params) in FILES.items():
        write_frame_file(construct(kind, **params), DATA / name)
        print("wrote", DATA / name)
