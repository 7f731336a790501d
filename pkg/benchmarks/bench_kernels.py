"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--quick]

Prints one row per kernel with the best-of-``repeat`` wall time for each
backend, their ratio and the largest relative difference of the outputs.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from hermite_cs import _fallback

try:
    from hermite_cs import _core
except ImportError:  # pragma: no cover
    _core = None


def cases(quick: bool):
    rng = np.random.default_rng(0)
    npts = 2000 if quick else 20000
    z = rng.normal(size=npts) + 1j * rng.normal(size=npts)
    z2 = rng.normal(size=npts) + 1j * rng.normal(size=npts)
    p, q = 0.8 - 0.1j, 0.3 + 0.2j
    n2d = 8 if quick else 16
    T = rng.normal(size=(400 if quick else 1600, 2)) + 1j * rng.normal(size=(400 if quick else 1600, 2))
    S = rng.normal(size=(1600 if quick else 6400, 2)) + 1j * rng.normal(size=(1600 if quick else 6400, 2))
    C = np.array([[0.3, 0.1j], [0.1j, -0.2]])
    lg = -np.sum(np.abs(S) ** 2, axis=1).astype(np.complex128)
    V = rng.normal(size=(S.shape[0], 16)).astype(np.complex128)
    return [
        ("hermite_raw_table", "hermite_raw_table", (z, 60)),
        ("hermite_scaled_table", "hermite_scaled_table", (z, 60, p, q)),
        ("hermite2d_raw_table", "hermite2d_raw_table", (z[: npts // 10], z2[: npts // 10], n2d, n2d)),
        ("hermite2d_scaled_table", "hermite2d_scaled_table", (z[: npts // 10], z2[: npts // 10], n2d, n2d, p, q)),
        ("bilinear_exp_apply", "bilinear_exp_apply", (T, S, C, lg, V)),
    ]


def _rel(a, b) -> float:
    if isinstance(a, tuple):
        return max(_rel(x, y) for x, y in zip(a, b))
    a, b = np.asarray(a), np.asarray(b)
    return float(np.abs(a - b).max() / max(np.abs(b).max(), 1e-300))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled extension not available; only the numpy fallback is installed", file=sys.stderr)
        return 1
    print(f"{'kernel':<24}{'cython [ms]':>12}{'numpy [ms]':>12}{'speedup':>9}{'max rel diff':>14}")
    for label, name, a in cases(args.quick):
        fc, fn = getattr(_core, name), getattr(_fallback, name)
        tc = min(timeit.repeat(lambda: fc(*a), number=1, repeat=args.repeat))
        tn = min(timeit.repeat(lambda: fn(*a), number=1, repeat=args.repeat))
        print(f"{label:<24}{tc * 1e3:>12.2f}{tn * 1e3:>12.2f}{tn / tc:>9.2f}{_rel(fc(*a), fn(*a)):>14.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
