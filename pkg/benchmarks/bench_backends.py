"""Time the compiled and NumPy hot-loop backends on representative grids.

Run from the repository root after installing the package:

    python benchmarks/bench_backends.py --n 201 --repeats 5

Reports per-point evaluation cost of the static and loss-evolved batch
kernels for several photon-addition counts, plus the speedup of the
compiled extension when it is available.
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from pasts._core import HAVE_COMPILED, _jetcore_py
from pasts.channel import _evolved_jets
from pasts.jets import jet_pow, variable
from pasts.kernel import StateParams, derive_kernel
from pasts.moments import norm_constant

if HAVE_COMPILED:
    from pasts._core import _jetcore


def static_inputs(params: StateParams, xs: np.ndarray, ys: np.ndarray) -> tuple:
    kc = derive_kernel(params)
    nm = norm_constant(params)
    fv = variable(kc.f, params.m)
    pcoef = jet_pow(fv * fv - 4.0 * kc.c * kc.c, -0.5).coeffs
    pref = math.factorial(params.m) / (math.pi * kc.tau_prod * nm)
    return (
        params.m, kc.f, kc.c, kc.b, kc.d,
        np.ascontiguousarray(pcoef, dtype=np.complex128), pref, xs, ys,
    )


def evolved_inputs(
    params: StateParams, kt: float, xs: np.ndarray, ys: np.ndarray
) -> tuple:
    kc = derive_kernel(params)
    nm = norm_constant(params)
    loss, sqrtn, rser, kser = _evolved_jets(params, kt, params.m)
    pref = 2.0 * math.factorial(params.m) / (math.pi * loss * kc.tau_prod * nm)
    return (
        params.m,
        np.ascontiguousarray(sqrtn.coeffs, dtype=np.complex128),
        np.ascontiguousarray(rser.coeffs, dtype=np.complex128),
        np.ascontiguousarray(kser.coeffs, dtype=np.complex128),
        pref, xs, ys,
    )


def best_of(repeats: int, call, *args) -> float:
    call(*args)  # warm caches and JIT-free import paths alike
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        call(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=201,
                        help="grid points per axis (default 201)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions, best taken (default 5)")
    parser.add_argument("--m", type=lambda s: [int(v) for v in s.split(",")],
                        default=[1, 5, 15, 40],
                        help="comma-separated addition counts (default 1,5,15,40)")
    args = parser.parse_args()

    grid = np.linspace(-4.0, 4.0, args.n)
    gx, gy = np.meshgrid(grid, grid)
    xs = np.ascontiguousarray(gx.ravel())
    ys = np.ascontiguousarray(gy.ravel())
    points = xs.size

    print(f"backends: python{' + cython' if HAVE_COMPILED else ' only'}; "
          f"{points} points per call, best of {args.repeats}")
    header = f"{'kernel':<10} {'m':>3} {'python':>12} {'cython':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))

    for m in args.m:
        params = StateParams(nbar=0.5, r=0.3, m=m)
        inputs = static_inputs(params, xs, ys)
        t_py = best_of(args.repeats, _jetcore_py.wigner_batch, *inputs)
        if HAVE_COMPILED and m <= 63:
            t_cy = best_of(args.repeats, _jetcore.wigner_batch, *inputs)
            print(f"{'static':<10} {m:>3} {t_py * 1e3:>10.2f}ms "
                  f"{t_cy * 1e3:>10.2f}ms {t_py / t_cy:>8.1f}x")
        else:
            print(f"{'static':<10} {m:>3} {t_py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")

        inputs = evolved_inputs(params, 0.2, xs, ys)
        t_py = best_of(args.repeats, _jetcore_py.evolved_batch, *inputs)
        if HAVE_COMPILED and m <= 63:
            t_cy = best_of(args.repeats, _jetcore.evolved_batch, *inputs)
            print(f"{'evolved':<10} {m:>3} {t_py * 1e3:>10.2f}ms "
                  f"{t_cy * 1e3:>10.2f}ms {t_py / t_cy:>8.1f}x")
        else:
            print(f"{'evolved':<10} {m:>3} {t_py * 1e3:>10.2f}ms {'-':>12} {'-':>9}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
