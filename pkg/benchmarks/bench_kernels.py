"""Time the dent fixed-point step under both kernel backends.

    python benchmarks/bench_kernels.py [--n 129 257] [--repeat 20]
"""
import argparse
import timeit

import numpy as np

from shellbuckle import _kernels
from shellbuckle.dent import dent_grid


def bench(n: int, repeat: int) -> dict:
    g = dent_grid(n=n, amplitude=1e-3)
    de, dz = g.spacing
    args = (g.rho_ee, g.rho_zz, g.rho_ez, 1.0, de, dz)
    s0 = -g.rho
    out = {}
    for k in (_kernels.numpy_kernels, _kernels.numba_kernels):
        if k is None:
            continue
        k.step(s0, *args)  # compile / warm caches
        t = min(timeit.repeat(lambda: k.step(s0, *args), number=1, repeat=repeat))
        out[k.name] = t
    a = _kernels.numpy_kernels.step(s0, *args)
    if _kernels.numba_kernels is not None:
        b = _kernels.numba_kernels.step(s0, *args)
        out["max_diff"] = float(np.max(np.abs(a - b)))
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[65, 129, 257, 513])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"{'n':>5} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8} {'max diff':>10}")
    for n in args.n:
        r = bench(n, args.repeat)
        nb = r.get("numba", float("nan"))
        print(f"{n:>5} {1e3 * r['numpy']:>10.3f} {1e3 * nb:>10.3f} {r['numpy'] / nb:>8.2f} "
              f"{r.get('max_diff', float('nan')):>10.2e}")


if __name__ == "__main__":
    main()
