"""Compare the compiled and pure-Python Taylor kernels.

Integrates p'' = x p - 2 p^3 + mu/2 (with its variational mode) from the
right-hand series at x = 12 down to x = -120, the solver's hot loop, and
reports wall time per backend plus whether the outputs agree bit for bit.

    python benchmarks/bench_kernels.py [--repeat 3] [--mu 1.5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spiralflow.kernels import backends
from spiralflow.pii import SolverConfig, optimal_terms, series_real


def run(impl, mu: float, cfg: SolverConfig):
    R = cfg.R
    nser = optimal_terms(R, mu)
    p, dp = series_real(R, mu, nser)
    return impl.taylor_integrate(
        R, -cfg.L, float(p), float(dp), mu, cfg.ode_tol, cfg.order, cfg.hmax, 1.0, 0.0, cfg.blowup
    )


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--mu", type=float, default=1.5)
    args = ap.parse_args(argv)

    cfg = SolverConfig()
    impls = backends()
    results = {}
    print(f"{'backend':<8} {'steps':>6} {'best [s]':>10}")
    for name, impl in impls.items():
        best = np.inf
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            out = run(impl, args.mu, cfg)
            best = min(best, time.perf_counter() - t0)
        results[name] = (out, best)
        print(f"{name:<8} {len(out[0]) - 1:>6} {best:>10.4f}")

    if len(results) == 2:
        (a, ta), (b, tb) = results["python"], results["cython"]
        same = all(np.array_equal(u, v) for u, v in zip(a[:3], b[:3])) and a[3] == b[3]
        print(f"speedup  {ta / tb:.1f}x   bitwise identical: {same}")
    else:
        print("compiled backend not built; only the fallback was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
