#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Times the hot primitives on representative workloads (the same call
patterns the quadrature engine and the randomized bound sweeps produce)
and one end-to-end Poisson integral.  Run from the repository root:

    python benchmarks/bench_backends.py
"""

import math
import time

import numpy as np

from hspot import _corepy

try:
    from hspot import _core_cy
except ImportError:
    _core_cy = None


def time_it(fn, repeat=3):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads(core):
    rng = np.random.default_rng(42)
    ts = rng.uniform(-30.0, 30.0, size=20_000)
    zs = rng.uniform(0.1, 5.0, size=(20_000, 2))
    xs = np.column_stack([rng.uniform(-3, 3, size=2_000),
                          rng.uniform(-3, 3, size=2_000),
                          rng.uniform(0.1, 3, size=2_000)])
    yps = rng.uniform(-8.0, 8.0, size=(2_000, 2))

    def gegenbauer():
        acc = 0.0
        for t in ts[:5_000]:
            acc += core.geg_eval(1.5, 12, t / 30.0)
        return acc

    def plane_mod():
        acc = 0.0
        for (zx, zy), t in zip(zs, ts):
            acc += core.poisson_mod_plane(4, zx, zy, t)
        return acc

    def green_mod():
        acc = 0.0
        for (zx, zy), t in zip(zs[:10_000], ts[:10_000]):
            acc += core.green_mod_plane(4, zx, zy, t, abs(t) * 0.1 + 0.1)
        return acc

    def space_mod():
        acc = 0.0
        for x, yp in zip(xs, yps):
            acc += core.poisson_mod_space(3, 4, x, yp)
        return acc

    return [("gegenbauer k=12 x5k", gegenbauer),
            ("poisson_mod_plane x20k", plane_mod),
            ("green_mod_plane x10k", green_mod),
            ("poisson_mod_space x2k", space_mod)]


def end_to_end():
    # one modified Poisson integral per backend, forced via HSPOT_PURE
    import importlib
    import os
    import subprocess
    import sys
    code = (
        "import time\n"
        "from hspot.dirichlet import BoundaryFunction, poisson_integral_plane_mod\n"
        "from hspot._backend import backend_name\n"
        "f = BoundaryFunction(lambda t: abs(t), growth=1.0, breakpoints=(0.0,))\n"
        "t0 = time.perf_counter()\n"
        "for _ in range(20): v = poisson_integral_plane_mod(1, f, 0.3 + 1.2j)\n"
        "print(f'{backend_name()} {time.perf_counter() - t0:.4f}')\n"
    )
    rows = []
    for pure in ("0", "1"):
        env = dict(os.environ, HSPOT_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        rows.append(out.stdout.split())
    return rows


def main():
    print(f"{'workload':28s} {'pure [s]':>10s} {'compiled [s]':>13s} {'speedup':>8s}")
    cores = [("pure", _corepy)] + ([("compiled", _core_cy)] if _core_cy else [])
    results = {}
    for name, core in cores:
        for label, fn in workloads(core):
            results.setdefault(label, {})[name] = time_it(fn)
    for label, row in results.items():
        pure_t = row["pure"]
        comp_t = row.get("compiled")
        speedup = f"{pure_t / comp_t:7.1f}x" if comp_t else "    n/a"
        comp_s = f"{comp_t:13.4f}" if comp_t else "          n/a"
        print(f"{label:28s} {pure_t:10.4f} {comp_s} {speedup}")
    if _core_cy is None:
        print("\ncompiled core unavailable; build it with 'pip install -e .'")
        return
    print("\nend-to-end modified Poisson integral (20 evaluations):")
    for backend, seconds in end_to_end():
        print(f"  {backend:9s} {float(seconds):.4f} s")


if __name__ == "__main__":
    main()
