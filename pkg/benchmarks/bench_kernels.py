#!/usr/bin/env python3
"""Compiled vs pure-Python kernels on the workloads the package runs.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends get identical inputs; results are compared before timing is
reported, so a speedup is never shown for diverging output.
"""

import argparse
import time

import numpy as np

from crosslab import _kernels_py
from crosslab.optimizer import build_conflict_graph
from crosslab.spherical import disjoint_pairs, sample_points

try:
    from crosslab import _kernels as _compiled
except ImportError:
    _compiled = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def workloads():
    g10 = build_conflict_graph(10)
    g12 = build_conflict_graph(12)
    g8 = build_conflict_graph(8)
    order8 = np.argsort(-g8.degree(), kind="stable").astype(np.int64)
    m8 = len(g8.nodes)
    pts = sample_points(8, 2000, np.random.default_rng(0))
    pairs = disjoint_pairs(8)

    def anneal(mod, g, sweeps):
        m = len(g.nodes)
        start = mod.random_pages(m, 1)
        return lambda: mod.anneal(g.indptr, g.indices, start, sweeps, g.conflicts / 10, 0.995, 7)

    return [
        ("anneal n=10, 300 sweeps", lambda mod: anneal(mod, g10, 300)),
        ("anneal n=12, 300 sweeps", lambda mod: anneal(mod, g12, 300)),
        ("branch-and-bound n=8", lambda mod: (lambda: mod.bnb_min_mono(g8.indptr, g8.indices, order8, 10 ** 6, [0] * m8, 10 ** 8))),
        ("sphere crossings 2000 x K_8", lambda mod: (lambda: mod.sphere_crossings(pts, pairs, 1e-9))),
    ]


def same(a, b):
    if isinstance(a, np.ndarray):
        return bool((a == b).all())
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _compiled is None:
        print("compiled kernels not built; only the pure-Python timings are shown")
    print(f"{'workload':32s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, make in workloads():
        tp, outp = best_of(make(_kernels_py), args.repeat)
        if _compiled is None:
            print(f"{name:32s} {tp:10.4f} {'-':>10s} {'-':>8s}")
            continue
        tc, outc = best_of(make(_compiled), args.repeat)
        if not same(outp, outc):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:32s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
