"""Time the compiled kernels against their plain-Python / numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--interactions N] [--repeat R]

The fallback column is what ``FLOWMOTIF_DISABLE_NUMBA=1`` runs. Both columns
are measured in one process through ``.py_func`` so nothing needs re-importing.
"""
import argparse
import time

import numpy as np

from flowmotif import kernels
from flowmotif._accel import USE_NUMBA, py_func
from flowmotif.graph import ingest
from flowmotif.motif import builtin
from flowmotif.synth import synth_records


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--interactions", type=int, default=20_000)
    ap.add_argument("--nodes", type=int, default=300)
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--delta", type=float, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not USE_NUMBA:
        raise SystemExit("numba is disabled; unset FLOWMOTIF_DISABLE_NUMBA to compare both paths")

    g = ingest(synth_records(args.nodes, args.pairs, args.interactions, 1_000_000, seed=1))
    dst = np.ascontiguousarray(g.pairs[:, 1])
    slots = np.array(builtin("chain", 3).slots(), dtype=np.int64)
    _, pairs = kernels.match_kernel(g.out_offsets, dst, slots)
    cycle_slots = np.array(builtin("cycle", 3).slots(), dtype=np.int64)
    print(f"graph: {g.n_interactions} interactions, {g.n_pairs} pairs, {len(pairs)} chain:3 matches, delta={args.delta:g}")

    rng = np.random.default_rng(0)
    w = rng.integers(1, 10, size=(4, 400)).astype(np.float64)
    cases = [
        ("match cycle:3", lambda: kernels.match_kernel(g.out_offsets, dst, cycle_slots), lambda: py_func(kernels.match_kernel)(g.out_offsets, dst, cycle_slots)),
        (
            "enumerate chain:3",
            lambda: kernels.enumerate_kernel(g.times, g.flows, g.offsets, pairs, args.delta, 0.0, 0, True, True),
            lambda: py_func(kernels.enumerate_kernel)(g.times, g.flows, g.offsets, pairs, args.delta, 0.0, 0, True, True),
        ),
        ("dp table 4x400", lambda: kernels.dp_table_loops(w), lambda: kernels.dp_table_numpy(w)),
        (
            "dp scan chain:3",
            lambda: kernels.scan_dp_kernel(g.times, g.flows, g.offsets, pairs, args.delta, True),
            lambda: kernels.scan_dp_numpy(g.times, g.flows, g.offsets, pairs, args.delta, True),
        ),
    ]
    print(f"{'kernel':<20}{'numba s':>12}{'fallback s':>12}{'speedup':>10}")
    for name, fast, slow in cases:
        fast()  # compile
        tf, a = timed(fast, args.repeat)
        ts, b = timed(slow, 1)
        for x, y in zip(a, b):
            np.testing.assert_allclose(x, y)
        print(f"{name:<20}{tf:>12.4f}{ts:>12.4f}{ts / tf:>9.1f}x")


if __name__ == "__main__":
    main()
