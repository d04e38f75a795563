"""Compare the compiled channel kernels against the pure-Python reference.

Runs the engine hot path (the per-transmission receiver scan) and the scalar
physics functions on both backends and prints a timing table. The pure
backend is loaded directly so one process can time both.

Usage: python benchmarks/bench_channel.py [--nodes N] [--scans K]
"""

import argparse
import math
import random
import time

import numpy as np

from uwrpl.channel import BACKEND_NAME, backend
from uwrpl.channel import _kernels as pure

TL_GEOMETRY = pure.TL_GEOMETRY


def make_layout(n, seed=1):
    rng = random.Random(seed)
    pos = np.zeros(3 * n, dtype=np.float64)
    for i in range(n):
        pos[3 * i] = rng.uniform(0.0, 500.0)
        pos[3 * i + 1] = rng.uniform(0.0, 500.0)
        pos[3 * i + 2] = rng.uniform(0.0, 250.0)
    alive = np.ones(n, dtype=np.uint8)
    return pos, alive


def bench_scan(kernels, pos, alive, n, scans):
    out_idx = np.zeros(n, dtype=np.int32)
    out_dist = np.zeros(n, dtype=np.float64)
    out_snr = np.zeros(n, dtype=np.float64)
    out_delay = np.zeros(n, dtype=np.float64)
    t0 = time.perf_counter()
    total = 0
    for k in range(scans):
        total += kernels.scan_links(pos, alive, n, k % n, 150.0, 171.9, 60.0,
                                    3.2, TL_GEOMETRY, 100.0, 10.0, 1.0, 1.3,
                                    0.0, 1500.0, out_idx, out_dist, out_snr,
                                    out_delay)
    dt = time.perf_counter() - t0
    return dt, total


def bench_scalars(kernels, reps):
    t0 = time.perf_counter()
    acc = 0.0
    for i in range(reps):
        f = 20.0 + (i % 40)
        acc += kernels.absorption_db_km(f, 4.0, 30.0, 8.0, 1.0)
        acc += kernels.total_noise_db(f, 0.5, 0.0)
        acc += kernels.sound_speed_ms(4.0, 30.0, float(i % 500),
                                      pure.MACKENZIE_D3)
    dt = time.perf_counter() - t0
    return dt, acc


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=50)
    ap.add_argument("--scans", type=int, default=20000)
    ap.add_argument("--scalar-reps", type=int, default=50000)
    args = ap.parse_args()

    if BACKEND_NAME != "compiled":
        print("note: compiled backend unavailable or disabled "
              "(UWRPL_FORCE_PURE); comparing pure against itself")
    compiled = backend.kernels

    pos, alive = make_layout(args.nodes)
    rows = []

    dt_c, links_c = bench_scan(compiled, pos, alive, args.nodes, args.scans)
    dt_p, links_p = bench_scan(pure, pos, alive, args.nodes, args.scans)
    assert links_c == links_p, "backends disagree on link counts"
    rows.append(("receiver scan", args.scans, dt_c, dt_p))

    sc_c, acc_c = bench_scalars(compiled, args.scalar_reps)
    sc_p, acc_p = bench_scalars(pure, args.scalar_reps)
    assert math.isclose(acc_c, acc_p, rel_tol=0.0, abs_tol=0.0) or acc_c == acc_p, \
        "backends disagree numerically"
    rows.append(("scalar physics", args.scalar_reps, sc_c, sc_p))

    name_c = BACKEND_NAME if BACKEND_NAME == "compiled" else "pure-python"
    print(f"\n{'benchmark':<16} {'iters':>8} {name_c:>12} {'pure-python':>12} "
          f"{'speedup':>8}")
    for name, iters, c, p in rows:
        print(f"{name:<16} {iters:>8} {c:>11.3f}s {p:>11.3f}s {p / c:>7.1f}x")
    print(f"\nlinks touched per scan set: {links_c}")


if __name__ == "__main__":
    main()
