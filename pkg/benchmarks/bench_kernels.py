#!/usr/bin/env python3
"""
Backend comparison for the three hot kernels.

Runs each kernel under both the JIT backend and the pure-numpy fallback and
prints a small table of best-of-``--repeat`` wall times.  Invoke from the
repository root::

    python3 benchmarks/bench_kernels.py [--repeat 3] [--exchange-quads 200000]

The first JIT call compiles (and disk-caches) the kernels, so compilation is
paid once before timing starts.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cellkit.hecke import get_group_table, kl_table
from cellkit.kernels import h_slab_array, kl_table_array
from cellkit.kernels import h_exchange_batch as exchange
from cellkit.lusztig import h_tensor


def best_of(repeat: int, fn) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--exchange-quads", type=int, default=200_000)
    args = parser.parse_args()

    rows = []

    for n in (4, 5):
        gt = get_group_table(n)
        timings = {}
        for backend in ("numba", "numpy"):
            kl_table_array(gt, backend=backend)  # warm (JIT + cache)
            timings[backend] = best_of(
                args.repeat, lambda: kl_table_array(gt, backend=backend)
            )
        rows.append((f"kl_table_array  n={n}", timings))

    for n in (4, 5):
        table = kl_table(n)
        gt = table.gt
        mu = table.mu_csr()
        slabs = range(gt.order)
        timings = {}
        for backend in ("numba", "numpy"):
            h_slab_array(gt, mu, 0, backend=backend)  # warm
            timings[backend] = best_of(
                args.repeat,
                lambda: [h_slab_array(gt, mu, y, backend=backend) for y in slabs],
            )
        rows.append((f"h_slab_array    n={n} (all {gt.order} slabs)", timings))

    n = 5
    table = kl_table(n)
    stack, _ = h_tensor(n, table=table)
    support = stack.any(axis=3)
    rng = np.random.default_rng(1729)
    quads = rng.integers(
        0, table.gt.order, size=(args.exchange_quads, 4), dtype=np.int64
    )
    # keep only equal-a rows so that every quadruple genuinely holds
    from cellkit.lusztig import build_adata

    adata = build_adata(n, table)
    a_vec = np.array(
        [adata.a[table.gt.perm(i)] for i in range(table.gt.order)]
    )
    quads = quads[a_vec[quads[:, 0]] == a_vec[quads[:, 3]]]
    timings = {}
    for backend in ("numba", "numpy"):
        assert exchange(stack, support, quads[:100], n=n, backend=backend) == -1
        timings[backend] = best_of(
            args.repeat,
            lambda: exchange(stack, support, quads, n=n, backend=backend),
        )
    rows.append((f"h_exchange_batch n={n} ({len(quads)} quads)", timings))

    width = max(len(name) for name, _ in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, timings in rows:
        ratio = timings["numpy"] / timings["numba"]
        print(
            f"{name:<{width}}  {timings['numba']:>9.4f}s  "
            f"{timings['numpy']:>9.4f}s  {ratio:>7.1f}x"
        )


if __name__ == "__main__":
    main()
