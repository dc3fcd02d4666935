"""Time the numba kernels against the numpy fallbacks on catalog matroids.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is called once before timing so JIT compilation is excluded.
Outputs of the two paths are compared for equality.
"""

import argparse
import time

import numpy as np

from kantor import _kernels as K
from kantor.catalog import pg3, pg3_minus, vamos
from kantor.lines import _scan_tables


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    for m in (vamos(), pg3(2), pg3_minus(3, 2), pg3(3)):
        masks, ranks = m.masks, m.flat_ranks
        queries = np.arange(min(1 << m.n, 1 << 16), dtype=np.uint64)
        yield m.name, "closure_index", (masks, queries)
        yield m.name, "join_table", (masks,)
        yield m.name, "meet_table", (masks,)
        if m.n <= 16:
            yield m.name, "rank_table", (masks, ranks, m.n)
        lines = m.flats_of_rank(2)
        apart, meets, join, line_masks = _scan_tables(m, lines)
        yield m.name, "line_quadruples", (apart, meets, join, line_masks, masks)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"{'matroid':<12} {'kernel':<16} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}  same")
    for name, kernel, call_args in cases():
        f_np = getattr(K, kernel + "_np")
        f_nb = getattr(K, kernel + "_nb")
        t_np = best_of(lambda: f_np(*call_args), args.repeat)
        t_nb = best_of(lambda: f_nb(*call_args), args.repeat)
        same = np.array_equal(f_np(*call_args), f_nb(*call_args))
        print(f"{name:<12} {kernel:<16} {t_np * 1e3:>10.2f} {t_nb * 1e3:>10.2f} {t_np / t_nb:>8.1f}  {same}")


if __name__ == "__main__":
    main()
