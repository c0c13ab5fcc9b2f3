"""Benchmark the compiled GF(2) kernel against the pure-Python fallback.

Builds random flag complexes, orders them along a random positive-slope
line, and times the persistence column reduction plus a rank computation
with both backends.  Run:

    python3 benchmarks/bench_gf2.py [--sizes 500,1500,3000]
"""

import argparse
import random
import time

from morsefiber import _gf2_fallback, gf2
from morsefiber.filtration import facets

try:
    from morsefiber import _gf2core
except ImportError:
    _gf2core = None


def random_flag_complex(rng, target_size, top_dim=4):
    """Cliques of a random graph up to ``top_dim``, at least ``target_size`` cells."""
    from itertools import combinations

    n_vertices = 10
    while True:
        edges = {
            (a, b)
            for a in range(n_vertices)
            for b in range(a + 1, n_vertices)
            if rng.random() < 0.6
        }
        cells = [(v,) for v in range(n_vertices)]
        cells.extend(sorted(edges))
        previous = sorted(edges)
        for _ in range(2, top_dim + 1):
            current = set()
            for s in previous:
                for v in range(s[-1] + 1, n_vertices):
                    if all((min(a, v), max(a, v)) in edges for a in s):
                        current.add(s + (v,))
            previous = sorted(current)
            cells.extend(previous)
        if len(cells) >= target_size:
            return cells
        n_vertices += 3


def boundary_columns(cells):
    order = sorted(cells, key=lambda s: (len(s), s))
    rng = random.Random(42)
    rng.shuffle(order)
    order.sort(key=len)  # any dimension-respecting order works here
    index = {s: j for j, s in enumerate(order)}
    return [[index[f] for f in facets(s)] for s in order]


def bench(impl, packed, n_rows, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        impl.reduce_lows(packed, n_rows)
        impl.reduce_full(packed, n_rows)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="500,1500,3000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"active backend: {gf2.backend_name()}")
    print(f"{'columns':>9} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    rng = random.Random(7)
    for size in sizes:
        cells = random_flag_complex(rng, size)
        columns = boundary_columns(cells)
        n = len(columns)
        packed = gf2.pack_columns(columns, n)
        slow = bench(_gf2_fallback, packed, n)
        if _gf2core is None:
            print(f"{n:>9} {slow:>12.4f} {'n/a':>12} {'n/a':>9}")
            continue
        fast = bench(_gf2core, packed, n)
        print(f"{n:>9} {slow:>12.4f} {fast:>12.4f} {slow / fast:>8.1f}x")


if __name__ == "__main__":
    main()
