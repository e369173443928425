"""Time each kernel with numba and with the numpy fallback.

    python benchmarks/bench_kernels.py [--n 6] [--repeat 3]

The first numba call includes compilation and is reported separately.
"""

import argparse
import time

import numpy as np

from parabolic_hecke import hecke, kernels
from parabolic_hecke.chromatic import indifference_graph
from parabolic_hecke.hecke import induced_module
from parabolic_hecke.perm import all_hessenberg, all_perms
from parabolic_hecke.symfunc import partitions


def cases(n):
    g = hecke._group(n)
    D = n * (n - 1) // 4 + 1
    first = np.array([int(np.argmax(row)) for row in g.left_desc], dtype=np.int64)
    perms = np.array([w.images for w in all_perms(min(n, 5))], dtype=np.int64)
    m = list(all_hessenberg(n))[len(list(all_hessenberg(n))) // 2]
    G = indifference_graph(m)
    A = np.triu(G.adjacency(), 1)
    M = induced_module(partitions(n)[len(partitions(n)) // 2])
    word = np.array([i - 1 for i in all_perms(n)[-1].reduced_word()], dtype=np.int64)
    return {
        "rank_matrices": lambda jit: kernels.rank_matrices(perms, jit),
        "bruhat_table": lambda jit: kernels.bruhat_table(perms, jit),
        "kl_table": lambda jit: kernels.kl_table(g.left_mul, g.lengths, g.left_desc, first, D, jit),
        "coloring_stats": lambda jit: kernels.coloring_stats(n, n, A, A, np.zeros_like(A), jit),
        "induced_trace": lambda jit: kernels.induced_trace(M.cases, M.tgts, word, len(word) + 1, jit),
    }


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"n={args.n}  numba available: {kernels.numba is not None}")
    print(f"{'kernel':16} {'first jit':>10} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for name, fn in cases(args.n).items():
        t0 = time.perf_counter()
        a = fn(True)
        first = time.perf_counter() - t0
        b = fn(False)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        tj = best(lambda: fn(True), args.repeat)
        tn = best(lambda: fn(False), args.repeat)
        flag = "" if same else "  MISMATCH"
        print(f"{name:16} {first:10.4f} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f}{flag}")


if __name__ == "__main__":
    main()
