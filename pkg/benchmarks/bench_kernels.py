#!/usr/bin/env python3
"""Benchmark the oracle kernels: numba-compiled vs. pure-numpy bodies.

The dispatched functions in mirrorwords.kernels are @njit-compiled unless
numba is missing or MIRRORWORDS_NO_NUMBA=1; the *_py functions are always
the interpreted bodies. This script times both on word batches shaped
like the verification workloads and prints a small table.

Usage: python benchmarks/bench_kernels.py [--words N] [--max-len L]
"""

import argparse
import time

import numpy as np

from mirrorwords import kernels


def make_batches(rng, words, max_len, dim):
    batches = []
    for _ in range(words):
        k = int(rng.integers(0, max_len + 1))
        v = rng.standard_normal((k, dim))
        norms = np.linalg.norm(v, axis=1, keepdims=True)
        norms[norms == 0] = 1.0
        batches.append(v / norms)
    return batches


def bench(label, fn, args_list, repeats=3):
    fn(*args_list[0])  # warm up (JIT compile on the dispatched path)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return label, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=20000)
    ap.add_argument("--max-len", type=int, default=12)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    plane_batches = [
        (b, rng.uniform(-10, 10, size=b.shape[0]))
        for b in make_batches(rng, args.words, args.max_len, 2)
    ]
    house_batches = [(b,) for b in make_batches(rng, args.words, args.max_len, 5)]
    line_batches = [(b,) for b in make_batches(rng, args.words, args.max_len, 3)]

    mode = "numba" if kernels.USING_NUMBA else "pure-numpy (dispatched)"
    print(f"dispatched path: {mode}")
    print(f"{args.words} words, length 0..{args.max_len}\n")
    rows = [
        bench("plane_word_map        [dispatched]", kernels.plane_word_map, plane_batches),
        bench("plane_word_map        [pure]      ", kernels.plane_word_map_py, plane_batches),
        bench("householder_word (n=5)[dispatched]", kernels.householder_word_matrix, house_batches),
        bench("householder_word (n=5)[pure]      ", kernels.householder_word_matrix_py, house_batches),
        bench("line_word_matrix      [dispatched]", kernels.line_word_matrix, line_batches),
        bench("line_word_matrix      [pure]      ", kernels.line_word_matrix_py, line_batches),
        bench("line_word_quaternion  [dispatched]", kernels.line_word_quaternion, line_batches),
        bench("line_word_quaternion  [pure]      ", kernels.line_word_quaternion_py, line_batches),
    ]
    for label, secs in rows:
        print(f"{label}  {secs * 1e3:9.1f} ms  ({secs / args.words * 1e6:7.2f} us/word)")

    pairs = [(rows[i], rows[i + 1]) for i in range(0, len(rows), 2)]
    print()
    for (label, fast), (_, slow) in pairs:
        name = label.split("[")[0].strip()
        print(f"{name}: speedup x{slow / fast:.1f}")


if __name__ == "__main__":
    main()
