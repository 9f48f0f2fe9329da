#!/usr/bin/env python3
"""Benchmark the affine-permutation window kernel.

Runs identical workloads against the compiled extension
(``twinbuild._wkernel``) and the pure-Python fallback
(``twinbuild._wkernel_py``) and prints nanoseconds per operation plus
the speedup.  The workloads mirror how the kernel is actually used:
word evaluation is the inner loop of the Weyl-distance and coset
enumerations, and descent peeling is the reduce/normal-form loop.

    python3 benchmarks/bench_wkernel.py --n 8 --words 2000
"""

import argparse
import random
import time

import twinbuild.coxeter as coxeter
import twinbuild._wkernel_py as kernel_py

try:
    import twinbuild._wkernel as kernel_c
except ImportError:
    kernel_c = None


def make_words(rng, n, count, length):
    return [
        [rng.randint(1, n) for _ in range(length)] for _ in range(count)
    ]


def evaluate_words(k, n, words):
    """Fold each word into a window; returns the products."""
    gens = {i: k.gen(i, n) for i in range(1, n + 1)}
    out = []
    for word in words:
        u = k.identity(n)
        for i in word:
            u = k.compose(u, gens[i])
        out.append(u)
    return out


def bench_compose(k, n, words):
    evaluate_words(k, n, words)


def bench_invert(k, n, windows):
    for u in windows:
        k.invert(u)


def bench_length(k, n, windows):
    for u in windows:
        k.length(u)


def bench_descents(k, n, windows):
    for u in windows:
        k.right_descents(u)


def bench_peel(k, n, windows):
    """Peel smallest right descents down to the identity (the
    normal-form loop)."""
    gens = {i: k.gen(i, n) for i in range(1, n + 1)}
    for u in windows:
        ds = k.right_descents(u)
        while ds:
            u = k.compose(u, gens[ds[0]])
            ds = k.right_descents(u)


def time_best(func, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8, help="window size")
    ap.add_argument("--words", type=int, default=2000, help="word count")
    ap.add_argument("--length", type=int, default=30, help="word length")
    ap.add_argument("--repeat", type=int, default=5, help="best-of repeats")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    words = make_words(rng, args.n, args.words, args.length)

    kernels = [("python", kernel_py)]
    if kernel_c is not None:
        kernels.append(("compiled", kernel_c))
    selected = coxeter._k.__name__.rsplit(".", 1)[-1]
    print(f"n={args.n} words={args.words} length={args.length} "
          f"(seed {args.seed}; twinbuild.coxeter uses {selected})")

    # Per-workload operation counts, for the ns/op column.
    ops = {
        "compose": args.words * args.length,
        "invert": args.words,
        "length": args.words,
        "descents": args.words,
        "peel": args.words,
    }
    workloads = {
        "compose": lambda k, win: bench_compose(k, args.n, words),
        "invert": lambda k, win: bench_invert(k, args.n, win),
        "length": lambda k, win: bench_length(k, args.n, win),
        "descents": lambda k, win: bench_descents(k, args.n, win),
        "peel": lambda k, win: bench_peel(k, args.n, win),
    }

    results = {}
    for kname, k in kernels:
        windows = evaluate_words(k, args.n, words)
        for wname, func in workloads.items():
            secs = time_best(lambda f=func, k=k, w=windows: f(k, w),
                             args.repeat)
            results[kname, wname] = secs / ops[wname] * 1e9

    header = f"{'workload':<10}" + "".join(f"{k:>14}" for k, _ in kernels)
    if kernel_c is not None:
        header += f"{'speedup':>10}"
    print(header)
    for wname in workloads:
        row = f"{wname:<10}"
        for kname, _ in kernels:
            row += f"{results[kname, wname]:>11.0f} ns"
        if kernel_c is not None:
            ratio = results["python", wname] / results["compiled", wname]
            row += f"{ratio:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
