"""Compare the compiled and pure-Python straightening kernels.

Runs identical straightening workloads against both backends and prints
exact timings.  Usage:

    python3 bench/compare_backends.py [--words 300] [--length 12] [--seed 0]
"""

import argparse
import random
import time

from pbwhit._straighten_py import Kernel as PyKernel
from pbwhit.algebra import builtin_algebra

try:
    from pbwhit._straighten_c import Kernel as CKernel
except ImportError:
    CKernel = None


def kernel_rows(spec):
    return {
        (j, i): tuple(sorted((k, -c) for k, c in combo.items()))
        for (i, j), combo in spec.brackets.items()
    }


def workload(seed, n_words, length, n_gens):
    rng = random.Random(seed)
    return [
        [rng.randrange(n_gens) for _ in range(length)] for _ in range(n_words)
    ]


def run(kernel_cls, spec, words):
    kernel = kernel_cls(spec.n, kernel_rows(spec), spec.central)
    t0 = time.perf_counter()
    checksum = 0
    for word in words:
        result = kernel.word_product(word)
        checksum += len(result)
    return time.perf_counter() - t0, checksum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = builtin_algebra("schrodinger")
    words = workload(args.seed, args.words, args.length, spec.n)
    label = f"{args.words} words of length {args.length} over {spec.name}"
    print(f"workload: {label} (seed {args.seed})")

    py_time, py_sum = run(PyKernel, spec, words)
    print(f"pure python: {py_time:.3f}s  (terms: {py_sum})")
    if CKernel is None:
        print("compiled backend not built; run pip install -e . first")
        return
    c_time, c_sum = run(CKernel, spec, words)
    print(f"compiled:    {c_time:.3f}s  (terms: {c_sum})")
    if c_sum != py_sum:
        raise SystemExit("BACKEND MISMATCH: term counts differ")
    print(f"speedup:     {py_time / c_time:.2f}x")


if __name__ == "__main__":
    main()
