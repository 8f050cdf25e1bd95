"""Compare the compiled edit-distance kernel against the pure-Python fallback.

    python benchmarks/bench_levenshtein.py [--pairs N]

Workload mirrors the filter stage: claim-sized strings (60-120 chars)
scored pairwise, once per synthetic pair.
"""

import argparse
import random
import string
import time

from fec_forge._speed import KERNEL_BACKEND
from fec_forge._speed._pure import levenshtein as pure

try:
    from fec_forge._speed._levenshtein import levenshtein as compiled
except ImportError:
    compiled = None


def make_pairs(n, rng):
    alphabet = string.ascii_lowercase + "     "
    pairs = []
    for _ in range(n):
        base = "".join(rng.choices(alphabet, k=rng.randint(60, 120)))
        mutated = list(base)
        for _ in range(rng.randint(1, 15)):
            pos = rng.randrange(len(mutated))
            mutated[pos] = rng.choice(alphabet)
        pairs.append((base, "".join(mutated)))
    return pairs


def bench(fn, pairs):
    start = time.perf_counter()
    checksum = 0
    for a, b in pairs:
        checksum += fn(a, b)
    elapsed = time.perf_counter() - start
    return elapsed, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    pairs = make_pairs(args.pairs, random.Random(args.seed))
    print(f"active kernel backend: {KERNEL_BACKEND}")
    print(f"{args.pairs} pairs of 60-120 char strings\n")

    pure_time, pure_sum = bench(pure, pairs)
    rate = args.pairs / pure_time
    print(f"pure-python : {pure_time:8.3f} s  ({rate:10.0f} pairs/s)")

    if compiled is None:
        print("compiled    : not built (run `pip install -e .`)")
        return

    compiled_time, compiled_sum = bench(compiled, pairs)
    assert compiled_sum == pure_sum, "kernels disagree"
    rate = args.pairs / compiled_time
    print(f"cython      : {compiled_time:8.3f} s  ({rate:10.0f} pairs/s)")
    print(f"\nspeedup: {pure_time / compiled_time:.1f}x")


if __name__ == "__main__":
    main()
