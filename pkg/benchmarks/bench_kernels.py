"""Benchmark the compiled kernel backend against the pure-Python fallback.

Run from the repository root after building the extension in place:

    python setup.py build_ext --inplace
    PYTHONPATH=src python benchmarks/bench_kernels.py

Workloads mirror the hot paths of the acceptance suite: the simplest-fraction
sweep over Farey endpoint pairs and the destabilizer range arithmetic over
random instance tuples.
"""

import random
import time
from fractions import Fraction

from combstab.kernels import available_backends


def farey_pairs(max_denominator: int) -> list[tuple[int, int, int, int]]:
    points = sorted({Fraction(p, q) for q in range(1, max_denominator + 1) for p in range(0, q + 1)})
    pairs = []
    for i, lo in enumerate(points[:-1]):
        for hi in points[i + 1 :]:
            pairs.append((lo.numerator, lo.denominator, hi.numerator, hi.denominator))
    return pairs


def range_tuples(count: int, seed: int = 0) -> list[tuple[int, int, int, int, int, int]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, 3)
        n = rng.randint(k + 1, 4)
        w_den = rng.randint(2, 64)
        out.append((k, rng.randint(-50, 50), n, rng.randint(1, w_den - 1), w_den, rng.randint(-150, 150)))
    return out


def bench(label: str, func, args_list, repeats: int = 3) -> float:
    best = min(
        _timed(func, args_list) for _ in range(repeats)
    )
    print(f"  {label}: {best:.3f}s for {len(args_list)} calls")
    return best


def _timed(func, args_list) -> float:
    start = time.perf_counter()
    for args in args_list:
        func(*args)
    return time.perf_counter() - start


def main() -> None:
    backends = available_backends()
    print("backends:", ", ".join(sorted(backends)))
    sweeps = {
        "simplest_between (farey <= 40)": ("simplest_between", farey_pairs(40)),
        "destabilizer_range (100k tuples)": ("destabilizer_range", range_tuples(100_000)),
    }
    timings: dict[str, dict[str, float]] = {}
    for sweep_label, (fn_name, args_list) in sweeps.items():
        print(sweep_label)
        for name in sorted(backends):
            func = getattr(backends[name], fn_name)
            timings.setdefault(sweep_label, {})[name] = bench(name, func, args_list)
    if {"compiled", "pure-python"} <= set(backends):
        print("speedups (pure / compiled):")
        for sweep_label, by_backend in timings.items():
            ratio = by_backend["pure-python"] / by_backend["compiled"]
            print(f"  {sweep_label}: {ratio:.1f}x")


if __name__ == "__main__":
    main()
