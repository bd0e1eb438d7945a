"""Benchmark the compiled kernels against the pure-Python fallback.

Both backends are imported directly (bypassing the import-time selection)
and timed on the two hot paths: sparse integer polynomial products and
fraction-free Bareiss elimination.  Outputs are cross-checked while timing
so a speedup never hides a semantic drift.

Run standalone:

    python3 benchmarks/bench_kernels.py [--scale N] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import time

from multistruct._kernels import _pure

try:
    from multistruct._kernels import _speed  # type: ignore[attr-defined]
except ImportError:
    _speed = None

NVARS = 14


def random_poly_dict(rng: random.Random, terms: int, degree: int) -> dict:
    out: dict = {}
    while len(out) < terms:
        exp = [0] * NVARS
        for _ in range(rng.randint(0, degree)):
            exp[rng.randrange(NVARS)] += 1
        out[tuple(exp)] = rng.randint(-10**6, 10**6)
    return out


def random_matrix(rng: random.Random, n: int, bound: int) -> list:
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def timed(fn, args_list) -> tuple[float, list]:
    start = time.perf_counter()
    results = [fn(*args) for args in args_list]
    return time.perf_counter() - start, results


def bench(label: str, pure_fn, speed_fn, args_list) -> None:
    t_pure, r_pure = timed(pure_fn, args_list)
    if speed_fn is None:
        print(f"{label:<34} {t_pure:>9.4f}s {'-':>10} {'-':>9}")
        return
    t_speed, r_speed = timed(speed_fn, args_list)
    if r_pure != r_speed:
        raise SystemExit(f"backend disagreement in workload: {label}")
    ratio = t_pure / t_speed if t_speed > 0 else float("inf")
    print(f"{label:<34} {t_pure:>9.4f}s {t_speed:>9.4f}s {ratio:>8.1f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", type=int, default=1, help="workload multiplier")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    mul_small = [
        (random_poly_dict(rng, 25, 4), random_poly_dict(rng, 25, 4))
        for _ in range(300 * args.scale)
    ]
    mul_large = [
        (random_poly_dict(rng, 120, 6), random_poly_dict(rng, 120, 6))
        for _ in range(20 * args.scale)
    ]
    mul_dense = [
        (random_poly_dict(rng, 700, 8), random_poly_dict(rng, 700, 8))
        for _ in range(2 * args.scale)
    ]
    rank_cases = [(random_matrix(rng, 45, 9),) for _ in range(8 * args.scale)]
    det_cases = [(random_matrix(rng, 30, 99),) for _ in range(8 * args.scale)]

    if _speed is None:
        print("compiled backend not available; timing pure backend only")
    header = f"{'workload':<34} {'pure':>10} {'compiled':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    speed = _speed
    bench(
        f"poly mul, 25x25 terms, {len(mul_small)} reps",
        _pure.mul_int_dicts,
        speed.mul_int_dicts if speed else None,
        mul_small,
    )
    bench(
        f"poly mul, 120x120 terms, {len(mul_large)} reps",
        _pure.mul_int_dicts,
        speed.mul_int_dicts if speed else None,
        mul_large,
    )
    bench(
        f"poly mul, 700x700 terms, {len(mul_dense)} reps",
        _pure.mul_int_dicts,
        speed.mul_int_dicts if speed else None,
        mul_dense,
    )
    bench(
        f"bareiss rank, 45x45, {len(rank_cases)} reps",
        _pure.bareiss_rank,
        speed.bareiss_rank if speed else None,
        rank_cases,
    )
    bench(
        f"bareiss det, 30x30, {len(det_cases)} reps",
        _pure.bareiss_det,
        speed.bareiss_det if speed else None,
        det_cases,
    )


if __name__ == "__main__":
    main()
