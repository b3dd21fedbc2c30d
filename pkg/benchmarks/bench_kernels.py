"""Benchmark the compiled word kernels against the pure-Python fallback.

The kernels sit on the hot path of ball enumeration, conjugacy-class search
and semifree checks.  Run:

    python benchmarks/bench_kernels.py

Force one implementation for an end-to-end comparison with:

    TWISTLAB_KERNEL=py python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import sys
import time


def _load(name: str):
    if name == "python":
        from twistlab._kernels import _pyops

        return _pyops
    try:
        from twistlab._kernels import _fastops

        return _fastops
    except ImportError:
        return None


def _random_words(rng: random.Random, count: int, length: int) -> list[tuple[int, ...]]:
    out = []
    for _ in range(count):
        out.append(tuple(rng.choice((1, -1, 2, -2)) for _ in range(length)))
    return out


def _random_syllables(rng: random.Random, count: int, syllables: int) -> list[tuple[int, ...]]:
    out = []
    for _ in range(count):
        flat = []
        for _ in range(syllables):
            flat.append(rng.choice((1, 2)))
            flat.append(rng.choice((-3, -2, -1, 1, 2, 3)))
        out.append(tuple(flat))
    return out


def bench_impl(impl, words, pairs, syls) -> dict[str, float]:
    t0 = time.perf_counter()
    for w in words:
        impl.free_reduce(w)
    t_reduce = time.perf_counter() - t0

    t0 = time.perf_counter()
    for a, b in pairs:
        impl.free_mul(a, b)
    t_mul = time.perf_counter() - t0

    t0 = time.perf_counter()
    for s in syls:
        impl.bs_normalize(s, 2)
    t_bs = time.perf_counter() - t0
    return {"free_reduce": t_reduce, "free_mul": t_mul, "bs_normalize": t_bs}


def bench_ball(seconds_label: str) -> float:
    """End-to-end: free-group ball enumeration through the selected kernel."""
    from twistlab.groups import get_group

    F2 = get_group({"family": "free", "rank": 2})
    F2._ball_cache.clear()
    t0 = time.perf_counter()
    ball = F2.ball(8)
    dt = time.perf_counter() - t0
    print(f"  ball(8) on the rank-2 free group [{seconds_label}]: {len(ball)} elements in {dt:.3f}s")
    return dt


def main() -> int:
    rng = random.Random(0)
    words = _random_words(rng, 20000, 60)
    reduced = [w for w in (_load("python").free_reduce(x) for x in words)]
    pairs = list(zip(reduced, reversed(reduced)))
    syls = _random_syllables(rng, 20000, 12)

    rows = []
    py = _load("python")
    rows.append(("python", bench_impl(py, words, pairs, syls)))
    cy = _load("cython")
    if cy is not None and cy is not py:
        rows.append(("cython", bench_impl(cy, words, pairs, syls)))
    else:
        print("compiled kernels unavailable; benchmarking the fallback only")

    print(f"{'impl':8s} {'free_reduce':>12s} {'free_mul':>12s} {'bs_normalize':>13s}")
    for name, res in rows:
        print(
            f"{name:8s} {res['free_reduce']:>11.4f}s {res['free_mul']:>11.4f}s {res['bs_normalize']:>12.4f}s"
        )
    if len(rows) == 2:
        a, b = rows[0][1], rows[1][1]
        for key in a:
            print(f"  speedup {key}: {a[key] / b[key]:.2f}x")

    import twistlab

    print(f"selected kernel for end-to-end runs: {twistlab.kernel_impl}")
    bench_ball(twistlab.kernel_impl)
    return 0


if __name__ == "__main__":
    sys.exit(main())
