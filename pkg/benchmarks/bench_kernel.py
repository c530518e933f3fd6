"""Compare the compiled isolation kernel with the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repetitions 3]

Runs the same solves under both backends, checks that they return identical
equilibria, and prints median wall times and the speedup.
"""

import argparse
import statistics
import time

from kuramoto_eq import _backend, fixtures
from kuramoto_eq.solver import solve

CASES = [
    ("ex31", "basic"),
    ("fourbus", "basic"),
    ("table1-n8", "basic"),
    ("table1-n10", "optimized"),
    ("table1-n12", "optimized"),
]


def timed(model, algorithm, backend, reps):
    times = []
    res = None
    for _ in range(reps):
        t0 = time.perf_counter()
        res = solve(model, algorithm, backend=backend)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), res


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repetitions", type=int, default=3)
    args = p.parse_args()
    if "compiled" not in _backend.BACKENDS:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    print(f"{'fixture':<12} {'algorithm':<10} {'count':>6} {'compiled_s':>11} {'python_s':>10} {'speedup':>8}")
    for name, alg in CASES:
        model = fixtures.get(name)
        tc, rc = timed(model, alg, "compiled", args.repetitions)
        tp, rp = timed(model, alg, "python", args.repetitions)
        same = [(e.theta, e.R) for e in rc.equilibria] == [(e.theta, e.R) for e in rp.equilibria]
        flag = "" if same else "  MISMATCH"
        print(f"{name:<12} {alg:<10} {rc.count:>6} {tc:>11.4f} {tp:>10.4f} {tp / tc:>7.1f}x{flag}")


if __name__ == "__main__":
    main()
