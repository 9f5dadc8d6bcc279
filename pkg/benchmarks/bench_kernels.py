"""Compare the compiled and pure-Python iteration kernels.

Runs value iteration, the power algorithm and the winning-state
computation on random games with both backends, checks that the results
agree, and prints timings.

    python3 benchmarks/bench_kernels.py --sizes 6 10 16 --repeat 3
"""
import argparse
import random
import time

from tropgame import kernels
from tropgame.games import power_algorithm, value_iteration, winning_states
from tropgame.linalg import MinMaxOperator, TropMatrix

NEG = float("-inf")


def random_game(rng, n, m, density, weight):
    while True:
        A = [[rng.randint(-weight, weight) if rng.random() < density else NEG for _ in range(n)] for _ in range(m)]
        B = [[rng.randint(-weight, weight) if rng.random() < density else NEG for _ in range(n)] for _ in range(m)]
        op = MinMaxOperator(TropMatrix.from_rows(A), TropMatrix.from_rows(B))
        if op.is_game:
            return op


def timed(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return out, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 10, 16])
    ap.add_argument("--weight", type=int, default=10)
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--steps", type=int, default=2000, help="value iteration steps")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not kernels.HAVE_EXTENSION:
        print("compiled kernels unavailable; only the Python backend can run")
        return
    rng = random.Random(args.seed)
    print(f"{'task':<16}{'n=m':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for size in args.sizes:
        op = random_game(rng, size, size, args.density, args.weight)
        tasks = {
            "value_iter": lambda ext: kernels.iterate(kernels.Prepared(op), [0] * op.n, args.steps, ext),
            "power": lambda ext: power_algorithm(op, record=False, use_extension=ext),
            "winning_states": lambda ext: winning_states(op, use_extension=ext),
        }
        for name, fn in tasks.items():
            slow, t_py = timed(lambda: fn(False), args.repeat)
            fast, t_c = timed(lambda: fn(True), args.repeat)
            if slow != fast:
                raise SystemExit(f"backend mismatch on {name} (n={size})")
            print(f"{name:<16}{size:>6}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>10.1f}", flush=True)
    # value_iteration is the public entry point; make sure it matches too
    op = random_game(rng, 8, 8, args.density, args.weight)
    assert value_iteration(op, [0] * op.n, 50) == kernels.iterate(kernels.Prepared(op), [0] * op.n, 50, False)


if __name__ == "__main__":
    main()
