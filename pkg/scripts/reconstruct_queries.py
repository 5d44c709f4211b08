"""Queries used by reconstruction against the 2mn + 1 bound."""
import argparse
import random

from covtest.core import CountingOracle, random_instance
from covtest.reconstruct import recover


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--reps", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    print(f"{'m':>3} {'n':>4} {'queries':>8} {'2mn+1':>6}")
    for m in (4, 8, 12, 16, 20):
        for n in (1, 10, 50):
            worst = 0
            for _ in range(args.reps):
                inst = random_instance(rng, m, n)
                o = CountingOracle.from_instance(inst)
                recover(o, max(1, len(inst)))
                worst = max(worst, o.queries_made)
            print(f"{m:>3} {n:>4} {worst:>8} {2 * m * n + 1:>6}")


if __name__ == "__main__":
    main()
