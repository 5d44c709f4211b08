"""Rejection rate of the coverage tester on perturbed coverage tables.

For each eps, a random coverage table gets ceil(eps * 2^m) entries shifted by
a random nonzero rational; the tester runs with the same eps and the
instance's support size as its bound.
"""
import argparse
import math
import random
from fractions import Fraction

from covtest.core import CountingOracle, DenseSetFunction, random_instance
from covtest.reconstruct import test_coverage


def perturb(rng, inst, eps):
    vals = [inst(t) for t in range(1 << inst.m)]
    for t in rng.sample(range(1, 1 << inst.m), math.ceil(eps * (1 << inst.m))):
        vals[t] += Fraction(rng.randint(1, 5), rng.randint(1, 3)) * rng.choice((-1, 1))
    return DenseSetFunction(inst.m, tuple(vals))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for eps in (Fraction(1, 32), Fraction(1, 16), Fraction(1, 8), Fraction(1, 4)):
        rng = random.Random(args.seed)
        reasons = {}
        for trial in range(args.trials):
            inst = random_instance(rng, args.m, rng.randint(1, 8))
            res = test_coverage(CountingOracle.from_table(perturb(rng, inst, eps)), max(1, len(inst)), eps, trial)
            key = "yes" if res else res.reason
            reasons[key] = reasons.get(key, 0) + 1
        rate = 1 - Fraction(reasons.get("yes", 0), args.trials)
        print(f"eps={str(eps):>5}  rejected {float(rate):.3f}  (1 - e^-2 = {1 - math.exp(-2):.3f})  {sorted(reasons.items())}")


if __name__ == "__main__":
    main()
