"""Completability of small f* query logs versus the 2^(k+1)-set certificate family.

    python scripts/notester_desk.py --m 6 --k 2 --trials 50 --seed 7
"""
import argparse

from covtest.completion import notester_experiment
from covtest.core import to_elements


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    for k in range(1, args.k + 1):
        rep = notester_experiment(args.m, k, args.trials, args.seed)
        print(f"m={rep.m} k={k}: {rep.feasible}/{rep.trials} logs of size {rep.log_size} completable; "
              f"certificate family on {to_elements(rep.certificate_set)} "
              f"({1 << (k + 1)} queries) completable={rep.certificate_feasible}, "
              f"witness valid={rep.certificate_witness_valid}")


if __name__ == "__main__":
    main()
