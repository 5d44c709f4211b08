"""W-distance against usual distance on the constructed families.

Prints the negative-coefficient fraction of f* (k = m/4) as m grows, then the
summaries of the W-near/far and W-far/near constructions.
"""
import argparse
import math
from fractions import Fraction

from covtest.adversarial import FStarParams, fstar_wdistance
from covtest.distance_lab import build_wfar_unear, build_wnear_ufar


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=28)
    args = ap.parse_args()

    print("f*, k = m/4: fraction of negative W-coefficients")
    for m in range(4, args.max_m + 1, 4):
        d = fstar_wdistance(FStarParams(m, m // 4, 1))
        print(f"  m={m:>3}  {float(d):.6f}")

    print("\nW-near, 1/4-far (w = m on singletons, -1 on pairs)")
    for m in range(2, 9):
        rep = build_wnear_ufar(m).report
        print(f"  m={m}  W-distance {float(rep['w_distance']):.4f} = C(m,2)/(2^m-1): "
              f"{rep['w_distance'] == Fraction(math.comb(m, 2), 2**m - 1)}  "
              f"quadruple bound {rep['quadruple_lower_bound']}")

    print("\nW-far, near (symmetric correction)")
    for m in (8, 16):
        rep = build_wfar_unear(m).report
        print(f"  m={m}  touched fraction {rep['nonzero_fraction']} (<= {rep['off_band_fraction']}), "
              f"N = {rep['N']}, checks: band={rep['band_zero']} upper={rep['w_upper_ok']} "
              f"lower={rep['w_lower_ok']} w_levels={rep['w_levels_consistent']}")


if __name__ == "__main__":
    main()
