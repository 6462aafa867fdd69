"""Exhibit weight-m polynomials killed by U-1^m.

U-1 lowers weight by one, so U-1^m sends the weight-m piece into the
constants.  Whenever that piece has dimension > 1 the map has a kernel; the
script prints one element of it and confirms U-1^m sends it to zero.  It also
shows that on solutions of S2 the map stays injective.
"""
import argparse

from lisbon.exactpoly import SigmaPoly
from lisbon.systems import operator_system, u_minus1_injectivity
from lisbon.weyl import Um1_op, weyl_apply


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--max-m", type=int, default=6)
    args = ap.parse_args()
    k = args.k
    U = Um1_op(k)
    for m in range(1, args.max_m + 1):
        full = u_minus1_injectivity(k, m)
        on_s2 = u_minus1_injectivity(k, m, within=operator_system("S2", k))
        line = f"m={m}: dim={full.params['dim']} rank={full.params['rank']} on S2 solutions: {'injective' if on_s2.passed else 'NOT injective'}"
        if full.details["kernel"]:
            g = SigmaPoly.parse(full.details["kernel"][0], k)
            img = g
            for _ in range(m):
                img = weyl_apply(U, img)
            line += f"\n    U-1^{m}[{g}] = {img}"
        print(line)


if __name__ == "__main__":
    main()
