"""Worst |integral - trace| over a seeded sigma grid, per k and test function."""
import argparse

from lisbon.suites import SuiteConfig, suite_equivalence


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=float, default=5.0)
    args = ap.parse_args()
    cfg = SuiteConfig(ks=tuple(args.k), samples=args.samples, seed=args.seed, bound=args.bound)
    for r in suite_equivalence(cfg):
        print(f"k={r.params['k']} {r.params['f']:<22} {r.check:<34} {r.residual:.2e}")


if __name__ == "__main__":
    main()
