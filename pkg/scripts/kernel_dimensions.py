"""Tabulate graded kernel dimensions of S0, S1, S2 against the weight-piece size."""
import argparse

from lisbon.exactpoly import partitions_count
from lisbon.systems import graded_kernel, operator_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--max-w", type=int, default=8)
    args = ap.parse_args()
    ws = range(args.max_w + 1)
    print("k  system  " + " ".join(f"w={w:<2}" for w in ws))
    for k in args.k:
        print(f"{k}  piece   " + " ".join(f"{partitions_count(w, k):<4}" for w in ws))
        for name in ("S0", "S1", "S2"):
            sys = operator_system(name, k)
            dims = [graded_kernel(sys, w).dim for w in ws]
            print(f"{k}  {name:<6}  " + " ".join(f"{d:<4}" for d in dims))


if __name__ == "__main__":
    main()
