"""Print every bracket of U0 and U-1 with the generators, computed exactly."""
import argparse

from lisbon.weyl import commutator_relations


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=3)
    args = ap.parse_args()
    for name, lhs, rhs in commutator_relations(args.k):
        mark = "ok " if lhs == rhs else "BAD"
        print(f"{mark} {name:<18} = {lhs}")


if __name__ == "__main__":
    main()
