"""Exact values of sqrt|D| L(2n+1, chi_D) / (2 pi)^(2n+1), checked against the multiplicity ratio.

Also prints the factor by which the right-hand side changes when |D| enters
with exponent +2n instead of -2n.
"""

import argparse

from suspec.applications import rationality_report
from suspec.dirichlet import make_field


def _ints(text):
    return [int(t) for t in text.split(",")]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=_ints, default=[1, 2, 3, 5, 7, 11, 13])
    ap.add_argument("--n", type=_ints, default=[2, 3, 4])
    args = ap.parse_args(argv)
    print(f"{'k':>3} {'n':>2} {'lhs':>30} {'rhs == lhs':>10} {'(+2n variant)/lhs':>20}")
    for k in args.k:
        for n in args.n:
            rep = rationality_report(make_field(k), n)
            print(f"{k:>3} {n:>2} {str(rep.lhs):>30} {str(rep.equal):>10} {str(rep.printed_ratio):>20}")


if __name__ == "__main__":
    main()
