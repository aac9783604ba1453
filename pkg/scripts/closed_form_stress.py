"""Compare the direct tau-product for tau_i = 2n + 2 - i with the simplified closed form.

The direct product is what enters the rationality identity; the closed form
is reported alongside it together with their ratio.
"""

import argparse

from suspec.applications import rationality_report, remark_closed_form, staircase_pair, tau_product_ratio
from suspec.dirichlet import make_field


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    args = ap.parse_args(argv)
    print(f"{'n':>3} {'direct':>28} {'closed form':>28} {'ratio':>7} {'2n^2+3n+3':>10} identity")
    for n in range(2, args.nmax + 1):
        t1, t2 = staircase_pair(n)
        direct = tau_product_ratio(n, t1, t2)
        closed = remark_closed_form(n)
        ok = all(rationality_report(make_field(k), n).equal for k in (1, 2, 3, 5, 7))
        print(f"{n:>3} {str(direct):>28} {str(closed):>28} {str(closed / direct):>7} {2 * n * n + 3 * n + 3:>10} {ok}")


if __name__ == "__main__":
    main()
