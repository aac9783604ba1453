"""Covolume and multiplicity table over fields, ranks and staircase parameters.

    python3 scripts/run_sweep.py --k 1,2,3,5,7,11 --n 3,4,5,6 --out sweep.csv
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

from suspec.cli import sweep


@dataclass
class SweepConfig:
    ks: list[int] = field(default_factory=lambda: [1, 2, 3, 5, 7, 11])
    ns: list[int] = field(default_factory=lambda: [3, 4, 5, 6])
    shifts: list[int] = field(default_factory=lambda: [0, 1, 2])
    hs: list[int] = field(default_factory=lambda: [1])
    precision_bits: int = 256
    workers: int = 4


def _ints(text):
    return [int(t) for t in text.split(",")]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", type=_ints)
    ap.add_argument("--n", type=_ints)
    ap.add_argument("--shift", type=_ints)
    ap.add_argument("--h", type=_ints)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    cfg = SweepConfig()
    for attr, val in (("ks", args.k), ("ns", args.n), ("shifts", args.shift), ("hs", args.h), ("workers", args.workers)):
        if val is not None:
            setattr(cfg, attr, val)
    rows = sweep(cfg.ks, cfg.ns, cfg.shifts, cfg.hs, cfg.precision_bits, cfg.workers)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
