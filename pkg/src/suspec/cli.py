"""Command-line front end.

Every subcommand builds one record (a dict) and renders it as JSON, CSV or
plain ``key: value`` lines. Exit codes: 0 success, 1 bad input, 2 a
verified identity failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Optional, Sequence

import mpmath

from . import applications as app
from . import selfcheck
from .dirichlet import classify_prime, gauss_sum_sign, make_field, primes_up_to, t_ell
from .exact_arith import SymbolicReal, to_float
from .lfunctions import euler_product_numeric, l_numeric, l_odd_exact, z_product_numeric, zeta_even_exact
from .su_spectrum import (
    ErrorInputs,
    HCParam,
    IntegralityWarning,
    conj_transpose,
    covolume,
    heisenberg_matrix,
    heisenberg_mul,
    hermitian_form,
    mat_mul,
    multiplicity,
)

FORMATS = ("json", "csv", "human")


@dataclass(frozen=True)
class Config:
    precision_bits: int = 256
    prime_bound: int = 10**4
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.precision_bits < 64:
            raise ValueError(f"precision_bits must be >= 64, got {self.precision_bits}")
        if self.prime_bound < 100:
            raise ValueError(f"prime_bound must be >= 100, got {self.prime_bound}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")

    @classmethod
    def from_env(cls, environ=None) -> "Config":
        env = os.environ if environ is None else environ
        kwargs = {}
        for var, key in (("SUSPEC_PRECISION_BITS", "precision_bits"), ("SUSPEC_PRIME_BOUND", "prime_bound")):
            if var in env:
                try:
                    kwargs[key] = int(env[var])
                except ValueError:
                    raise ValueError(f"{var} must be an integer, got {env[var]!r}") from None
        return cls(**kwargs)


class UsageError(Exception):
    pass


class IdentityFailure(Exception):
    """Raised with the record to print when a checked identity does not hold."""

    def __init__(self, record: dict):
        super().__init__("identity failure")
        self.record = record


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# output


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for key, val in record.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            out.update(_flatten(val, name + "."))
        elif isinstance(val, (list, tuple)):
            out[name] = ";".join(str(v) for v in val)
        else:
            out[name] = "" if val is None else val
    return out


def render(record: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, separators=(",", ":"))
    rows = record if isinstance(record, list) else [record]
    flat = [_flatten(r) for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        header = list(dict.fromkeys(k for r in flat for k in r))
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue().rstrip("\n")
    blocks = ["\n".join(f"{k}: {v}" for k, v in r.items()) for r in flat]
    return "\n\n".join(blocks)


def _fmt_float(x, digits: int = 15) -> str:
    return mpmath.nstr(x, digits)


def _sym_record(v: SymbolicReal, bits: int) -> dict:
    rec = v.to_json()
    rec["float"] = _fmt_float(to_float(v, bits))
    return rec


# ---------------------------------------------------------------------------
# argument helpers


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _tau(text: str) -> HCParam:
    try:
        return HCParam(_int_list(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_field(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    rec = fld.to_json()
    rec["gauss_sign"] = gauss_sum_sign(fld)
    rec["primes"] = {str(p): str(classify_prime(fld, p)) for p in primes_up_to(args.primes)}
    rec["T"] = {str(n): t_ell(fld, n) for n in range(3, 10)}
    return rec


def cmd_lvalue(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    bits = args.numeric_bits or cfg.precision_bits
    exact = l_odd_exact(fld, args.s)
    numeric = l_numeric(fld, args.s, bits, tol=1e-15)
    return {
        "k": args.k,
        "s": args.s,
        "exact": exact.to_json(),
        "exact_float": _fmt_float(to_float(exact, bits)),
        "numeric": _fmt_float(numeric),
    }


def cmd_zeta(args, cfg: Config) -> dict:
    return _sym_record(zeta_even_exact(args.s), cfg.precision_bits)


def cmd_volume(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    vol = covolume(fld, args.n)
    if not args.check:
        return vol.to_json() if cfg.output_format == "json" else _sym_record(vol, cfg.precision_bits)
    exact_z = z_product_numeric(fld, args.n, cfg.precision_bits)
    euler = euler_product_numeric(fld, args.n, cfg.prime_bound)
    return {
        "covolume": _sym_record(vol, cfg.precision_bits),
        "prime_bound": cfg.prime_bound,
        "z_product_exact": _fmt_float(exact_z),
        "z_product_euler": _fmt_float(euler),
        "rel_err": _fmt_float(abs(euler - exact_z) / exact_z, 3),
    }


def _err_inputs(args) -> Optional[ErrorInputs]:
    extras = (args.C, args.kappa, args.dime, args.cuspvol)
    if args.m is None:
        if any(v is not None for v in extras):
            raise ValueError("--m is required with --C/--kappa/--dime/--cuspvol")
        return None
    if args.C is None and args.kappa is None and args.cuspvol is None:
        return None
    return ErrorInputs(args.m, C=args.C, kappa_abs=args.kappa, dim_E=args.dime, sum_cusp_vol=args.cuspvol)


def cmd_multiplicity(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegralityWarning)
        res = multiplicity(fld, args.n, args.tau, args.h, _err_inputs(args))
    rec = res.to_json()
    rec["k"] = args.k
    rec["tau"] = list(args.tau.taus)
    if caught:
        rec["warnings"] = [str(w.message) for w in caught]
    return rec


def cmd_cohomology(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegralityWarning)
        bound = app.cusp_cohomology_lower_bound(fld, args.n, args.tau, args.h, _err_inputs(args))
    rec = bound.to_json()
    rec.update({"k": args.k, "n": args.n, "tau": list(args.tau.taus), "h": args.h})
    return rec


def cmd_rationality(args, cfg: Config) -> dict:
    fld = make_field(args.k)
    if (args.tau1 is None) != (args.tau2 is None):
        raise ValueError("give both --tau1 and --tau2 or neither")
    rep = app.rationality_report(fld, args.n, args.tau1, args.tau2, args.h1, args.h2)
    rec = rep.to_json()
    rec["lhs_float"] = _fmt_float(mpmath.mpf(rep.lhs.numerator) / rep.lhs.denominator)
    if not rep.equal:
        raise IdentityFailure(rec)
    return rec


def cmd_heisenberg(args, cfg: Config) -> dict:
    rng = random.Random(args.seed)
    failures = 0
    s = hermitian_form(args.n)
    for _ in range(args.trials):
        a = selfcheck._random_element(args.n, rng)
        b = selfcheck._random_element(args.n, rng)
        ma = heisenberg_matrix(a)
        hom = mat_mul(ma, heisenberg_matrix(b)) == heisenberg_matrix(heisenberg_mul(a, b))
        form = mat_mul(mat_mul(conj_transpose(ma), s), ma) == s
        failures += not (hom and form)
    rec = {"n": args.n, "trials": args.trials, "seed": args.seed, "failures": failures}
    if failures:
        raise IdentityFailure(rec)
    return rec


def cmd_selfcheck(args, cfg: Config) -> list:
    numbers = args.only or [num for num, *_ in selfcheck.SUITES]
    results = [selfcheck.run_suite(num) for num in numbers]
    rows = [r.to_json() for r in results]
    if cfg.output_format == "human":
        text = "\n".join(r.line() for r in results)
        rows = [{"summary": text}]
    if not all(r.ok for r in results):
        raise IdentityFailure(rows)
    return rows


def _sweep_row(bits: int, k: int, n: int, tau: HCParam, h: int) -> dict:
    fld = make_field(k)
    vol = covolume(fld, n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegralityWarning)
        res = multiplicity(fld, n, tau, h)
    main = res.main_term
    return {
        "k": k,
        "n": n,
        "tau": ",".join(map(str, tau.taus)),
        "h": h,
        "covolume_exact": str(vol.folded()),
        "covolume_float": _fmt_float(to_float(vol, bits)),
        "multiplicity_exact": str(res.exact) if res.exact is not None else str(main.folded()),
        "multiplicity_float": _fmt_float(to_float(main, bits)),
    }


def sweep(
    ks: Sequence[int],
    ns: Sequence[int],
    shifts: Sequence[int],
    hs: Sequence[int],
    bits: int = 256,
    workers: int = 1,
) -> list[dict]:
    """Rows for the staircase family tau_i = n + 1 - i + shift, ordered by (k, n, tau, h)."""
    tasks = []
    for k in sorted(set(ks)):
        for n in sorted(set(ns)):
            taus = sorted({tuple(n - i + sh for i in range(n)) for sh in shifts})
            for t in taus:
                for h in sorted(set(hs)):
                    tasks.append((k, n, HCParam(t), h))
    for k, n, _, h in tasks:
        make_field(k)
        if n < 3 or h < 1:
            raise ValueError(f"sweep needs n >= 3 and h >= 1, got n={n}, h={h}")
    if workers <= 1:
        return [_sweep_row(bits, *t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: _sweep_row(bits, *t), tasks))


def cmd_sweep(args, cfg: Config) -> list:
    return sweep(args.k, args.n, args.shift, args.h, cfg.precision_bits, args.workers)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--precision-bits", type=int, default=None)
    common.add_argument("--prime-bound", type=int, default=None)

    p = _Parser(prog="suspec", description="Exact volumes, multiplicities and L-values for SU(n,1).")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    q = add("field", "discriminant, prime splitting, T sets and Gauss-sum sign")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--primes", type=int, default=50, help="classify primes up to this bound")
    q.set_defaults(func=cmd_field)

    q = add("lvalue", "exact and numeric L(s, chi_D) for odd s >= 3")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--s", type=int, required=True)
    q.add_argument("--numeric-bits", type=int, default=None)
    q.set_defaults(func=cmd_lvalue)

    q = add("zeta", "exact zeta(s) for even s")
    q.add_argument("--s", type=int, required=True)
    q.set_defaults(func=cmd_zeta)

    q = add("volume", "covolume of the principal arithmetic lattice")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--check", action="store_true", help="add a truncated Euler-product cross-check")
    q.set_defaults(func=cmd_volume)

    for name, func, help_text in (
        ("multiplicity", cmd_multiplicity, "multiplicity main term and error envelope"),
        ("cohomology", cmd_cohomology, "lower bound for cuspidal cohomology in degree n"),
    ):
        q = add(name, help_text)
        q.add_argument("--k", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--tau", type=_tau, required=True, help="comma-separated, e.g. 3,2,1")
        q.add_argument("--h", type=int, required=True, help="index h_m = [Gamma : Gamma(m)]")
        q.add_argument("--m", type=int, default=None)
        q.add_argument("--C", type=float, default=None, help="error constant, overrides the factors")
        q.add_argument("--kappa", type=float, default=None)
        q.add_argument("--dime", type=int, default=None)
        q.add_argument("--cuspvol", type=float, default=None)
        q.set_defaults(func=func)

    q = add("rationality", "check sqrt|D| L(2n+1)/(2 pi)^(2n+1) against the multiplicity ratio")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--tau1", type=_tau, default=None)
    q.add_argument("--tau2", type=_tau, default=None)
    q.add_argument("--h1", type=int, default=1)
    q.add_argument("--h2", type=int, default=1)
    q.set_defaults(func=cmd_rationality)

    q = add("heisenberg-check", "randomized exact homomorphism and form-preservation test")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_heisenberg)

    q = add("selfcheck", "run the acceptance suites")
    q.add_argument("--only", type=_int_list, default=None, help="comma-separated suite numbers")
    q.set_defaults(func=cmd_selfcheck)

    q = add("sweep", "CSV table over k, n, staircase tau shifts and h")
    q.add_argument("--k", type=_int_list, default=[1, 2, 3])
    q.add_argument("--n", type=_int_list, default=[3, 4, 5])
    q.add_argument("--shift", type=_int_list, default=[0])
    q.add_argument("--h", type=_int_list, default=[1])
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_sweep, format_default="csv")
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    old_err = sys.stderr
    sys.stderr = stderr
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    finally:
        sys.stderr = old_err
    fmt = args.format or getattr(args, "format_default", "json")
    try:
        cfg = Config.from_env()
        overrides = {"output_format": fmt}
        if args.precision_bits is not None:
            overrides["precision_bits"] = args.precision_bits
        if args.prime_bound is not None:
            overrides["prime_bound"] = args.prime_bound
        cfg = replace(cfg, **overrides)
        record = args.func(args, cfg)
    except IdentityFailure as fail:
        print(render(fail.record, fmt), file=stdout)
        return 2
    except ArithmeticError as exc:
        print(f"identity failure: {exc}", file=stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    print(render(record, fmt), file=stdout)
    return 0


def cmd_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
