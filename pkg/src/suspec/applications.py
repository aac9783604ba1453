"""Cuspidal cohomology bounds and the rationality of sqrt|D| L(2n+1) / (2 pi)^(2n+1)."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .dirichlet import QuadraticField, t_ell
from .exact_arith import SymbolicReal, bernoulli, is_rational, to_float
from .lfunctions import l_odd_exact, lambda_p_closed, l_value_negative_exact
from .su_spectrum import ErrorInputs, HCParam, IntegralityWarning, multiplicity, validate

__all__ = [
    "CohomologyBound",
    "RationalityReport",
    "gk_cohomology_dim",
    "cusp_cohomology_lower_bound",
    "rationality_lhs",
    "rationality_rhs",
    "rationality_report",
    "tau_product_ratio",
    "staircase_pair",
    "remark_closed_form",
    "random_admissible_pair",
    "check_pair_params",
]


def gk_cohomology_dim(n: int, degree: int, coefficient_matches: bool) -> int:
    """dim H^i(g, K; pi_tau (x) F) for cohomological pi_tau."""
    if n < 3 or not 0 <= degree <= 2 * n:
        raise ValueError(f"need n >= 3 and 0 <= i <= 2n, got n={n}, i={degree}")
    return int(coefficient_matches and degree == n)


@dataclass(frozen=True)
class CohomologyBound:
    """Lower bound for dim H^n_cusp: main term minus the even-n defect (when known)."""

    main_term: SymbolicReal
    defect: Optional[float]
    exact: Optional[Fraction]
    note: Optional[str] = None

    @property
    def lower_bound(self) -> float:
        main = float(to_float(self.main_term, 128))
        return main - (self.defect or 0.0)

    def to_json(self) -> dict:
        return {
            "main_term": self.main_term.to_json(),
            "main_term_float": mpmath.nstr(to_float(self.main_term, 128), 15),
            "exact": None if self.exact is None else str(self.exact),
            "defect": self.defect,
            "lower_bound": self.lower_bound,
            "note": self.note,
        }


def cusp_cohomology_lower_bound(
    fld: QuadraticField,
    n: int,
    tau: HCParam,
    h_m: int,
    err_inputs: Optional[ErrorInputs] = None,
) -> CohomologyBound:
    flags = validate(tau)
    if not (flags.integrable and flags.cohomological):
        raise ValueError(f"tau = ({tau}) must be integrable and cohomological")
    res = multiplicity(fld, n, tau, h_m, err_inputs)
    note = None
    if n % 2 == 0 and res.error_bound is None:
        note = "bound requires C"
    return CohomologyBound(res.main_term, res.error_bound, res.exact, note)


# ---------------------------------------------------------------------------
# rationality


def rationality_lhs(fld: QuadraticField, n: int) -> Fraction:
    """sqrt|D| L(2n+1) / (2 pi)^(2n+1) as an exact rational."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = 2 * n + 1
    val = l_odd_exact(fld, s) * SymbolicReal(Fraction(1, 2**s), pi_exp=-s)
    val = val * SymbolicReal.sqrt_abs_disc(fld, 1)
    q = is_rational(val)
    if q is None:
        raise ArithmeticError(f"failed to fold {val}")
    return q


def check_pair_params(n: int, tau1: HCParam, tau2: HCParam) -> None:
    """Raise unless (tau1, tau2) meet the shape and integrability conditions of the identity."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if tau1.n != 2 * n - 1 or tau2.n != 2 * n + 1:
        raise ValueError(f"need tau1 of length {2 * n - 1} and tau2 of length {2 * n + 1}")
    if tau1.taus != tau2.taus[: 2 * n - 1]:
        raise ValueError("tau1 must agree with the first 2n-1 entries of tau2")
    if not validate(tau1).integrable or not validate(tau2).integrable:
        raise ValueError("tau1 and tau2 must both be integrable")


def tau_product_ratio(n: int, tau1: HCParam, tau2: HCParam) -> Fraction:
    """prod_{i<2n} (t1_i - t1_2n) / prod_{i<j<=2n+2, j>=2n} (t2_i - t2_j)."""
    t1, t2 = tau1.full, tau2.full
    if len(t1) != 2 * n or len(t2) != 2 * n + 2:
        raise ValueError("tau lengths do not match n")
    num = math.prod(t1[i] - t1[2 * n - 1] for i in range(2 * n - 1))
    den = math.prod(
        t2[i] - t2[j] for j in range(2 * n - 1, 2 * n + 2) for i in range(j)
    )
    if num == 0 or den == 0:
        raise ValueError("degenerate tau: repeated coordinates")
    return Fraction(num, den)


def _lambda_product(fld: QuadraticField, dim: int) -> Fraction:
    return math.prod((lambda_p_closed(p, dim) for p in t_ell(fld, dim)), start=Fraction(1))


def rationality_rhs(
    fld: QuadraticField,
    n: int,
    tau1: HCParam,
    tau2: HCParam,
    h1: int,
    h2: int,
    m1: int = 3,
    m2: int = 3,
    as_printed: bool = False,
) -> Fraction:
    """Right-hand side of the rationality identity, built from the two multiplicities.

    With ``as_printed`` the discriminant enters as |D|^(2n) exactly as the
    identity is usually displayed; the default uses |D|^(-2n), which is what
    dividing the two multiplicity formulas actually produces.
    """
    check_pair_params(n, tau1, tau2)
    if m1 < 3 or m2 < 3:
        raise ValueError("congruence levels must be >= 3")
    mult1 = multiplicity(fld, 2 * n - 1, tau1, h1).exact
    mult2 = multiplicity(fld, 2 * n + 1, tau2, h2).exact
    f = Fraction(fld.abs_disc)
    d_power = f ** (2 * n) if as_printed else f ** (-2 * n)
    sign_b = (-1) ** n * bernoulli(2 * n + 2)
    return (
        mult2
        / mult1
        * Fraction(32 * h1, h2)
        * tau_product_ratio(n, tau1, tau2)
        * _lambda_product(fld, 2 * n - 1)
        / _lambda_product(fld, 2 * n + 1)
        * d_power
        * math.factorial(2 * n + 2)
        / sign_b
    )


@dataclass(frozen=True)
class RationalityReport:
    k: int
    n: int
    lhs: Fraction
    rhs: Fraction
    rhs_as_printed: Fraction
    tau1: HCParam
    tau2: HCParam
    h1: int
    h2: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    @property
    def printed_ratio(self) -> Fraction:
        return self.rhs_as_printed / self.lhs

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "tau1": list(self.tau1.taus),
            "tau2": list(self.tau2.taus),
            "h1": self.h1,
            "h2": self.h2,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "rhs_as_printed": str(self.rhs_as_printed),
            "printed_over_lhs": str(self.printed_ratio),
        }


def rationality_report(
    fld: QuadraticField,
    n: int,
    tau1: Optional[HCParam] = None,
    tau2: Optional[HCParam] = None,
    h1: int = 1,
    h2: int = 1,
) -> RationalityReport:
    if tau1 is None or tau2 is None:
        tau1, tau2 = staircase_pair(n)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegralityWarning)
        rhs = rationality_rhs(fld, n, tau1, tau2, h1, h2)
        printed = rationality_rhs(fld, n, tau1, tau2, h1, h2, as_printed=True)
    return RationalityReport(fld.k, n, rationality_lhs(fld, n), rhs, printed, tau1, tau2, h1, h2)


def lhs_bernoulli_check(fld: QuadraticField, n: int) -> bool:
    """|D|^(2n) * 2 (2n)! * lhs == +-L(-2n, chi)."""
    lhs = rationality_lhs(fld, n)
    scaled = Fraction(fld.abs_disc) ** (2 * n) * 2 * math.factorial(2 * n) * lhs
    return abs(scaled) == abs(l_value_negative_exact(fld, n))


# ---------------------------------------------------------------------------
# the staircase parameters tau_i = 2n + 2 - i


def staircase_pair(n: int) -> tuple[HCParam, HCParam]:
    tau1 = HCParam([2 * n + 2 - i for i in range(1, 2 * n)])
    tau2 = HCParam([2 * n + 2 - i for i in range(1, 2 * n + 2)])
    return tau1, tau2


def remark_closed_form(n: int) -> Fraction:
    """A simplified closed form for the staircase tau-product (reported next to the direct product)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    a = 2 * n * n + 5 * n
    prod = math.prod(
        (Fraction(a - i, a + 3 - i) for i in range(1, 2 * n)), start=Fraction(1)
    )
    return prod / (math.factorial(2 * n - 1) * math.factorial(2 * n) * (2 * n * n + 3 * n + 2))


def random_admissible_pair(n: int, rng: random.Random, spread: int = 6) -> tuple[HCParam, HCParam]:
    """Random (tau1, tau2) satisfying check_pair_params, by rejection sampling."""
    while True:
        top = [rng.randint(1, spread) for _ in range(2 * n + 1)]
        vals = []
        cur = rng.randint(2 * n + 4, 2 * n + 4 + spread * 2)
        for step in top:
            vals.append(cur)
            cur -= step
        tau2 = HCParam(vals)
        tau1 = HCParam(vals[: 2 * n - 1])
        try:
            check_pair_params(n, tau1, tau2)
        except ValueError:
            continue
        return tau1, tau2
