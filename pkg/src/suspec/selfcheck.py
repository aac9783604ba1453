"""The acceptance suites as plain functions returning a pass/fail record.

Each suite is self-contained and deterministic (randomized parts use a
fixed seed). ``run_all`` is what the ``selfcheck`` command and the
acceptance tests execute.
"""

from __future__ import annotations

import math
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import applications as app
from .dirichlet import (
    PrimeClass,
    classify_prime,
    gauss_sum_numeric,
    hilbert_symbol,
    hilbert_symbol_infinity,
    is_local_norm,
    kronecker,
    make_field,
    primes_up_to,
    t_ell,
)
from .exact_arith import SymbolicReal, is_rational, to_float
from .lfunctions import (
    euler_factor_closed,
    euler_factor_orders,
    euler_product_numeric,
    functional_equation_residual,
    l_numeric,
    l_odd_exact,
    lambda_p_closed,
    lambda_p_orders,
    z_product_numeric,
    zeta_even_exact,
)
from .su_spectrum import (
    ComplexRational,
    HCParam,
    HeisenbergElement,
    IntegralityWarning,
    conj_transpose,
    covolume,
    formal_degree,
    heisenberg_matrix,
    heisenberg_mul,
    hermitian_form,
    multiplicity,
    s_exponent,
)

__all__ = ["CheckResult", "SUITES", "run_all", "run_suite"]

FIELDS = (1, 2, 3, 5, 7, 11)
SEED = 20240607


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    elapsed: float
    limit: float
    details: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed and self.elapsed <= self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "" if self.elapsed <= self.limit else " (over time limit)"
        return f"[{status}] {self.number:2d} {self.name} ({self.elapsed:.2f}s / {self.limit:g}s){extra}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.ok,
            "elapsed_s": round(self.elapsed, 3),
            "limit_s": self.limit,
            "details": self.details,
        }


def _rel(a, b) -> mpmath.mpf:
    return abs(mpmath.mpf(a) - mpmath.mpf(b)) / abs(mpmath.mpf(b))


# ---------------------------------------------------------------------------
# suites; each returns (passed, details)


def check_zeta() -> tuple[bool, list[str]]:
    ok = True
    details = []
    ok &= zeta_even_exact(2) == SymbolicReal(Fraction(1, 6), pi_exp=2)
    ok &= zeta_even_exact(4) == SymbolicReal(Fraction(1, 90), pi_exp=4)
    for s in (2, 4, 6, 8, 10, 12):
        with mpmath.workprec(128):
            # partial sum to N plus the Euler-Maclaurin tail N^(1-s)/(s-1) - N^(-s)/2
            n_terms = 2000
            partial = mpmath.fsum(mpmath.mpf(k) ** -s for k in range(1, n_terms + 1))
            tail = mpmath.mpf(n_terms) ** (1 - s) / (s - 1) - mpmath.mpf(n_terms) ** -s / 2
            tail += s * mpmath.mpf(n_terms) ** (-s - 1) / 12
            err = _rel(to_float(zeta_even_exact(s), 128), partial + tail)
        details.append(f"zeta({s}) rel err {mpmath.nstr(err, 3)}")
        ok &= err < 1e-12
    return ok, details


def check_l_odd() -> tuple[bool, list[str]]:
    ok = l_odd_exact(make_field(1), 3) == SymbolicReal(Fraction(1, 32), pi_exp=3)
    details = [f"L(3, chi_-4) = {l_odd_exact(make_field(1), 3)}"]
    worst = mpmath.mpf(0)
    for k in FIELDS:
        fld = make_field(k)
        for s in (3, 5, 7):
            exact = to_float(l_odd_exact(fld, s), 128)
            err = _rel(l_numeric(fld, s, 96, tol=1e-13), exact)
            worst = max(worst, err)
    details.append(f"worst rel err {mpmath.nstr(worst, 3)}")
    return ok and worst < 1e-10, details


def check_lambda() -> tuple[bool, list[str]]:
    bad = [
        (p, n)
        for p in (2, 3, 5, 7, 11)
        for n in (3, 5, 7, 9)
        if lambda_p_orders(p, n) != Fraction(p ** (n + 1) - 1, p + 1)
    ]
    return not bad, [f"mismatches: {bad}"] if bad else ["20 (p, n) pairs agree"]


def check_euler() -> tuple[bool, list[str]]:
    seen = {c: 0 for c in PrimeClass}
    skipped = 0
    bad = []
    for k in FIELDS:
        fld = make_field(k)
        for p in primes_up_to(13):
            for n in (3, 4, 5, 6):
                via = euler_factor_orders(fld, p, n)
                if via is None:
                    skipped += 1
                    continue
                seen[classify_prime(fld, p)] += 1
                if via != euler_factor_closed(fld, p, n):
                    bad.append((k, p, n))
    fld = make_field(1)
    prod = euler_product_numeric(fld, 3, 10**4)
    z = z_product_numeric(fld, 3)
    err = _rel(prod, z)
    details = [
        "exact matches per class: " + ", ".join(f"{c}={v}" for c, v in seen.items()),
        f"order route skipped (SO_odd at p=2): {skipped}",
        f"prod_(p<=10^4) vs prod Z(s), k=1 n=3: rel err {mpmath.nstr(err, 3)}",
    ]
    if bad:
        details.append(f"mismatches: {bad}")
    return not bad and all(seen.values()) and err < 1e-3, details


def covolume_numeric(k: int, n: int) -> mpmath.mpf:
    """Covolume with each Z(s) evaluated numerically (mpmath zeta, direct L-series)."""
    fld = make_field(k)
    zs = [
        mpmath.zeta(s) if s % 2 == 0 else l_numeric(fld, s, 96, tol=1e-12)
        for s in range(2, n + 2)
    ]
    with mpmath.workprec(128):
        e = s_exponent(n)
        v = mpmath.pi**n * mpmath.mpf(fld.abs_disc) ** (mpmath.mpf(e.numerator) / e.denominator)
        for i in range(1, n + 1):
            v *= math.factorial(i - 1) / (2 * mpmath.pi) ** (i + 1)
        v *= mpmath.fprod(zs)
        if n % 2:
            for p in t_ell(fld, n):
                v *= float(lambda_p_closed(p, n))
    return v


def check_covolume() -> tuple[bool, list[str]]:
    ok = covolume(make_field(1), 3) == SymbolicReal(Fraction(1, 27648), pi_exp=3)
    err = _rel(covolume_numeric(1, 3), to_float(covolume(make_field(1), 3), 128))
    details = [f"numeric cross-check k=1 n=3: rel err {mpmath.nstr(err, 3)}"]
    ok &= err < 1e-6
    for k in FIELDS:
        for n in range(3, 9):
            v = covolume(make_field(k), n)
            if v.pi_exp != n or v.sqrtD_exp % 2 or v.folded().sqrtD_exp:
                ok = False
                details.append(f"bad shape at k={k} n={n}: {v}")
    return ok, details


def check_multiplicity() -> tuple[bool, list[str]]:
    details = []
    ok = multiplicity(make_field(1), 3, HCParam([3, 2, 1]), 24576).exact == 7
    swept = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegralityWarning)
        for k in FIELDS:
            fld = make_field(k)
            for n in (3, 5, 7):
                for shift in (0, 1, 3):
                    tau = HCParam([n - i + shift for i in range(n)])
                    ref = formal_degree(tau) * covolume(fld, n)
                    r1 = multiplicity(fld, n, tau, 1)
                    r5 = multiplicity(fld, n, tau, 5)
                    swept += 1
                    ok &= r1.exact is not None and r1.exact == is_rational(ref)
                    ok &= r5.exact == 5 * r1.exact
    details.append(f"example (k=1, n=3, tau=(3,2,1), h=24576) -> 7; {swept} inputs swept")
    return ok, details


def check_rationality() -> tuple[bool, list[str]]:
    rng = random.Random(SEED)
    ok = True
    details = []
    for n in (2, 3):
        pairs = [app.staircase_pair(n), app.random_admissible_pair(n, rng)]
        for k in (1, 2, 3, 5, 7):
            fld = make_field(k)
            for tau1, tau2 in pairs:
                h1, h2 = rng.randint(1, 10**6), rng.randint(1, 10**6)
                rep = app.rationality_report(fld, n, tau1, tau2, h1, h2)
                ok &= rep.equal
                ok &= app.lhs_bernoulli_check(fld, n)
                if not rep.equal:
                    details.append(f"mismatch k={k} n={n} tau2=({tau2}): {rep.lhs} vs {rep.rhs}")
        details.append(f"n={n}: random pair tau2=({pairs[1][1]})")
    return ok, details


def check_functional_equation() -> tuple[bool, list[str]]:
    worst = 0.0
    for k in (1, 2, 3):
        for s in (3, 5):
            worst = max(worst, functional_equation_residual(make_field(k), s, 96))
    return worst < 1e-8, [f"worst residual {worst:.3g}"]


def check_gauss() -> tuple[bool, list[str]]:
    ok = True
    details = []
    for k in FIELDS + (13,):
        fld = make_field(k)
        g = gauss_sum_numeric(fld, 96)
        good = abs(abs(g) ** 2 - fld.abs_disc) < 1e-9 and abs(g.real) < 1e-9
        ok &= good
        details.append(f"k={k}: G/(i sqrt|D|) = {mpmath.nstr(g.imag / mpmath.sqrt(fld.abs_disc), 6)}")
    return ok, details


def _random_element(n: int, rng: random.Random) -> HeisenbergElement:
    def q() -> Fraction:
        return Fraction(rng.randint(-9, 9), rng.randint(1, 7))

    return HeisenbergElement(tuple(ComplexRational(q(), q()) for _ in range(n - 1)), q())


def _integral(m) -> tuple[int, list[list[tuple[int, int]]]]:
    """(L, L*m) with L*m a matrix of Gaussian integers stored as (re, im) pairs."""
    lcm = 1
    for row in m:
        for z in row:
            lcm = math.lcm(lcm, z.re.denominator, z.im.denominator)
    return lcm, [[(int(z.re * lcm), int(z.im * lcm)) for z in row] for row in m]


def _int_mul(a, b) -> list[list[tuple[int, int]]]:
    size, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(size):
        row = []
        for j in range(cols):
            re = im = 0
            for k in range(inner):
                x, y = a[i][k]
                if x or y:
                    u, v = b[k][j]
                    re += x * u - y * v
                    im += x * v + y * u
            row.append((re, im))
        out.append(row)
    return out


def _scale(m, c: int) -> list[list[tuple[int, int]]]:
    return [[(x * c, y * c) for x, y in row] for row in m]


def check_heisenberg() -> tuple[bool, list[str]]:
    """Exact checks after clearing denominators (integer arithmetic keeps this fast)."""
    rng = random.Random(SEED)
    ok = True
    for n in (3, 4, 5):
        _, s_int = _integral(hermitian_form(n))
        for _ in range(100):
            a, b = _random_element(n, rng), _random_element(n, rng)
            la, ma = _integral(heisenberg_matrix(a))
            lb, mb = _integral(heisenberg_matrix(b))
            lab, mab = _integral(heisenberg_matrix(heisenberg_mul(a, b)))
            # M(a) M(b) = M(ab)  <=>  (la ma)(lb mb) * lab = (lab mab) * la * lb
            ok &= _scale(_int_mul(ma, mb), lab) == _scale(mab, la * lb)
            # M(a)^* S M(a) = S
            _, mah = _integral(conj_transpose(heisenberg_matrix(a)))
            ok &= _int_mul(_int_mul(mah, s_int), ma) == _scale(s_int, la * la)
    return ok, ["100 random pairs for each n in {3, 4, 5}"]


def check_closed_form() -> tuple[bool, list[str]]:
    details = []
    for n in (2, 3, 4, 5):
        t1, t2 = app.staircase_pair(n)
        direct = app.tau_product_ratio(n, t1, t2)
        stated = app.remark_closed_form(n)
        details.append(
            f"n={n}: direct {direct}, closed form {stated}, ratio {stated / direct}"
            f" (2n^2+3n+3 = {2 * n * n + 3 * n + 3})"
        )
    ok = all(app.rationality_report(make_field(k), n).equal for n in (2, 3) for k in (1, 2, 3, 5, 7))
    return ok, details


def check_characters() -> tuple[bool, list[str]]:
    ok = True
    for k in FIELDS + (13,):
        fld = make_field(k)
        f = fld.abs_disc
        ok &= kronecker(fld, -1) == -1
        ok &= sum(kronecker(fld, a) for a in range(1, f + 1)) == 0
        for m in range(-30, 31):
            ok &= kronecker(fld, m) == kronecker(fld, m + f)
            for n in range(-30, 31):
                ok &= kronecker(fld, m * n) == kronecker(fld, m) * kronecker(fld, n)
        for p in primes_up_to(60):
            ok &= (classify_prime(fld, p) is PrimeClass.RAMIFIED) == (f % p == 0)
            if p > 2 and f % p:
                ok &= is_local_norm(fld, p, -1)
    grid = (1, -1, 2, -2, 3, -3, 5, -5)
    big_primes = primes_up_to(100)
    for a in grid:
        for b in grid:
            for p in (2, 3, 5, 7):
                ok &= hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)
                for b2 in grid:
                    ok &= hilbert_symbol(a, b * b2, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, b2, p)
            prod = hilbert_symbol_infinity(a, b)
            for p in big_primes:
                prod *= hilbert_symbol(a, b, p)
            ok &= prod == 1
    return ok, ["characters for 7 fields; Hilbert grid {+-1,+-2,+-3,+-5}"]


SUITES: list[tuple[int, str, float, Callable[[], tuple[bool, list[str]]]]] = [
    (1, "exact zeta values", 1.0, check_zeta),
    (2, "exact odd L values", 5.0, check_l_odd),
    (3, "lambda_p dual route", 1.0, check_lambda),
    (4, "Euler factor identity", 10.0, check_euler),
    (5, "covolume", 10.0, check_covolume),
    (6, "multiplicity exactness (n odd)", 1.0, check_multiplicity),
    (7, "rationality identity", 5.0, check_rationality),
    (8, "functional equation residual", 5.0, check_functional_equation),
    (9, "Gauss sums", 1.0, check_gauss),
    (10, "Heisenberg homomorphism", 2.0, check_heisenberg),
    (11, "closed-form stress test", 1.0, check_closed_form),
    (12, "character and Hilbert properties", 2.0, check_characters),
]


def run_suite(number: int) -> CheckResult:
    for num, name, limit, fn in SUITES:
        if num == number:
            start = time.perf_counter()
            try:
                passed, details = fn()
            except Exception as exc:  # a crash is a failure, reported not raised
                passed, details = False, [f"{type(exc).__name__}: {exc}"]
            return CheckResult(num, name, bool(passed), time.perf_counter() - start, limit, details)
    raise ValueError(f"no acceptance suite numbered {number}")


def run_all() -> list[CheckResult]:
    return [run_suite(num) for num, *_ in SUITES]
