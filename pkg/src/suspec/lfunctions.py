"""Special values of zeta and L(s, chi_D), finite group orders and local factors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .dirichlet import (
    PrimeClass,
    QuadraticField,
    classify_prime,
    gauss_sum_numeric,
    is_prime,
    kronecker,
    primes_up_to,
    t_ell,
)
from .exact_arith import SymbolicReal, bernoulli, bernoulli_poly, to_float

__all__ = [
    "GroupKind",
    "Group",
    "zeta_even_exact",
    "generalized_bernoulli",
    "l_value_negative_exact",
    "l_odd_exact",
    "z_ell",
    "l_numeric",
    "l_tail_terms",
    "functional_equation_residual",
    "group_order",
    "group_dim",
    "euler_factor",
    "euler_factor_closed",
    "euler_factor_orders",
    "lambda_p",
    "lambda_p_closed",
    "lambda_p_orders",
    "euler_product_numeric",
    "z_product_numeric",
]


# ---------------------------------------------------------------------------
# exact special values


def zeta_even_exact(s: int) -> SymbolicReal:
    """zeta(s) = (-1)^(s/2+1) (2 pi)^s B_s / (2 s!) for even s >= 2."""
    if s < 2 or s % 2:
        raise ValueError(f"zeta_even_exact needs even s >= 2, got {s}")
    sign = 1 if (s // 2) % 2 == 1 else -1
    q = sign * Fraction(2**s) * bernoulli(s) / (2 * math.factorial(s))
    return SymbolicReal(q, pi_exp=s)


def generalized_bernoulli(fld: QuadraticField, n: int) -> Fraction:
    """B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f), f = |D|."""
    if n < 1:
        raise ValueError(f"generalized Bernoulli index must be >= 1, got {n}")
    f = fld.abs_disc
    total = Fraction(0)
    for a in range(1, f + 1):
        c = kronecker(fld, a)
        if c:
            total += c * bernoulli_poly(n, Fraction(a, f))
    return Fraction(f) ** (n - 1) * total


def l_value_negative_exact(fld: QuadraticField, m: int) -> Fraction:
    """L(-2m, chi) = -B_{2m+1,chi} / (2m+1)."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    return -generalized_bernoulli(fld, 2 * m + 1) / (2 * m + 1)


def l_odd_exact(fld: QuadraticField, s: int) -> SymbolicReal:
    """L(s, chi) for odd s = 2m+1 >= 3, as q * pi^s * |D|^(-1/2) with q > 0.

    From sqrt|D| L(2m+1)/(2 pi)^(2m+1) = +-(-1)^m L(-2m)/(2 |D|^(2m) (2m)!);
    the sign is fixed by L(s) > 0 for real s > 1.
    """
    if s < 3 or s % 2 == 0:
        raise ValueError(f"l_odd_exact needs odd s >= 3, got {s}")
    m = (s - 1) // 2
    f = fld.abs_disc
    q = l_value_negative_exact(fld, m) / (2 * Fraction(f) ** (2 * m) * math.factorial(2 * m))
    q = abs(q) * 2**s
    if q == 0:
        raise ArithmeticError(f"vanishing L(-{2 * m}) for {fld}")
    return SymbolicReal(q, pi_exp=s, sqrtD_exp=-1, field=fld)


def z_ell(fld: QuadraticField, s: int) -> SymbolicReal:
    """zeta(s) for even s, L(s, chi) for odd s."""
    if s < 2:
        raise ValueError(f"s must be >= 2, got {s}")
    return zeta_even_exact(s) if s % 2 == 0 else l_odd_exact(fld, s)


# ---------------------------------------------------------------------------
# numeric oracles


def l_tail_terms(fld: QuadraticField, s: float, tol: float) -> int:
    """Smallest N with |D| * N^(-s) <= tol.

    Abel summation against partial character sums |A(x)| <= |D|/2 bounds
    the tail past N by 2 * (|D|/2) * N^(-s).
    """
    f = fld.abs_disc
    return max(f, math.ceil((f / tol) ** (1.0 / float(s))))


def l_numeric(
    fld: QuadraticField,
    s,
    precision_bits: int = 128,
    tol: float = 1e-14,
    max_terms: int = 10**7,
) -> mpmath.mpf:
    """L(s, chi) by truncated summation; absolute error <= tol (see l_tail_terms)."""
    if s <= 1:
        raise ValueError(f"l_numeric needs s > 1, got {s}")
    n_terms = l_tail_terms(fld, s, tol)
    if n_terms > max_terms:
        raise ValueError(f"tolerance {tol} at s={s} needs {n_terms} terms (limit {max_terms})")
    f = fld.abs_disc
    chi = [kronecker(fld, a) for a in range(f)]
    with mpmath.workprec(precision_bits + 16):
        ms = mpmath.mpf(s)
        total = mpmath.mpf(0)
        for n in range(1, n_terms + 1):
            c = chi[n % f]
            if c:
                total += c * mpmath.power(n, -ms)
    with mpmath.workprec(precision_bits):
        return +total


def functional_equation_residual(
    fld: QuadraticField, s: int, precision_bits: int = 128
) -> float:
    """Relative mismatch in L(1-s) = f^(s-1) Gamma(s)/(2 pi)^s (e^{-i pi s/2} + chi(-1) e^{i pi s/2}) G L(s).

    LHS comes from generalized Bernoulli numbers, RHS from a numeric Gauss
    sum and the numeric L-series.
    """
    if s < 2:
        raise ValueError(f"s must be >= 2, got {s}")
    f = fld.abs_disc
    lhs_exact = -generalized_bernoulli(fld, s) / s
    gauss = gauss_sum_numeric(fld, precision_bits)
    # at even s the right side vanishes identically, so L(s) only sets the scale
    l_s = l_numeric(fld, s, precision_bits, tol=1e-14 if s % 2 else 1e-6)
    with mpmath.workprec(precision_bits):
        chi_m1 = kronecker(fld, -1)
        phase = mpmath.expjpi(-mpmath.mpf(s) / 2) + chi_m1 * mpmath.expjpi(mpmath.mpf(s) / 2)
        scale = mpmath.mpf(f) ** (s - 1) * mpmath.gamma(s) / (2 * mpmath.pi) ** s
        rhs = scale * phase * gauss * l_s
        lhs = mpmath.mpf(lhs_exact.numerator) / lhs_exact.denominator
        norm = abs(rhs)
        if norm < mpmath.mpf(2) ** (-precision_bits // 2):
            # even s: both sides vanish; compare against the size of the prefactor
            norm = scale * abs(gauss) * l_s
        return float(abs(lhs - rhs) / norm)


# ---------------------------------------------------------------------------
# finite classical groups over F_p


class GroupKind(enum.Enum):
    SL = "SL"
    SU = "SU"
    SP = "Sp"
    SO_ODD = "SO_odd"
    SO2_MINUS = "SO2minus"


@dataclass(frozen=True)
class Group:
    """A finite classical group type with its matrix size m."""

    kind: GroupKind
    m: int = 2

    def __post_init__(self) -> None:
        if self.kind is GroupKind.SP and (self.m % 2 or self.m < 2):
            raise ValueError(f"Sp(m) needs even m >= 2, got {self.m}")
        if self.kind is GroupKind.SO_ODD and (self.m % 2 == 0 or self.m < 1):
            raise ValueError(f"SO_odd(m) needs odd m, got {self.m}")
        if self.kind in (GroupKind.SL, GroupKind.SU) and self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.kind is GroupKind.SO2_MINUS:
            object.__setattr__(self, "m", 2)


def group_dim(g: Group) -> int:
    m = g.m
    if g.kind in (GroupKind.SL, GroupKind.SU):
        return m * m - 1
    if g.kind in (GroupKind.SP, GroupKind.SO_ODD):
        r = m // 2
        return r * (2 * r + 1)
    return 1


def group_order(g: Group, p: int) -> int:
    """|G(F_p)| for the classical group g."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    m = g.m
    if g.kind is GroupKind.SL:
        return p ** (m * (m - 1) // 2) * math.prod(p**i - 1 for i in range(2, m + 1))
    if g.kind is GroupKind.SU:
        return p ** (m * (m - 1) // 2) * math.prod(p**i - (-1) ** i for i in range(2, m + 1))
    if g.kind is GroupKind.SP:
        r = m // 2
        return p ** (r * r) * math.prod(p ** (2 * i) - 1 for i in range(1, r + 1))
    if g.kind is GroupKind.SO_ODD:
        if p == 2:
            raise ValueError("SO_odd order formula is restricted to odd p")
        r = m // 2
        return p ** (r * r) * math.prod(p ** (2 * i) - 1 for i in range(1, r + 1))
    return p + 1


# ---------------------------------------------------------------------------
# Euler factors p^dim / |M(F_p)|


def _reductive_quotient(fld: QuadraticField, p: int, n: int) -> Group:
    cls = classify_prime(fld, p)
    if cls is PrimeClass.SPLIT:
        return Group(GroupKind.SL, n + 1)
    if cls is PrimeClass.INERT:
        return Group(GroupKind.SU, n + 1)
    if n % 2:
        return Group(GroupKind.SP, n + 1)
    return Group(GroupKind.SO_ODD, n + 1)


def euler_factor_closed(fld: QuadraticField, p: int, n: int) -> Fraction:
    """The displayed product of (1 - eps p^-i)^-1 for the class of p."""
    cls = classify_prime(fld, p)
    pf = Fraction(p)
    if cls is PrimeClass.SPLIT:
        terms = [1 - pf**-i for i in range(2, n + 2)]
    elif cls is PrimeClass.INERT:
        terms = [1 - (-1) ** i * pf**-i for i in range(2, n + 2)]
    else:
        # ramified: only the zeta(2i) factors survive, 2i <= n+1
        terms = [1 - pf ** (-2 * i) for i in range(1, (n + 1) // 2 + 1)]
    return 1 / math.prod(terms, start=Fraction(1))


def euler_factor_orders(fld: QuadraticField, p: int, n: int) -> Fraction | None:
    """p^dim(M) / |M(F_p)| from the group order, or None where no order route exists."""
    g = _reductive_quotient(fld, p, n)
    if g.kind is GroupKind.SO_ODD and p == 2:
        return None
    return Fraction(p ** group_dim(g), group_order(g, p))


def euler_factor(fld: QuadraticField, p: int, n: int) -> Fraction:
    """Local factor at p of prod_{s=2}^{n+1} Z(s); both routes must agree."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    closed = euler_factor_closed(fld, p, n)
    via_orders = euler_factor_orders(fld, p, n)
    if via_orders is not None and via_orders != closed:
        raise ArithmeticError(
            f"Euler factor mismatch at p={p}, n={n}: closed {closed} vs orders {via_orders}"
        )
    return closed


# ---------------------------------------------------------------------------
# lambda_p for p in T


def lambda_p_closed(p: int, n: int) -> Fraction:
    return Fraction(p ** (n + 1) - 1, p + 1)


def lambda_p_orders(p: int, n: int) -> Fraction:
    """p^((dim M - dim M')/2) |M'(F_p)| / |M(F_p)|, M = Sp_{n-1} x SO2^-, M' = Sp_{n+1}."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"lambda_p needs odd n >= 3, got {n}")
    big = Group(GroupKind.SP, n + 1)
    small = Group(GroupKind.SP, n - 1)
    torus = Group(GroupKind.SO2_MINUS)
    twice_exp = group_dim(small) + group_dim(torus) - group_dim(big)
    if twice_exp % 2:
        raise ArithmeticError("non-integral lambda_p exponent")
    order_ratio = Fraction(group_order(big, p), group_order(small, p) * group_order(torus, p))
    return Fraction(p) ** (twice_exp // 2) * order_ratio


def lambda_p(fld: QuadraticField, p: int, n: int) -> Fraction:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"lambda_p needs odd n >= 3, got {n}")
    if p not in t_ell(fld, n):
        raise ValueError(f"p={p} is not in T for {fld}, n={n}")
    closed = lambda_p_closed(p, n)
    if lambda_p_orders(p, n) != closed:
        raise ArithmeticError(f"lambda_p routes disagree at p={p}, n={n}")
    return closed


def euler_product_numeric(fld: QuadraticField, n: int, prime_bound: int) -> float:
    """prod_{p <= bound} euler_factor(p) in floating point."""
    out = mpmath.mpf(1)
    with mpmath.workdps(30):
        for p in primes_up_to(prime_bound):
            e = euler_factor_closed(fld, p, n)
            out *= mpmath.mpf(e.numerator) / e.denominator
    return out


def z_product_numeric(fld: QuadraticField, n: int, precision_bits: int = 128) -> mpmath.mpf:
    out = SymbolicReal(1)
    for s in range(2, n + 2):
        out = out * z_ell(fld, s)
    return to_float(out, precision_bits)
