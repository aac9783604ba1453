"""Discrete series of SU(n, 1): parameters, formal degrees, covolumes, multiplicities.

Also holds the Heisenberg group N = exp(g_1 + g_2) used for the cusp
volume estimate.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .dirichlet import QuadraticField, t_ell
from .exact_arith import SymbolicReal, is_rational, to_float
from .lfunctions import lambda_p, z_ell

__all__ = [
    "HCParam",
    "ParamFlags",
    "MultiplicityResult",
    "ErrorInputs",
    "IntegralityWarning",
    "validate",
    "formal_degree",
    "weyl_dim",
    "k_type_dim",
    "s_exponent",
    "covolume",
    "multiplicity",
    "error_constant",
    "SqrtRational",
    "n2_volume_lower_bound",
    "positivity_threshold",
    "ComplexRational",
    "HeisenbergElement",
    "heisenberg_mul",
    "heisenberg_inverse",
    "heisenberg_matrix",
    "hermitian_form",
    "mat_mul",
    "conj_transpose",
]


class IntegralityWarning(UserWarning):
    """An n-odd multiplicity came out non-integral for the supplied index."""


# ---------------------------------------------------------------------------
# Harish-Chandra parameters


@dataclass(frozen=True)
class HCParam:
    """tau = (tau_1 > ... > tau_n) in the epsilon basis; tau_{n+1} = -sum(tau)."""

    taus: tuple[int, ...]

    def __init__(self, taus: Sequence[int]):
        vals = tuple(int(t) for t in taus)
        if any(Fraction(t) != Fraction(orig) for t, orig in zip(vals, taus)):
            raise ValueError(f"tau entries must be integers, got {list(taus)}")
        if len(vals) < 3:
            raise ValueError(f"need n >= 3 coordinates, got {len(vals)}")
        if any(a <= b for a, b in zip(vals, vals[1:])):
            raise ValueError(f"tau must be strictly decreasing, got {list(vals)}")
        object.__setattr__(self, "taus", vals)

    @property
    def n(self) -> int:
        return len(self.taus)

    @property
    def tau_last(self) -> int:
        return -sum(self.taus)

    @property
    def full(self) -> tuple[int, ...]:
        """(tau_1, ..., tau_n, tau_{n+1})."""
        return self.taus + (self.tau_last,)

    def __str__(self) -> str:
        return ",".join(str(t) for t in self.taus)


@dataclass(frozen=True)
class ParamFlags:
    regular_dominant: bool
    integrable: bool
    cohomological: bool

    def to_json(self) -> dict:
        return {
            "regular_dominant": self.regular_dominant,
            "integrable": self.integrable,
            "cohomological": self.cohomological,
        }


def validate(tau: HCParam) -> ParamFlags:
    n = tau.n
    t = tau.full
    regular = all(t[i] > t[i + 1] for i in range(n))
    integrable = regular and t[n - 1] > t[n] + n
    # tau = rho + delta_G with rho dominant
    coh = all(t[i] + i >= t[j] + j for i in range(n) for j in range(i + 1, n)) and all(
        t[i] >= t[n] + n * (n + 1) // 2 + n + 1 - (i + 1) for i in range(n)
    )
    return ParamFlags(regular, integrable, coh)


def formal_degree(tau: HCParam) -> SymbolicReal:
    """d_tau = (4 pi)^-n prod_i |prod_{j>i} (tau_i - tau_j)| / (i-1)!."""
    n = tau.n
    t = tau.full
    q = Fraction(1)
    for i in range(n):
        diff = math.prod(t[i] - t[j] for j in range(i + 1, n + 1))
        if diff == 0:
            raise ValueError(f"singular Harish-Chandra parameter {t}")
        q *= Fraction(abs(diff), math.factorial(i))
    return SymbolicReal(q / 4**n, pi_exp=-n)


def weyl_dim(highest_weight: Sequence) -> int:
    """Dimension of the gl_n irrep with weakly decreasing highest weight."""
    lam = [Fraction(x) for x in highest_weight]
    n = len(lam)
    num = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            d = lam[i] - lam[j]
            if d.denominator != 1:
                raise ValueError(f"non-integral weight difference in {highest_weight}")
            if d < 0:
                raise ValueError(f"highest weight must be weakly decreasing: {highest_weight}")
            num *= Fraction(d + j - i, j - i)
    if num.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl dimension {num}")
    return int(num)


def k_type_dim(tau: HCParam) -> int:
    """dim E_{tau - delta_K}, delta_K = ((n-1)/2, ..., -(n-1)/2)."""
    n = tau.n
    delta_k = [Fraction(n - 1, 2) - i for i in range(n)]
    return weyl_dim([t - d for t, d in zip(tau.taus, delta_k)])


def s_exponent(n: int) -> Fraction:
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n % 2:
        return Fraction((n - 1) * (n + 2), 4)
    return Fraction(n * (n + 3), 4)


# ---------------------------------------------------------------------------
# covolume and multiplicities


def covolume(fld: QuadraticField, n: int) -> SymbolicReal:
    """vol(Gamma \\ SU(n,1)) for the principal arithmetic lattice of maximal volume."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    s = s_exponent(n)
    out = SymbolicReal(1, pi_exp=n) * SymbolicReal.sqrt_abs_disc(fld, int(2 * s))
    for i in range(1, n + 1):
        out = out * SymbolicReal(Fraction(math.factorial(i - 1), 2 ** (i + 1)), pi_exp=-(i + 1))
    for k in range(2, n + 2):
        out = out * z_ell(fld, k)
    if n % 2:
        for p in t_ell(fld, n):
            out = out * lambda_p(fld, p, n)
    assert out.pi_exp == n, out
    return out


@dataclass(frozen=True)
class ErrorInputs:
    """Data for the n-even defect bound C * h_m / m^n.

    Either ``C`` directly, or the factors ``kappa_abs``, ``dim_E`` (defaults to
    dim E_{tau - delta_K}) and ``sum_cusp_vol``.
    """

    m: int
    C: Optional[float] = None
    kappa_abs: Optional[float] = None
    dim_E: Optional[int] = None
    sum_cusp_vol: Optional[float] = None

    def __post_init__(self) -> None:
        if self.m < 3:
            raise ValueError(f"congruence level m must be >= 3, got {self.m}")
        if self.C is None and (self.kappa_abs is None or self.sum_cusp_vol is None):
            raise ValueError("need C or both kappa_abs and sum_cusp_vol")


@dataclass(frozen=True)
class MultiplicityResult:
    main_term: SymbolicReal
    h_m: int
    n: int
    exact: Optional[Fraction] = None
    error_bound: Optional[float] = None
    error_constant: Optional[float] = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "h_m": self.h_m,
            "main_term": self.main_term.to_json(),
            "main_term_float": mpmath.nstr(to_float(self.main_term, 128), 15),
            "exact": None if self.exact is None else str(self.exact),
            "error_bound": self.error_bound,
        }
        if self.error_constant is not None:
            out["error_constant"] = self.error_constant
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def error_constant(n: int, k: int, kappa_abs: float, dim_E: int, sum_cusp_vol: float) -> float:
    """C = |kappa| dim E sum_j vol(cusp_j) / (k / (8(n+1)))^(n/2)."""
    if n % 2:
        raise ValueError("the error constant only exists for even n")
    if kappa_abs < 0 or dim_E < 1 or sum_cusp_vol < 0 or k < 1:
        raise ValueError("error constant inputs must be positive")
    ratio = Fraction(k, 8 * (n + 1))
    return float(kappa_abs * dim_E * sum_cusp_vol / float(ratio ** (n // 2)))


def multiplicity(
    fld: QuadraticField,
    n: int,
    tau: HCParam,
    h_m: int,
    err_inputs: Optional[ErrorInputs] = None,
) -> MultiplicityResult:
    """m(Gamma(m), pi_tau) = d_tau vol(Gamma \\ G) h_m, plus O(h_m/m^n) for even n."""
    if tau.n != n:
        raise ValueError(f"tau has {tau.n} coordinates, expected n = {n}")
    if h_m < 1 or int(h_m) != h_m:
        raise ValueError(f"index h_m must be a positive integer, got {h_m}")
    if not validate(tau).integrable:
        raise ValueError(f"tau = ({tau}) is not integrable")
    main = formal_degree(tau) * covolume(fld, n) * h_m
    notes: list[str] = []
    if n % 2:
        exact = is_rational(main)
        if exact is None:
            raise ArithmeticError(f"n-odd multiplicity failed to fold: {main}")
        if exact.denominator != 1:
            warnings.warn(
                f"multiplicity {exact} is not an integer; h_m = {h_m} cannot be a genuine index",
                IntegralityWarning,
                stacklevel=2,
            )
        return MultiplicityResult(main, h_m, n, exact=exact)
    bound = None
    c = None
    if err_inputs is not None:
        if err_inputs.C is not None:
            c = float(err_inputs.C)
        else:
            dim_e = err_inputs.dim_E if err_inputs.dim_E is not None else k_type_dim(tau)
            c = error_constant(n, fld.k, err_inputs.kappa_abs, dim_e, err_inputs.sum_cusp_vol)
        bound = c * h_m / err_inputs.m**n
    else:
        notes.append("bound requires C")
    return MultiplicityResult(main, h_m, n, error_bound=bound, error_constant=c, notes=tuple(notes))


@dataclass(frozen=True)
class SqrtRational:
    """coeff * sqrt(radicand) with rational coeff and radicand."""

    coeff: Fraction
    radicand: Fraction

    def exact(self) -> Optional[Fraction]:
        """The value as a Fraction when the radicand is a rational square."""
        num, den = self.radicand.numerator, self.radicand.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return self.coeff * Fraction(rn, rd)
        return None

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(self.radicand)


def n2_volume_lower_bound(k: int, n: int, m: int) -> SqrtRational:
    """vol(Gamma(m) cap N_2 \\ N_2) >= m sqrt(k / (8(n+1)))."""
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")
    return SqrtRational(Fraction(m), Fraction(k, 8 * (n + 1)))


def positivity_threshold(fld: QuadraticField, n: int, tau: HCParam, C: float) -> float:
    """Level beyond which the multiplicity is forced positive: |C / (d_tau vol)|^(1/n)."""
    if C < 0:
        raise ValueError("C must be nonnegative")
    if not validate(tau).integrable:
        raise ValueError(f"tau = ({tau}) is not integrable")
    dv = to_float(formal_degree(tau) * covolume(fld, n), 128)
    with mpmath.workprec(128):
        return float(abs(mpmath.mpf(C) / dv) ** (mpmath.mpf(1) / n))


# ---------------------------------------------------------------------------
# Heisenberg group


class ComplexRational:
    """re + i im with Fraction parts; immutable, hashable, exact."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0) -> None:
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, ComplexRational):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"ComplexRational({self.re!s}, {self.im!s})"

    def __add__(self, o: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + o.re, self.im + o.im)

    def __sub__(self, o: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __mul__(self, o) -> "ComplexRational":
        if isinstance(o, (int, Fraction)):
            return ComplexRational(self.re * o, self.im * o)
        a, b, c, d = self.re, self.im, o.re, o.im
        return ComplexRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im


ZERO = ComplexRational()
ONE = ComplexRational(1)
I = ComplexRational(0, 1)


@dataclass(frozen=True)
class HeisenbergElement:
    """u(x, mu) with x in Q(i)^(n-1), mu rational."""

    x: tuple[ComplexRational, ...]
    mu: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "mu", Fraction(self.mu))

    @property
    def n(self) -> int:
        return len(self.x) + 1

    @classmethod
    def identity(cls, n: int) -> "HeisenbergElement":
        return cls((ZERO,) * (n - 1), Fraction(0))

    @classmethod
    def central(cls, n: int, mu) -> "HeisenbergElement":
        """u_2(mu)."""
        return cls((ZERO,) * (n - 1), Fraction(mu))


def _herm(x: Sequence[ComplexRational], y: Sequence[ComplexRational]) -> ComplexRational:
    out = ZERO
    for a, b in zip(x, y):
        out = out + a * b.conj()
    return out


def heisenberg_mul(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    """u(x1, mu1) u(x2, mu2) = u(x1 + x2, mu1 + mu2 + Im<x1, x2>)."""
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: n = {a.n} vs {b.n}")
    x = tuple(p + q for p, q in zip(a.x, b.x))
    return HeisenbergElement(x, a.mu + b.mu + _herm(a.x, b.x).im)


def heisenberg_inverse(a: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(tuple(-c for c in a.x), -a.mu)


Matrix = list[list[ComplexRational]]


def heisenberg_matrix(e: HeisenbergElement) -> Matrix:
    """The (n+1) x (n+1) matrix of u(x, mu) in SU(n, 1)."""
    n = e.n
    size = n + 1
    m = [[ONE if i == j else ZERO for j in range(size)] for i in range(size)]
    # u_2(mu)
    imu = I * e.mu
    m[0][0] = m[0][0] - imu
    m[0][n] = m[0][n] + imu
    m[n][0] = m[n][0] - imu
    m[n][n] = m[n][n] + imu
    half = ComplexRational(_herm(e.x, e.x).re / 2)
    for r in (0, n):
        m[r][0] = m[r][0] - half
        m[r][n] = m[r][n] + half
        for j, xj in enumerate(e.x, start=1):
            m[r][j] = m[r][j] + xj
    for j, xj in enumerate(e.x, start=1):
        m[j][0] = m[j][0] - xj.conj()
        m[j][n] = m[j][n] + xj.conj()
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    inner = len(b)
    out = []
    for i in range(size):
        row = []
        for j in range(len(b[0])):
            acc = ZERO
            for k in range(inner):
                x = a[i][k]
                if x.re or x.im:
                    acc = acc + x * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def conj_transpose(a: Matrix) -> Matrix:
    return [[a[j][i].conj() for j in range(len(a))] for i in range(len(a[0]))]


def hermitian_form(n: int) -> Matrix:
    """S_{n,1} = diag(1, ..., 1, -1)."""
    size = n + 1
    return [
        [(ONE if i < n else -ONE) if i == j else ZERO for j in range(size)] for i in range(size)
    ]
