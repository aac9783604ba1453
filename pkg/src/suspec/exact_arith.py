"""Exact scalars: Bernoulli numbers and the product type q * pi^a * |D|^(b/2).

Rationals are :class:`fractions.Fraction` throughout.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt
from typing import TYPE_CHECKING, Optional, Union

import mpmath

if TYPE_CHECKING:
    from .dirichlet import QuadraticField

Rational = Fraction

DEFAULT_PRECISION_BITS = 256

__all__ = [
    "Rational",
    "DEFAULT_PRECISION_BITS",
    "ContextError",
    "IncompatibleAtomsError",
    "SymbolicReal",
    "bernoulli",
    "bernoulli_poly",
    "sym_mul",
    "sym_add",
    "is_rational",
    "to_float",
    "format_rational",
    "parse_rational",
]


class ContextError(ValueError):
    """Two values carry sqrt|D| factors from different fields."""


class IncompatibleAtomsError(ValueError):
    """Addition of values with different pi / sqrt|D| exponents."""


# ---------------------------------------------------------------------------
# Bernoulli numbers (B_1 = -1/2)

_bern_cache: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """B_n with generating function t/(e^t - 1), memoized.

    The table only ever grows; readers index a list that is extended under
    a lock, so concurrent calls are safe.
    """
    if n < 0:
        raise ValueError(f"bernoulli index must be >= 0, got {n}")
    if n < len(_bern_cache):
        return _bern_cache[n]
    with _bern_lock:
        cache = _bern_cache
        for m in range(len(cache), n + 1):
            if m >= 3 and m % 2 == 1:
                cache.append(Fraction(0))
                continue
            # sum_{k=0}^{m} C(m+1, k) B_k = 0
            s = sum((comb(m + 1, k) * cache[k] for k in range(m)), Fraction(0))
            cache.append(-s / (m + 1))
        return cache[n]


def bernoulli_poly(n: int, x: Union[Fraction, int]) -> Fraction:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k)."""
    if n < 0:
        raise ValueError(f"bernoulli_poly degree must be >= 0, got {n}")
    x = Fraction(x)
    return sum((comb(n, k) * bernoulli(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# SymbolicReal


@dataclass(frozen=True, eq=False)
class SymbolicReal:
    """The exact real number ``coeff * pi**pi_exp * |D|**(sqrtD_exp/2)``.

    ``field`` is the quadratic field supplying ``|D|``; it is dropped whenever
    ``sqrtD_exp == 0``. The stored exponent of sqrt|D| is kept as built (so
    bookkeeping can be inspected); equality compares values via ``reduced()``.
    """

    coeff: Fraction
    pi_exp: int = 0
    sqrtD_exp: int = 0
    field: Optional["QuadraticField"] = None

    def __post_init__(self) -> None:
        coeff = Fraction(self.coeff)
        object.__setattr__(self, "coeff", coeff)
        if coeff == 0:
            object.__setattr__(self, "pi_exp", 0)
            object.__setattr__(self, "sqrtD_exp", 0)
        if self.sqrtD_exp == 0:
            object.__setattr__(self, "field", None)
        elif self.field is None:
            raise ContextError("sqrtD_exp != 0 requires a field context")

    @classmethod
    def rational(cls, q: Union[Fraction, int]) -> "SymbolicReal":
        return cls(Fraction(q))

    @classmethod
    def pi_power(cls, a: int) -> "SymbolicReal":
        return cls(Fraction(1), pi_exp=a)

    @classmethod
    def sqrt_abs_disc(cls, field: "QuadraticField", b: int = 1) -> "SymbolicReal":
        """|D|^(b/2) for the given field."""
        return cls(Fraction(1), sqrtD_exp=b, field=field)

    @property
    def abs_disc(self) -> Optional[int]:
        return None if self.field is None else self.field.abs_disc

    def folded(self) -> "SymbolicReal":
        """Same value with integer powers of |D| moved into coeff (sqrtD_exp in {-1, 0, 1})."""
        if self.sqrtD_exp in (-1, 0, 1):
            return self
        r = 1 if self.sqrtD_exp % 2 else 0
        q = (self.sqrtD_exp - r) // 2
        return SymbolicReal(self.coeff * Fraction(self.abs_disc) ** q, self.pi_exp, r, self.field)

    def reduced(self) -> "SymbolicReal":
        """Canonical form: folded, and sqrt|D| absorbed too when |D| is a square (k = 1)."""
        if self.sqrtD_exp == 0:
            return self
        root = isqrt(self.abs_disc)
        if root * root == self.abs_disc:
            return SymbolicReal(self.coeff * Fraction(root) ** self.sqrtD_exp, self.pi_exp)
        return self.folded()

    def _key(self) -> tuple:
        f = self.reduced()
        return (f.coeff, f.pi_exp, f.sqrtD_exp, f.abs_disc)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal(Fraction(other))
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other: object) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal(Fraction(other))
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return sym_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal(Fraction(other))
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return sym_mul(self, other.inverse())

    def __rtruediv__(self, other: object) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            return sym_mul(SymbolicReal(Fraction(other)), self.inverse())
        return NotImplemented

    def __add__(self, other: object) -> "SymbolicReal":
        if isinstance(other, (int, Fraction)):
            other = SymbolicReal(Fraction(other))
        if not isinstance(other, SymbolicReal):
            return NotImplemented
        return sym_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicReal":
        return SymbolicReal(-self.coeff, self.pi_exp, self.sqrtD_exp, self.field)

    def __pow__(self, e: int) -> "SymbolicReal":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return SymbolicReal(self.coeff**e, self.pi_exp * e, self.sqrtD_exp * e, self.field)

    def inverse(self) -> "SymbolicReal":
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of symbolic zero")
        return SymbolicReal(1 / self.coeff, -self.pi_exp, -self.sqrtD_exp, self.field)

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def to_json(self, fold: bool = True) -> dict:
        """JSON record; by default with integer |D| powers folded into coeff."""
        if fold:
            return self.folded().to_json(fold=False)
        out = {
            "coeff": format_rational(self.coeff),
            "pi_exp": self.pi_exp,
            "sqrtD_exp": self.sqrtD_exp,
        }
        if self.sqrtD_exp != 0:
            out["absD"] = self.abs_disc
        return out

    def __str__(self) -> str:
        parts = [format_rational(self.coeff)]
        if self.pi_exp:
            parts.append(f"pi^{self.pi_exp}")
        if self.sqrtD_exp:
            parts.append(f"|D|^({self.sqrtD_exp}/2)")
        return "*".join(parts)


def sym_mul(a: SymbolicReal, b: SymbolicReal) -> SymbolicReal:
    """Component-wise product; fields must agree when both carry sqrt|D|."""
    if a.sqrtD_exp and b.sqrtD_exp and a.field != b.field:
        raise ContextError(f"cannot multiply values from fields {a.field} and {b.field}")
    field = a.field if a.sqrtD_exp else b.field
    return SymbolicReal(a.coeff * b.coeff, a.pi_exp + b.pi_exp, a.sqrtD_exp + b.sqrtD_exp, field)


def sym_add(a: SymbolicReal, b: SymbolicReal) -> SymbolicReal:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if (a.pi_exp, a.sqrtD_exp, a.field) != (b.pi_exp, b.sqrtD_exp, b.field):
        raise IncompatibleAtomsError(f"cannot add {a} and {b}: unlike atoms")
    return SymbolicReal(a.coeff + b.coeff, a.pi_exp, a.sqrtD_exp, a.field)


def is_rational(a: SymbolicReal) -> Optional[Fraction]:
    """The value as a Fraction when it is rational (pi_exp == 0, sqrt|D| folds away), else None."""
    f = a.reduced()
    if f.pi_exp != 0 or f.sqrtD_exp != 0:
        return None
    return f.coeff


def to_float(a: SymbolicReal, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpmath.mpf:
    """Evaluate with relative error at most 2^(1 - precision_bits)."""
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    with mpmath.workprec(precision_bits + 16):
        v = mpmath.mpf(a.coeff.numerator) / a.coeff.denominator
        if a.pi_exp:
            v *= mpmath.pi ** a.pi_exp
        if a.sqrtD_exp:
            v *= mpmath.sqrt(a.abs_disc) ** a.sqrtD_exp
    with mpmath.workprec(precision_bits):
        return +v


def format_rational(q: Fraction) -> str:
    """'a/b', or 'a' when the denominator is 1."""
    return str(Fraction(q))


def parse_rational(s: str) -> Fraction:
    return Fraction(s)
