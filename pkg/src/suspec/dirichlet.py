"""Imaginary quadratic fields Q(sqrt(-k)) and their quadratic characters.

Covers discriminants, the Kronecker symbol (D/n), splitting of primes,
Hilbert symbols, local norm tests and the set of primes where the unitary
group of the form diag(1, ..., 1, -1) is not quasi-split.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

import mpmath

__all__ = [
    "QuadraticField",
    "PrimeClass",
    "make_field",
    "kronecker",
    "classify_prime",
    "hilbert_symbol",
    "is_local_norm",
    "t_ell",
    "gauss_sum_numeric",
    "gauss_sum_sign",
    "is_prime",
    "primes_up_to",
    "prime_factors",
    "is_squarefree",
]


# ---------------------------------------------------------------------------
# primes


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 2^64."""
    if n < 2:
        return False
    if n >= 1 << 64:
        raise ValueError(f"primality test limited to 64-bit inputs, got {n}")
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of |n| by trial division."""
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return n != 0


# ---------------------------------------------------------------------------
# fields


class PrimeClass(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QuadraticField:
    """Q(sqrt(-k)) for squarefree k >= 1."""

    k: int
    disc: int = field(init=False)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not is_squarefree(self.k):
            raise ValueError(f"k = {self.k} is not squarefree")
        object.__setattr__(self, "disc", -self.k if self.k % 4 == 3 else -4 * self.k)

    @property
    def abs_disc(self) -> int:
        return -self.disc

    @property
    def conductor(self) -> int:
        return -self.disc

    def ramified_primes(self) -> list[int]:
        return prime_factors(self.disc)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "D": self.disc,
            "conductor": self.conductor,
            "ramified": self.ramified_primes(),
        }

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.k}))"


def make_field(k: int) -> QuadraticField:
    return QuadraticField(k)


# ---------------------------------------------------------------------------
# Kronecker symbol


def _jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _kronecker_symbol(a: int, n: int) -> int:
    """The Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(a, n)


def kronecker(fld: QuadraticField, n: int) -> int:
    """chi_D(n) = (D/n)."""
    return _kronecker_symbol(fld.disc, n)


def classify_prime(fld: QuadraticField, p: int) -> PrimeClass:
    _require_prime(p)
    c = kronecker(fld, p)
    if c == 0:
        return PrimeClass.RAMIFIED
    return PrimeClass.SPLIT if c == 1 else PrimeClass.INERT


# ---------------------------------------------------------------------------
# Hilbert symbols and local norms


def _split_valuation(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """(a, b)_p for nonzero integers a, b and a prime p."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    _require_prime(p)
    alpha, u = _split_valuation(a, p)
    beta, v = _split_valuation(b, p)
    if p == 2:
        eps_u = (u - 1) // 2 % 2
        eps_v = (v - 1) // 2 % 2
        om_u = (u * u - 1) // 8 % 2
        om_v = (v * v - 1) // 8 % 2
        e = eps_u * eps_v + alpha * om_v + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = _jacobi(u, p) ** beta
    lv = _jacobi(v, p) ** alpha
    return sign * lu * lv


def hilbert_symbol_infinity(a: int, b: int) -> int:
    return -1 if a < 0 and b < 0 else 1


def is_local_norm(fld: QuadraticField, p: int, a: int) -> bool:
    """Whether a lies in the norm group of Q_p(sqrt(-k)) / Q_p."""
    return hilbert_symbol(a, -fld.k, p) == 1


def t_ell(fld: QuadraticField, n: int) -> list[int]:
    """Sorted primes where SU(n, 1) over the field is not quasi-split."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n % 2 == 0 or ((n - 1) // 2) % 2 == 0:
        return []
    return [p for p in fld.ramified_primes() if not is_local_norm(fld, p, -1)]


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum_numeric(fld: QuadraticField, precision_bits: int = 256) -> mpmath.mpc:
    """G(1, chi) = sum_{r=1}^{|D|} chi(r) exp(2 pi i r / |D|) by direct summation."""
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    f = fld.abs_disc
    with mpmath.workprec(precision_bits + 16):
        total = mpmath.mpc(0)
        for r in range(1, f + 1):
            c = kronecker(fld, r)
            if c:
                total += c * mpmath.expjpi(mpmath.mpf(2 * r) / f)
    with mpmath.workprec(precision_bits):
        return +total


def gauss_sum_sign(fld: QuadraticField, precision_bits: int = 128) -> int:
    """Observed sign s with G(1, chi) = s * i * sqrt|D|."""
    g = gauss_sum_numeric(fld, precision_bits)
    with mpmath.workprec(precision_bits):
        ratio = g.imag / mpmath.sqrt(fld.abs_disc)
    if abs(abs(ratio) - 1) > mpmath.mpf(10) ** -9 or abs(g.real) > mpmath.mpf(10) ** -9:
        raise ArithmeticError(f"Gauss sum {g} is not +-i*sqrt|D|")
    return 1 if ratio > 0 else -1


def iter_character(fld: QuadraticField) -> Iterator[tuple[int, int]]:
    """(a, chi(a)) over one full period a = 1..|D|."""
    for a in range(1, fld.abs_disc + 1):
        yield a, kronecker(fld, a)
