import threading
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from suspec.dirichlet import make_field
from suspec.exact_arith import (
    ContextError,
    IncompatibleAtomsError,
    SymbolicReal,
    bernoulli,
    bernoulli_poly,
    is_rational,
    parse_rational,
    to_float,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


def test_bernoulli_small():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_bernoulli_matches_sympy():
    # sympy uses B_1 = +1/2; all other indices agree
    for n in range(2, 60):
        assert bernoulli(n) == Fraction(str(sympy.bernoulli(n)))


@given(st.integers(min_value=1, max_value=40))
def test_bernoulli_odd_vanish(m):
    if 2 * m + 1 >= 3:
        assert bernoulli(2 * m + 1) == 0


def test_bernoulli_negative_index():
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_bernoulli_threaded_cache():
    out = {}

    def work(i):
        out[i] = bernoulli(80 + i)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for i, v in out.items():
        assert v == Fraction(str(sympy.bernoulli(80 + i)))


@given(st.integers(min_value=1, max_value=12), fractions)
def test_bernoulli_poly_difference(n, x):
    # B_n(x + 1) - B_n(x) = n x^(n-1)
    assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * x ** (n - 1)


@given(st.integers(min_value=2, max_value=20))
def test_bernoulli_poly_endpoints(n):
    assert bernoulli_poly(n, 0) == bernoulli(n) == bernoulli_poly(n, 1)


def test_symbolic_basic_ops():
    fld = make_field(3)
    a = SymbolicReal(Fraction(1, 2), pi_exp=2, sqrtD_exp=1, field=fld)
    b = SymbolicReal(Fraction(3), pi_exp=-2, sqrtD_exp=1, field=fld)
    prod = a * b
    assert prod.pi_exp == 0 and prod.sqrtD_exp == 2
    assert is_rational(prod) == Fraction(9, 2)
    assert (a / a) == 1
    assert a + a == SymbolicReal(Fraction(1), 2, 1, fld)
    assert -a + a == 0
    assert (a**3).sqrtD_exp == 3
    assert a ** -1 == a.inverse()


def test_symbolic_context_error():
    a = SymbolicReal.sqrt_abs_disc(make_field(2))
    b = SymbolicReal.sqrt_abs_disc(make_field(3))
    with pytest.raises(ContextError):
        a * b
    with pytest.raises(ContextError):
        SymbolicReal(Fraction(1), sqrtD_exp=1)


def test_symbolic_incompatible_add():
    with pytest.raises(IncompatibleAtomsError):
        SymbolicReal.pi_power(1) + SymbolicReal.pi_power(2)


def test_zero_is_canonical():
    z = SymbolicReal(Fraction(0), pi_exp=5)
    assert z.pi_exp == 0 and z == 0
    with pytest.raises(ZeroDivisionError):
        z.inverse()


def test_folding_keeps_value():
    fld = make_field(5)
    a = SymbolicReal(Fraction(1, 3), pi_exp=1, sqrtD_exp=5, field=fld)
    f = a.folded()
    assert f.sqrtD_exp == 1 and f.coeff == Fraction(400, 3)
    assert f == a and hash(f) == hash(a)
    assert mpmath.almosteq(to_float(a, 128), to_float(f, 128), 1e-30)


def test_reduced_square_discriminant():
    # |D| = 4 for k = 1, so sqrt|D| = 2 is rational
    a = SymbolicReal(Fraction(1, 16), pi_exp=3, sqrtD_exp=-1, field=make_field(1))
    assert a == SymbolicReal(Fraction(1, 32), pi_exp=3)
    assert a.to_json() == {"coeff": "1/16", "pi_exp": 3, "sqrtD_exp": -1, "absD": 4}


def test_to_json():
    v = SymbolicReal(Fraction(-7, 3), pi_exp=4)
    assert v.to_json() == {"coeff": "-7/3", "pi_exp": 4, "sqrtD_exp": 0}
    assert parse_rational(v.to_json()["coeff"]) == v.coeff


@given(fractions, st.integers(-6, 6), st.integers(-5, 5))
def test_to_float_accuracy(q, a, b):
    fld = make_field(7)
    v = SymbolicReal(q, a, b, fld if b else None)
    with mpmath.workprec(300):
        ref = mpmath.mpf(q.numerator) / q.denominator * mpmath.pi**a * mpmath.sqrt(7) ** b
    got = to_float(v, 200)
    if ref == 0:
        assert got == 0
    else:
        assert abs(got - ref) / abs(ref) < mpmath.mpf(2) ** -199


@given(fractions, fractions, st.integers(-4, 4), st.integers(-4, 4))
def test_mul_matches_floats(p, q, a, b):
    x = SymbolicReal(p, a)
    y = SymbolicReal(q, b)
    with mpmath.workprec(96):
        assert mpmath.almosteq(to_float(x * y, 96), to_float(x, 96) * to_float(y, 96), 1e-25, 1e-60)


def test_to_float_rejects_low_precision():
    with pytest.raises(ValueError):
        to_float(SymbolicReal(1), 16)
