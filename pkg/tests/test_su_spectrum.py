import math
import warnings
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from suspec.dirichlet import make_field
from suspec.exact_arith import SymbolicReal, is_rational, to_float
from suspec.su_spectrum import (
    I,
    ONE,
    ZERO,
    ComplexRational,
    ErrorInputs,
    HCParam,
    HeisenbergElement,
    IntegralityWarning,
    conj_transpose,
    covolume,
    error_constant,
    formal_degree,
    heisenberg_inverse,
    heisenberg_matrix,
    heisenberg_mul,
    hermitian_form,
    k_type_dim,
    mat_mul,
    multiplicity,
    n2_volume_lower_bound,
    positivity_threshold,
    s_exponent,
    validate,
    weyl_dim,
)

FIELDS = [1, 2, 3, 5, 7, 11]


@st.composite
def integrable_taus(draw, n=None):
    n = n or draw(st.integers(3, 6))
    gaps = draw(st.lists(st.integers(1, 4), min_size=n - 1, max_size=n - 1))
    last = draw(st.integers(-2, 6))
    taus = [last]
    for g in gaps:
        taus.append(taus[-1] + g)
    tau = HCParam(taus[::-1])
    if not validate(tau).integrable:
        tau = HCParam([t + 2 * n for t in tau.taus])
    return tau


def test_hcparam_validation():
    tau = HCParam([3, 2, 1])
    assert tau.tau_last == -6 and tau.full == (3, 2, 1, -6)
    for bad in ([1, 2, 3], [3, 3, 1], [2, 1], [Fraction(5, 2), 1, 0]):
        with pytest.raises(ValueError):
            HCParam(bad)


def test_validate_examples():
    assert validate(HCParam([3, 2, 1])).to_json() == {
        "regular_dominant": True,
        "integrable": True,
        "cohomological": True,
    }
    assert not validate(HCParam([2, 1, 0])).integrable
    assert validate(HCParam([10, 9, 8])).integrable


@given(integrable_taus())
def test_integrable_implies_regular(tau):
    flags = validate(tau)
    assert flags.integrable and flags.regular_dominant


def test_formal_degree_examples():
    assert formal_degree(HCParam([3, 2, 1])) == SymbolicReal(Fraction(63, 8), pi_exp=-3)
    assert formal_degree(HCParam([2, 1, 0])) == SymbolicReal(Fraction(15, 16), pi_exp=-3)


def test_formal_degree_collision_rejected():
    # tau_4 = -(1 + 0 - 1) = 0 repeats tau_2
    with pytest.raises(ValueError):
        formal_degree(HCParam([1, 0, -1]))


@given(integrable_taus())
def test_formal_degree_vs_sympy(tau):
    t = tau.full
    n = tau.n
    expr = sympy.Integer(1)
    for i in range(n):
        expr *= sympy.Abs(sympy.prod([t[i] - t[j] for j in range(i + 1, n + 1)])) / sympy.factorial(i)
    expr /= (4 * sympy.pi) ** n
    d = formal_degree(tau)
    assert d.coeff > 0 and d.pi_exp == -n
    assert sympy.simplify(expr - sympy.Rational(d.coeff.numerator, d.coeff.denominator) * sympy.pi**-n) == 0


def _gt_count(top):
    """Number of Gelfand-Tsetlin patterns with the given top row (= dim of the gl_n irrep)."""
    if len(top) == 1:
        return 1
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    total = 0

    def rec(i, row):
        nonlocal total
        if i == len(ranges):
            total += _gt_count(row)
            return
        for v in ranges[i]:
            rec(i + 1, row + [v])

    rec(0, [])
    return total


@given(st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_weyl_dim_vs_gelfand_tsetlin(parts):
    lam = sorted(parts, reverse=True)
    assert weyl_dim(lam) == _gt_count(lam)


def test_weyl_dim_examples():
    assert weyl_dim([0, 0, 0]) == 1
    assert weyl_dim([1, 0]) == 2
    assert weyl_dim([1, 0, 0]) == 3
    assert weyl_dim([Fraction(1, 2), Fraction(-1, 2)]) == 2
    with pytest.raises(ValueError):
        weyl_dim([Fraction(1, 2), 0])
    with pytest.raises(ValueError):
        weyl_dim([0, 1])


def test_k_type_dim():
    # (3,2,1) - (1,0,-1) = (2,2,2): one-dimensional
    assert k_type_dim(HCParam([3, 2, 1])) == 1
    assert k_type_dim(HCParam([4, 2, 1])) == weyl_dim([3, 2, 2]) == 3


def test_s_exponent():
    assert s_exponent(3) == Fraction(5, 2)
    assert s_exponent(4) == 7
    assert s_exponent(5) == 7
    with pytest.raises(ValueError):
        s_exponent(2)


def test_covolume_example():
    v = covolume(make_field(1), 3)
    assert v == SymbolicReal(Fraction(1, 27648), pi_exp=3)
    assert v.sqrtD_exp == 4  # |D|^2
    assert v.to_json() == {"coeff": "1/27648", "pi_exp": 3, "sqrtD_exp": 0}


@pytest.mark.parametrize("k", FIELDS)
@pytest.mark.parametrize("n", range(3, 9))
def test_covolume_shape(k, n):
    v = covolume(make_field(k), n)
    assert v.pi_exp == n and v.coeff > 0
    d_power = Fraction(v.sqrtD_exp, 2)
    assert d_power == (Fraction(n * n - 1, 4) if n % 2 else Fraction(n * (n + 2), 4))


@pytest.mark.parametrize("k", FIELDS)
def test_covolume_against_numeric_product(k):
    from suspec.selfcheck import covolume_numeric

    for n in (3, 4, 5):
        exact = to_float(covolume(make_field(k), n), 128)
        assert mpmath.almosteq(covolume_numeric(k, n), exact, 1e-9)


def test_multiplicity_examples():
    fld = make_field(1)
    tau = HCParam([3, 2, 1])
    with pytest.warns(IntegralityWarning):
        r = multiplicity(fld, 3, tau, 1)
    assert r.exact == Fraction(7, 24576) and r.error_bound is None
    r = multiplicity(fld, 3, tau, 24576)
    assert r.exact == 7
    assert r.to_json()["exact"] == "7"


def test_multiplicity_errors():
    fld = make_field(1)
    with pytest.raises(ValueError):
        multiplicity(fld, 3, HCParam([2, 1, 0]), 1)
    with pytest.raises(ValueError):
        multiplicity(fld, 4, HCParam([3, 2, 1]), 1)
    with pytest.raises(ValueError):
        multiplicity(fld, 3, HCParam([3, 2, 1]), 0)


@given(st.sampled_from(FIELDS), st.sampled_from([3, 5, 7]).flatmap(lambda n: integrable_taus(n)), st.integers(1, 10**9))
def test_multiplicity_odd_rational_and_linear(k, tau, h):
    fld = make_field(k)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegralityWarning)
        r1 = multiplicity(fld, tau.n, tau, 1)
        rh = multiplicity(fld, tau.n, tau, h)
    assert r1.exact is not None and r1.exact > 0
    assert rh.exact == h * r1.exact
    assert rh.main_term == r1.main_term * h
    # m / vol = d_tau exactly
    assert rh.main_term / (covolume(fld, tau.n) * h) == formal_degree(tau)


def test_multiplicity_even():
    fld = make_field(2)
    tau = HCParam([4, 3, 2, 1])
    r = multiplicity(fld, 4, tau, 10)
    assert r.exact is None and r.error_bound is None and "bound requires C" in r.notes
    r = multiplicity(fld, 4, tau, 10, ErrorInputs(m=5, C=2.0))
    assert r.error_bound == pytest.approx(2.0 * 10 / 5**4)
    r = multiplicity(fld, 4, tau, 10, ErrorInputs(m=5, kappa_abs=1.0, sum_cusp_vol=1.0))
    assert r.error_constant == pytest.approx(error_constant(4, 2, 1.0, k_type_dim(tau), 1.0))
    with pytest.raises(ValueError):
        ErrorInputs(m=2, C=1.0)
    with pytest.raises(ValueError):
        ErrorInputs(m=5)


def test_error_constant():
    assert error_constant(4, 1, 1, 1, 1) == pytest.approx(1600)
    assert error_constant(4, 1, 1, 1, 2) == pytest.approx(3200)
    assert error_constant(4, 1, 0, 1, 1) == 0
    with pytest.raises(ValueError):
        error_constant(3, 1, 1, 1, 1)


def test_n2_volume_bound():
    assert n2_volume_lower_bound(2, 3, 3).exact() == Fraction(3, 4)
    assert n2_volume_lower_bound(2, 3, 4).exact() == 1
    b = n2_volume_lower_bound(1, 4, 3)
    assert b.exact() is None
    assert float(n2_volume_lower_bound(1, 4, 6)) == pytest.approx(2 * float(b))
    with pytest.raises(ValueError):
        n2_volume_lower_bound(1, 3, 2)


def test_positivity_threshold():
    fld = make_field(1)
    tau = HCParam([3, 2, 1])
    assert positivity_threshold(fld, 3, tau, 0.0) == 0
    assert positivity_threshold(fld, 3, tau, 7 / 24576) == pytest.approx(1)
    assert positivity_threshold(fld, 3, tau, 8 * 7 / 24576) == pytest.approx(2)


# ---------------------------------------------------------------------------
# Heisenberg group

small_q = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 6))
complex_q = st.builds(ComplexRational, small_q, small_q)


@st.composite
def elements(draw, n):
    x = draw(st.lists(complex_q, min_size=n - 1, max_size=n - 1))
    return HeisenbergElement(tuple(x), draw(small_q))


def test_complex_rational():
    assert I * I == -ONE
    assert (ComplexRational(1, 2) * ComplexRational(3, -1)) == ComplexRational(5, 5)
    assert ComplexRational(3, 4).abs2() == 25
    assert ComplexRational(1, 2).conj() == ComplexRational(1, -2)
    assert hash(ComplexRational(1, 0)) == hash(ONE)
    with pytest.raises(AttributeError):
        ONE.re = Fraction(2)


def test_heisenberg_examples():
    a = HeisenbergElement((I, ZERO), 0)
    b = HeisenbergElement((ONE, ZERO), 0)
    assert heisenberg_mul(a, b).mu == 1
    c = heisenberg_mul(HeisenbergElement.central(3, 2), HeisenbergElement.central(3, Fraction(1, 3)))
    assert c == HeisenbergElement.central(3, Fraction(7, 3))
    ident = heisenberg_matrix(HeisenbergElement.identity(4))
    assert all(ident[i][j] == (ONE if i == j else ZERO) for i in range(5) for j in range(5))
    assert heisenberg_matrix(HeisenbergElement.central(3, 1))[3][3] == ComplexRational(1, 1)
    with pytest.raises(ValueError):
        heisenberg_mul(HeisenbergElement.identity(3), HeisenbergElement.identity(4))


@given(st.integers(3, 5).flatmap(lambda n: st.tuples(elements(n), elements(n), elements(n))))
def test_heisenberg_group_laws(abc):
    a, b, c = abc
    assert heisenberg_mul(heisenberg_mul(a, b), c) == heisenberg_mul(a, heisenberg_mul(b, c))
    assert heisenberg_mul(a, heisenberg_inverse(a)) == HeisenbergElement.identity(a.n)


@given(st.integers(3, 5).flatmap(lambda n: st.tuples(elements(n), elements(n))))
def test_heisenberg_matrix_homomorphism(ab):
    a, b = ab
    n = a.n
    ma = heisenberg_matrix(a)
    assert mat_mul(ma, heisenberg_matrix(b)) == heisenberg_matrix(heisenberg_mul(a, b))
    s = hermitian_form(n)
    assert mat_mul(mat_mul(conj_transpose(ma), s), ma) == s


def test_heisenberg_matrix_vs_sympy():
    # symbolic check of the homomorphism for n = 3 with generic entries
    n = 3
    syms = sympy.symbols("a1 b1 a2 b2 m c1 d1 c2 d2 l", real=True)
    a1, b1, a2, b2, m, c1, d1, c2, d2, l = syms

    def sym_matrix(x, mu):
        size = n + 1
        mat = sympy.eye(size)
        norm = sum(sympy.expand(v * sympy.conjugate(v)) for v in x) / 2
        for r in (0, n):
            mat[r, 0] += -sympy.I * mu - norm
            mat[r, n] += sympy.I * mu + norm
            for j, v in enumerate(x, start=1):
                mat[r, j] += v
        for j, v in enumerate(x, start=1):
            mat[j, 0] += -sympy.conjugate(v)
            mat[j, n] += sympy.conjugate(v)
        return mat

    x = [a1 + sympy.I * b1, a2 + sympy.I * b2]
    y = [c1 + sympy.I * d1, c2 + sympy.I * d2]
    herm = sum(xi * sympy.conjugate(yi) for xi, yi in zip(x, y))
    prod = sym_matrix(x, m) * sym_matrix(y, l)
    target = sym_matrix([xi + yi for xi, yi in zip(x, y)], m + l + sympy.im(sympy.expand(herm)))
    assert sympy.simplify(sympy.expand(prod - target)) == sympy.zeros(n + 1)
    s = sympy.diag(1, 1, 1, -1)
    mat = sym_matrix(x, m)
    assert sympy.simplify(sympy.expand(mat.H * s * mat - s)) == sympy.zeros(n + 1)


def test_cohomological_boundary():
    # tau_n - tau_(n+1) must reach n(n+1)/2 + 1, stricter than integrability's n + 1
    assert validate(HCParam([3, 2, 1])).cohomological
    flags = validate(HCParam([3, 2, 0]))
    assert flags.integrable and not flags.cohomological
