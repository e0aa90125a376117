from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pmech.errors import DivisionByZero, PoleAtClassicalLimit
from pmech.exactnum import (
    GR_I,
    GR_ONE,
    GaussianRational,
    H1,
    H2,
    HPolynomial,
    RF_H1,
    RF_H2,
    RF_I,
    RF_ONE,
    RF_ZERO,
    RationalFunction,
    hpoly_gcd,
)

from conftest import random_hpoly, random_rf


H1H2 = RF_H1 + RF_H2
LAM1 = RF_H2 / H1H2
LAM2 = RF_H1 / H1H2


class TestGaussianRational:
    def test_arithmetic(self):
        a = GaussianRational(1, 2)
        b = GaussianRational(Fraction(1, 2), -1)
        assert a + b == GaussianRational(Fraction(3, 2), 1)
        assert a * b == GaussianRational(Fraction(5, 2), 0)
        assert a - a == GaussianRational(0)
        assert GR_I * GR_I == GaussianRational(-1)

    def test_division(self):
        a = GaussianRational(1, 1)
        assert a / a == GR_ONE
        assert (GR_ONE / GR_I) == -GR_I
        with pytest.raises(DivisionByZero):
            a / GaussianRational(0)

    def test_conjugate_and_power(self):
        a = GaussianRational(2, -3)
        assert a.conjugate() == GaussianRational(2, 3)
        assert a**0 == GR_ONE
        assert a**3 == a * a * a
        assert a**-1 == a.inverse()


class TestRationalFunctionArithmetic:
    def test_lambda_sum_is_one(self):
        assert LAM1 + LAM2 == RF_ONE

    def test_antiderivative_scalar_sum(self):
        # 1/(i h1) + 1/(i h2) = (h1+h2)/(i h1 h2)
        total = 1 / (RF_I * RF_H1) + 1 / (RF_I * RF_H2)
        assert total == H1H2 / (RF_I * RF_H1 * RF_H2)

    def test_cancellation(self):
        lhs = RF_H1 * RF_H2 / H1H2**2
        rhs = H1H2 / (RF_H1 * RF_H2)
        assert lhs * rhs == 1 / H1H2

    def test_divide_by_zero(self):
        with pytest.raises(DivisionByZero):
            RF_ONE / RF_ZERO
        with pytest.raises(DivisionByZero):
            RF_ZERO.inverse()

    def test_canonical_denominator_is_monic(self):
        f = RationalFunction(HPolynomial.constant(1), HPolynomial({(1, 1): GR_I}))
        assert f.den == HPolynomial({(1, 1): GR_ONE})
        assert f.num == HPolynomial.constant(-GR_I)


class TestDerivative:
    def test_quotient_rule_example(self):
        assert LAM1.diff(H2) == RF_H1 / H1H2**2

    def test_constant_in_h2(self):
        assert RF_H1.diff(H2) == RF_ZERO

    def test_derivative_value_at_zero(self):
        # d/dh2 [h1/(h1+h2)] at h2=0 equals -1/h1
        deriv = LAM2.diff(H2)
        value, _ = deriv.eval_h2_jet()
        assert value == -1 / RF_H1


class TestJet:
    def test_lambda1_jet(self):
        assert LAM1.eval_h2_jet() == (RF_ZERO, 1 / RF_H1)

    def test_lambda2_jet(self):
        assert LAM2.eval_h2_jet() == (RF_ONE, -(1 / RF_H1))

    def test_pole(self):
        with pytest.raises(PoleAtClassicalLimit):
            (1 + RF_H1 / RF_H2).eval_h2_jet()


class TestEvaluation:
    def test_substitution(self):
        assert LAM1.subs(1, 1) == GaussianRational(Fraction(1, 2))
        assert LAM2.subs(2, 1) == GaussianRational(Fraction(2, 3))

    def test_pole_at_point(self):
        from pmech.errors import PoleAtEvaluation

        with pytest.raises(PoleAtEvaluation):
            LAM1.subs(1, -1)


# -- property tests ----------------------------------------------------------

small_fraction = st.fractions(
    min_value=Fraction(-4), max_value=Fraction(4), max_denominator=3
)


@st.composite
def gaussians(draw):
    return GaussianRational(draw(small_fraction), draw(small_fraction))


@st.composite
def hpolys(draw, max_terms=3):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)),
            gaussians(),
            max_size=max_terms,
        )
    )
    return HPolynomial(terms)


@st.composite
def rationals(draw):
    num = draw(hpolys())
    den = draw(hpolys().filter(lambda p: not p.is_zero()))
    return RationalFunction(num, den)


@settings(max_examples=60, deadline=None)
@given(rationals(), rationals(), rationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a + RF_ZERO == a
    assert a * RF_ONE == a
    assert a + (-a) == RF_ZERO
    if not a.is_zero():
        assert a * a.inverse() == RF_ONE


@settings(max_examples=60, deadline=None)
@given(rationals(), rationals())
def test_leibniz_rule(a, b):
    for var in (H1, H2):
        assert (a * b).diff(var) == a.diff(var) * b + a * b.diff(var)


@settings(max_examples=60, deadline=None)
@given(rationals(), rationals())
def test_jet_multiplication_law(a, b):
    try:
        va, da = a.eval_h2_jet()
        vb, db = b.eval_h2_jet()
    except PoleAtClassicalLimit:
        return
    vab, dab = (a * b).eval_h2_jet()
    assert vab == va * vb
    assert dab == va * db + da * vb


def test_gcd_reduction_removes_common_factor(rng):
    for _ in range(40):
        a = random_hpoly(rng, nonzero=True)
        b = random_hpoly(rng, nonzero=True)
        c = random_hpoly(rng, nonzero=True)
        f = RationalFunction(a * c, b * c)
        assert f == RationalFunction(a, b)


def test_gcd_against_sympy(rng):
    sympy = pytest.importorskip("sympy")
    h1s, h2s = sympy.symbols("h1 h2")

    def to_sympy(poly):
        expr = sympy.Integer(0)
        for (a1, a2), coeff in poly.terms.items():
            expr += (
                sympy.Rational(coeff.re.numerator, coeff.re.denominator)
                + sympy.I * sympy.Rational(coeff.im.numerator, coeff.im.denominator)
            ) * h1s**a1 * h2s**a2
        return expr

    def from_sympy(expr):
        poly = sympy.Poly(expr, h1s, h2s, domain="QQ_I")
        terms = {}
        for exps, coeff in poly.terms():
            value = sympy.expand(sympy.sympify(coeff))
            re = sympy.re(value)
            im = sympy.im(value)
            terms[tuple(exps)] = GaussianRational(
                Fraction(int(sympy.numer(re)), int(sympy.denom(re))),
                Fraction(int(sympy.numer(im)), int(sympy.denom(im))),
            )
        return HPolynomial(terms)

    for _ in range(25):
        a = random_hpoly(rng, nonzero=True)
        b = random_hpoly(rng, nonzero=True)
        c = random_hpoly(rng, nonzero=True)
        ours = hpoly_gcd(a * c, b * c)
        theirs = from_sympy(sympy.gcd(to_sympy(a * c), to_sympy(b * c))).monic()
        assert ours == theirs
