from fractions import Fraction

import pytest
from hypothesis import given, settings

from algebra.constants import ExpConstant
from algebra.exceptions import DivisionByZero, NoClosedForm, PoleAtPoint
from algebra.funcalg import (
    ExpPolynomial,
    FunctionExpr,
    fn_add,
    fn_differentiate,
    fn_div,
    fn_evaluate,
    fn_integrate,
    fn_mul,
)

from .strategies import exp_polynomials

x = FunctionExpr.x()
one = FunctionExpr.one()
exp_x = FunctionExpr.monomial(0, 1)
exp_minus_x = FunctionExpr.monomial(0, -1)


class TestExpPolynomial:

    def test_coordinates_collect_like_terms(self):
        p = ExpPolynomial.monomial(1, 1, 2) + ExpPolynomial.monomial(1, 1, -1) + ExpPolynomial.constant(3)
        assert p.coordinates() == {(Fraction(0), 0): ExpConstant.rational(3), (Fraction(1), 1): ExpConstant.rational(1)}

    def test_shift_multiplies_by_exponential(self):
        assert ExpPolynomial.monomial(2).shift(Fraction(1)) == ExpPolynomial.monomial(2, 1)

    def test_unit_monomials(self):
        assert ExpPolynomial.monomial(0, -1, 3).is_unit_monomial()
        assert not ExpPolynomial.monomial(1).is_unit_monomial()


class TestFunctionExpr:

    def test_derivative_of_exponential_polynomial(self):
        assert str((x * exp_x).differentiate()) == 'x*exp(x) + exp(x)'
        assert fn_differentiate(x ** 3) == FunctionExpr.monomial(2, 0, 3)

    def test_integral_has_base_point_zero(self):
        assert str(fn_integrate(x)) == '1/2*x^2'
        assert str(exp_x.integrate()) == 'exp(x) - 1'
        assert (x * exp_x).integrate() == x * exp_x - exp_x + 1

    def test_evaluation_at_rational_points(self):
        assert fn_evaluate(exp_minus_x, 1) == ExpConstant.exp(-1)
        assert (x ** 2 + 1).evaluate(Fraction(1, 2)) == ExpConstant.rational(Fraction(5, 4))
        assert exp_x.evaluate(0) == ExpConstant.rational(1)

    def test_quotient_cancellation(self):
        quotient = FunctionExpr(ExpPolynomial.monomial(0, 2) - ExpPolynomial.one(),
                                ExpPolynomial.monomial(0, 1) - ExpPolynomial.one())
        assert quotient.is_polynomial()
        assert quotient == exp_x + 1
        assert (x / x).is_one()

    def test_quotient_cancellation_over_exponential_constants(self):
        e = ExpConstant.exp(1)
        shifted = ExpPolynomial.monomial(0, 1) - ExpPolynomial.one()
        quotient = FunctionExpr(shifted.scale(e), shifted)
        assert quotient.is_polynomial()
        assert quotient == FunctionExpr.constant(e)
        assert fn_integrate(quotient) == x.scale(e)

    def test_quotient_cancellation_with_fractional_constants(self):
        c = ExpConstant.rational(1) / (ExpConstant.exp(1) - 1)
        quotient = FunctionExpr((x ** 2 - 1).numerator.scale(c), (x - 1).numerator)
        assert quotient.is_polynomial()
        assert quotient == (x + 1).scale(c)
        assert fn_integrate(quotient) == (x ** 2 / 2 + x).scale(c)

    def test_unit_denominators_are_divided_out(self):
        assert one / exp_x == exp_minus_x
        assert (x / exp_x).is_polynomial()

    def test_rational_function_coefficients(self):
        f = FunctionExpr(ExpPolynomial.monomial(1, 0, 2), ExpPolynomial.monomial(2) + ExpPolynomial.one())
        assert not f.is_polynomial()
        assert f.evaluate(0).is_zero()
        assert f.evaluate(1) == ExpConstant.rational(1)
        with pytest.raises(NoClosedForm):
            f.integrate()
        # d/dx 2x/(x^2 + 1) = (2 - 2x^2)/(x^2 + 1)^2
        expected = (2 - 2 * x ** 2) / ((x ** 2 + 1) * (x ** 2 + 1))
        assert f.differentiate() == expected

    def test_pole_at_evaluation_point(self):
        f = one / (exp_x - 1)
        with pytest.raises(PoleAtPoint):
            f.evaluate(0)
        assert f.evaluate(1) == ExpConstant.rational(1) / (ExpConstant.exp(1) - 1)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            x / FunctionExpr.zero()

    def test_rendering(self):
        assert str(-Fraction(1, 2) * x ** 2 - Fraction(1, 2)) == '-1/2*x^2 - 1/2'
        assert str(FunctionExpr.monomial(0, 2) / (exp_x - 1)) == 'exp(2*x)/(exp(x) - 1)'
        assert str(FunctionExpr.monomial(1, Fraction(1, 2), ExpConstant.exp(1))) == 'exp(1)*x*exp(1/2*x)'
        assert str(FunctionExpr.zero()) == '0'

    @given(exp_polynomials())
    @settings(max_examples=60, deadline=None)
    def test_integration_inverts_differentiation(self, f):
        assert f.integrate().differentiate() == f
        assert f.integrate().evaluate(0).is_zero()

    @given(exp_polynomials(), exp_polynomials())
    @settings(max_examples=60, deadline=None)
    def test_leibniz_rule(self, f, g):
        assert (f * g).differentiate() == f.differentiate() * g + f * g.differentiate()

    @given(exp_polynomials(), exp_polynomials())
    @settings(max_examples=40, deadline=None)
    def test_field_operations(self, f, g):
        assert fn_add(f, g) == f + g
        assert fn_mul(f, g) == fn_mul(g, f)
        if not g.is_zero():
            assert fn_mul(fn_div(f, g), g) == f
