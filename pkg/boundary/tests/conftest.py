from fractions import Fraction

import pytest

from algebra.funcalg import FunctionExpr
from algebra.idop import IdOperator
from boundary.problems import BoundaryProblem, CondSpace, FuncSpace

D = IdOperator.derivation()
A = IdOperator.integral()
x = FunctionExpr.x()
one = FunctionExpr.one()
exp_x = FunctionExpr.monomial(0, 1)
exp_minus_x = FunctionExpr.monomial(0, -1)


def E(point, order=0):
    return IdOperator.evaluation(Fraction(point), order)


def EA(point, kernel=None):
    return IdOperator.integral_evaluation(Fraction(point), kernel)


@pytest.fixture
def end_conditions():
    """u(1) = u'(1) = u'(0) = 0"""
    return CondSpace((E(1), E(1, 1), E(0, 1)))


@pytest.fixture
def mean_zero_problem(end_conditions):
    """u'' = f modulo constants: solvable exactly for f with mean zero on [0, 1]."""
    return BoundaryProblem(D ** 2, end_conditions, FuncSpace((one,)))


@pytest.fixture
def hyperbolic_problem(end_conditions):
    return BoundaryProblem(D ** 2 - 1, end_conditions, FuncSpace((x,)))


@pytest.fixture
def fourth_order_problem():
    return BoundaryProblem(
        D ** 4 - D ** 2,
        CondSpace((E(0, 1), E(0, 3), E(1), E(1, 1), E(1, 3))),
        FuncSpace((x,)),
    )
