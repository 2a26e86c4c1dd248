"""
Exceptions raised by the exact algebra layer.

Every failure of an exact computation is reported with one of these classes;
nothing in the engine falls back to approximations.
"""


class AlgebraError(Exception):
    """
    Base class for mathematical failures in the engine.
    """


class DivisionByZero(AlgebraError, ZeroDivisionError):
    """Division by an exact zero constant or function."""


class NoClosedForm(AlgebraError):
    """
    An antiderivative (or monomial coordinates) would leave the algebra of
    exponential polynomials.
    """


class PoleAtPoint(AlgebraError):
    """A coefficient function has a vanishing denominator at an evaluation point."""


class SingularWronskian(AlgebraError):
    """The Wronskian determinant of a fundamental system is zero."""


class ArityMismatch(AlgebraError):
    """The number of supplied functions does not match the operator order."""


class NotStieltjes(AlgebraError):
    """An operator was used as a boundary condition but is not a Stieltjes functional."""


class Inconsistent(AlgebraError):
    """A linear system has no solution."""


class RankDeficient(AlgebraError):
    """A matrix lacks the full column rank an operation requires."""
