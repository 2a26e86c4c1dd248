"""
Exceptions for boundary problems, composition and factorization.
"""

from algebra.exceptions import AlgebraError


class BoundaryProblemError(AlgebraError):
    """
    Base class for failures of boundary-problem operations.
    """


class InvalidBasis(BoundaryProblemError):
    """Spanning elements of a condition or function space are linearly dependent."""


class InvalidFundamentalSystem(BoundaryProblemError):
    """A supplied fundamental system is not a basis of the operator kernel."""


class MissingFundamentalSystem(BoundaryProblemError):
    """No kernel basis was supplied and none can be computed."""


class NotRegular(BoundaryProblemError):
    """The problem does not have a unique generalized Green's operator."""


class NotSemiRegular(NotRegular):
    """The conditions do not determine kernel elements uniquely."""


class BadFactorization(BoundaryProblemError):
    """The supplied factors do not multiply to the problem operator."""


class OrderMismatch(BoundaryProblemError):
    """Factor orders do not add up to the order of the factored operator."""


class SearchExhausted(BoundaryProblemError):
    """No exceptional space from the candidate pool satisfies the reverse order law."""
