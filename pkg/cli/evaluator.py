"""
Evaluation of parsed expressions into engine values.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from algebra.constants import ExpConstant
from algebra.funcalg import FunctionExpr
from algebra.idop import IdOperator
from boundary.problems import BoundaryProblem, CondSpace, FuncSpace, check_independent

from .exceptions import ExpressionTypeError
from .parser import BinaryOp, Call, Evaluation, Name, Negate, Node, Number, Power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FundamentalSystem:
    """
    Explicit kernel basis written as FS(...).
    """
    functions: Tuple[FunctionExpr, ...]


Value = Union[FunctionExpr, IdOperator, CondSpace, FuncSpace, BoundaryProblem, FundamentalSystem]

_KIND_NAMES = {
    FunctionExpr: 'function',
    IdOperator: 'operator',
    CondSpace: 'condition space',
    FuncSpace: 'function space',
    BoundaryProblem: 'boundary problem',
    FundamentalSystem: 'fundamental system',
}


def kind_name(value) -> str:
    return _KIND_NAMES.get(type(value), type(value).__name__)


def as_operator(value) -> IdOperator:
    if isinstance(value, IdOperator):
        return value
    if isinstance(value, FunctionExpr):
        return IdOperator.function(value)
    raise ExpressionTypeError(f'Expected an operator, got a {kind_name(value)}')


def as_function(value) -> FunctionExpr:
    if isinstance(value, FunctionExpr):
        return value
    if isinstance(value, IdOperator) and value.is_differential() and value.order() == 0:
        return value.terms.get(('D', 0), FunctionExpr.zero())
    raise ExpressionTypeError(f'Expected a function, got a {kind_name(value)}')


def as_rational(value) -> Fraction:
    function = as_function(value)
    if not function.is_constant() or not function.constant_value().is_rational():
        raise ExpressionTypeError(f'Expected a rational number, got {function}')
    return function.constant_value().to_fraction()


def _exponential(argument) -> FunctionExpr:
    function = as_function(argument)
    if not function.is_polynomial():
        raise ExpressionTypeError(f'exp() needs a linear argument r*x + s, got {function}')
    slope, offset = Fraction(0), Fraction(0)
    for (frequency, degree), coefficient in function.coordinates().items():
        if frequency != 0 or degree > 1 or not coefficient.is_rational():
            raise ExpressionTypeError(f'exp() needs a linear argument r*x + s, got {function}')
        if degree == 1:
            slope = coefficient.to_fraction()
        else:
            offset = coefficient.to_fraction()
    return FunctionExpr.monomial(0, slope, ExpConstant.exp(offset))


class Evaluator:
    """
    Turns an expression tree into functions, operators, spaces and problems.
    """

    def evaluate(self, node: Node) -> Value:
        method = getattr(self, f'visit_{type(node).__name__}')
        return method(node)

    def visit_Number(self, node: Number) -> FunctionExpr:
        return FunctionExpr.constant(node.value)

    def visit_Name(self, node: Name) -> Value:
        if node.name == 'x':
            return FunctionExpr.x()
        if node.name == 'd':
            return IdOperator.derivation()
        return IdOperator.integral()

    def visit_Evaluation(self, node: Evaluation) -> IdOperator:
        return IdOperator.evaluation(as_rational(self.evaluate(node.point)))

    def visit_Negate(self, node: Negate) -> Value:
        value = self.evaluate(node.operand)
        if isinstance(value, (FunctionExpr, IdOperator)):
            return -value
        raise ExpressionTypeError(f'Cannot negate a {kind_name(value)}')

    def visit_Power(self, node: Power) -> Value:
        value = self.evaluate(node.base)
        if isinstance(value, (FunctionExpr, IdOperator)):
            return value ** node.exponent
        raise ExpressionTypeError(f'Cannot raise a {kind_name(value)} to a power')

    def visit_BinaryOp(self, node: BinaryOp) -> Value:
        left = self.evaluate(node.left)
        right = self.evaluate(node.right)
        for value in (left, right):
            if not isinstance(value, (FunctionExpr, IdOperator)):
                raise ExpressionTypeError(f'Operator {node.op!r} does not apply to a {kind_name(value)}')
        functions = isinstance(left, FunctionExpr) and isinstance(right, FunctionExpr)
        if node.op == '+':
            return left + right if functions else as_operator(left) + as_operator(right)
        if node.op == '-':
            return left - right if functions else as_operator(left) - as_operator(right)
        if node.op in ('*', '.'):
            return left * right if functions else as_operator(left) * as_operator(right)
        if not isinstance(right, FunctionExpr):
            raise ExpressionTypeError('Cannot divide by an operator')
        if functions:
            return left / right
        return left.scale(right.inverse())

    def visit_Call(self, node: Call) -> Value:
        args = [self.evaluate(arg) for arg in node.args]
        if node.name == 'exp':
            return _exponential(args[0])
        if node.name == 'BC':
            conditions = tuple(as_operator(arg) for arg in args)
            for condition in conditions:
                if not condition.is_stieltjes():
                    raise ExpressionTypeError(f'{condition} is not a Stieltjes boundary condition')
            check_independent(conditions, 'boundary conditions')
            return CondSpace(conditions)
        if node.name == 'ES':
            functions = tuple(as_function(arg) for arg in args)
            check_independent(functions, 'exceptional functions')
            return FuncSpace(functions)
        if node.name == 'FS':
            return FundamentalSystem(tuple(as_function(arg) for arg in args))
        return self._problem(node.name, args)

    def _problem(self, name: str, args) -> BoundaryProblem:
        operator = as_operator(args[0])
        conditions = args[1]
        if not isinstance(conditions, CondSpace):
            raise ExpressionTypeError(f'{name} expects BC(...) as second argument, got a {kind_name(conditions)}')
        rest = list(args[2:])
        exceptional = FuncSpace()
        if name == 'GBP':
            exceptional = rest.pop(0)
            if not isinstance(exceptional, FuncSpace):
                raise ExpressionTypeError(f'GBP expects ES(...) as third argument, got a {kind_name(exceptional)}')
        fundamental = None
        if rest:
            if not isinstance(rest[0], FundamentalSystem):
                raise ExpressionTypeError(f'{name} expects FS(...) as last argument, got a {kind_name(rest[0])}')
            fundamental = rest[0].functions
        return BoundaryProblem(operator, conditions, exceptional, fundamental)


def eval_ast(node: Node) -> Value:
    return Evaluator().evaluate(node)
