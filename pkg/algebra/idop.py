"""
Integro-differential operators in normal form.

An operator is a finite sum of function coefficients times words. The words
are

    ('D', i)            derivative of order i (i = 0 is the identity)
    ('A', k)            integral from 0 to x, applied after multiplication by
                        the kernel k
    ('E', c, i)         evaluation at c of the i-th derivative
    ('EA', c, k)        evaluation at c of the integral with kernel k

Kernels are either monomials ('m', lam, deg) standing for x^deg*exp(lam*x),
or ('q', f) for a quotient f that is not an exponential polynomial. Since the
integral starts at 0, evaluating it at 0 gives zero and such words never
appear. Boundary words always carry constant coefficients after a left
multiplication by an evaluation, which the product rules below ensure.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .constants import ExpConstant, ZERO, as_fraction, format_rational, join_signed
from .exceptions import ArityMismatch, NoClosedForm, NotStieltjes, SingularWronskian
from .funcalg import FunctionExpr, render_monomial
from .linalg import laplace_determinant, minor_matrix

logger = logging.getLogger(__name__)

Word = tuple
Kernel = tuple

UNIT_KERNEL: Kernel = ('m', Fraction(0), 0)
IDENTITY_WORD: Word = ('D', 0)


def kernel_function(kernel: Kernel) -> FunctionExpr:
    if kernel[0] == 'm':
        return FunctionExpr.monomial(kernel[2], kernel[1])
    return kernel[1]


def kernel_terms(function: FunctionExpr) -> List[Tuple[ExpConstant, Kernel]]:
    """
    Split a kernel function into constant multiples of canonical kernels.
    """
    if function.is_zero():
        return []
    if function.is_polynomial():
        return [
            (coefficient, ('m', frequency, degree))
            for (frequency, degree), coefficient in sorted(function.numerator.coordinates().items())
        ]
    # quotient kernels carry a numerator with leading coefficient 1
    _, lead = function.numerator.leading()
    return [(lead, ('q', function.scale(lead.inverse())))]


def kernel_sort_key(kernel: Kernel):
    if kernel[0] == 'm':
        return (0, kernel[1], kernel[2], '')
    return (1, Fraction(0), 0, str(kernel[1]))


def word_sort_key(word: Word):
    """
    Printing order: derivatives (descending), integrals, then boundary words
    by point with local words before integral ones.
    """
    kind = word[0]
    if kind == 'D':
        return (0, -word[1])
    if kind == 'A':
        return (1, kernel_sort_key(word[1]))
    if kind == 'E':
        return (2, word[1], 0, word[2])
    return (2, word[1], 1, kernel_sort_key(word[2]))


def is_boundary_word(word: Word) -> bool:
    return word[0] in ('E', 'EA')


def _add_term(acc: Dict[Word, FunctionExpr], word: Word, coefficient: FunctionExpr) -> None:
    if coefficient.is_zero():
        return
    if word[0] == 'EA' and word[1] == 0:
        return
    current = acc.get(word)
    total = coefficient if current is None else current + coefficient
    if total.is_zero():
        acc.pop(word, None)
    else:
        acc[word] = total


class IdOperator:
    """
    Integro-differential operator kept in normal form.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Dict[Word, FunctionExpr] = None):
        acc: Dict[Word, FunctionExpr] = {}
        for word, coefficient in (terms or {}).items():
            _add_term(acc, word, FunctionExpr.coerce(coefficient))
        self._terms = acc

    @classmethod
    def _wrap(cls, acc: Dict[Word, FunctionExpr]) -> 'IdOperator':
        obj = cls.__new__(cls)
        obj._terms = acc
        return obj

    @classmethod
    def zero(cls) -> 'IdOperator':
        return cls()

    @classmethod
    def identity(cls) -> 'IdOperator':
        return cls({IDENTITY_WORD: FunctionExpr.one()})

    @classmethod
    def function(cls, f) -> 'IdOperator':
        return cls({IDENTITY_WORD: FunctionExpr.coerce(f)})

    @classmethod
    def derivation(cls, order: int = 1) -> 'IdOperator':
        return cls({('D', order): FunctionExpr.one()})

    @classmethod
    def integral(cls, kernel_fn: Optional[FunctionExpr] = None) -> 'IdOperator':
        """
        The integral after multiplication by kernel_fn (default 1).
        """
        if kernel_fn is None:
            return cls({('A', UNIT_KERNEL): FunctionExpr.one()})
        acc: Dict[Word, FunctionExpr] = {}
        for coefficient, kernel in kernel_terms(FunctionExpr.coerce(kernel_fn)):
            _add_term(acc, ('A', kernel), FunctionExpr.constant(coefficient))
        return cls._wrap(acc)

    @classmethod
    def evaluation(cls, point, order: int = 0) -> 'IdOperator':
        return cls({('E', as_fraction(point), order): FunctionExpr.one()})

    @classmethod
    def integral_evaluation(cls, point, kernel_fn: Optional[FunctionExpr] = None) -> 'IdOperator':
        return cls.evaluation(point) * cls.integral(kernel_fn)

    @classmethod
    def differential(cls, coefficients: Sequence) -> 'IdOperator':
        """
        sum_i coefficients[i] * D^i.
        """
        return cls({('D', i): FunctionExpr.coerce(c) for i, c in enumerate(coefficients)})

    @property
    def terms(self) -> Dict[Word, FunctionExpr]:
        return dict(self._terms)

    def sorted_terms(self) -> List[Tuple[Word, FunctionExpr]]:
        return sorted(self._terms.items(), key=lambda item: word_sort_key(item[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdOperator):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.keys()))

    def __neg__(self) -> 'IdOperator':
        return IdOperator._wrap({w: -f for w, f in self._terms.items()})

    def __add__(self, other) -> 'IdOperator':
        other = _coerce_operator(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for word, coefficient in other._terms.items():
            _add_term(acc, word, coefficient)
        return IdOperator._wrap(acc)

    __radd__ = __add__

    def __sub__(self, other) -> 'IdOperator':
        other = _coerce_operator(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'IdOperator':
        return (-self) + other

    def __mul__(self, other) -> 'IdOperator':
        other = _coerce_operator(other)
        if other is None:
            return NotImplemented
        return op_multiply(self, other)

    def __rmul__(self, other) -> 'IdOperator':
        other = _coerce_operator(other)
        if other is None:
            return NotImplemented
        return op_multiply(other, self)

    def __pow__(self, power: int) -> 'IdOperator':
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = IdOperator.identity()
        for _ in range(power):
            result = op_multiply(result, self)
        return result

    def scale(self, constant) -> 'IdOperator':
        """Multiply by a constant or by a function from the left."""
        factor = FunctionExpr.coerce(constant)
        acc: Dict[Word, FunctionExpr] = {}
        for word, coefficient in self._terms.items():
            _add_term(acc, word, factor * coefficient)
        return IdOperator._wrap(acc)

    def apply(self, f: FunctionExpr) -> FunctionExpr:
        return op_apply(self, f)

    # classification

    def is_differential(self) -> bool:
        return all(word[0] == 'D' for word in self._terms)

    def is_boundary(self) -> bool:
        return bool(self._terms) and all(is_boundary_word(word) for word in self._terms)

    def is_stieltjes(self) -> bool:
        return self.is_boundary() and all(f.is_constant() for f in self._terms.values())

    def order(self) -> int:
        orders = [word[1] for word in self._terms if word[0] == 'D']
        return max(orders) if orders else 0

    def leading_coefficient(self) -> FunctionExpr:
        return self._terms.get(('D', self.order()), FunctionExpr.zero())

    def is_monic_differential(self) -> bool:
        return self.is_differential() and bool(self._terms) and self.leading_coefficient().is_one()

    def differential_coefficients(self) -> List[FunctionExpr]:
        if not self.is_differential():
            raise ValueError(f'{self} is not a differential operator')
        return [self._terms.get(('D', i), FunctionExpr.zero()) for i in range(self.order() + 1)]

    def has_constant_coefficients(self) -> bool:
        return all(f.is_constant() for f in self._terms.values())

    def coordinates(self) -> Dict[Word, ExpConstant]:
        """
        Coordinates of a Stieltjes condition in the basis of boundary words
        with monomial kernels.
        """
        if not self.is_stieltjes():
            raise NotStieltjes(f'{self} is not a Stieltjes boundary condition')
        coordinates = {}
        for word, coefficient in self._terms.items():
            if word[0] == 'EA' and word[2][0] != 'm':
                raise NoClosedForm(f'Kernel {word[2][1]} has no monomial coordinates')
            coordinates[word] = coefficient.constant_value()
        return coordinates

    @classmethod
    def from_coordinates(cls, coordinates: Dict[Word, ExpConstant]) -> 'IdOperator':
        acc: Dict[Word, FunctionExpr] = {}
        for word, value in coordinates.items():
            _add_term(acc, word, FunctionExpr.constant(value))
        return cls._wrap(acc)

    def functional_value(self, f: FunctionExpr) -> ExpConstant:
        """
        The number obtained by applying a Stieltjes condition to f.
        """
        if not self.is_stieltjes():
            raise NotStieltjes(f'{self} is not a Stieltjes boundary condition')
        value = ZERO
        for word, coefficient in self._terms.items():
            value = value + coefficient.constant_value() * _apply_word(word, f).constant_value()
        return value

    def __str__(self) -> str:
        pieces = [_render_term(word, coefficient) for word, coefficient in self.sorted_terms()]
        return join_signed(pieces)

    def __repr__(self) -> str:
        return f'IdOperator({self})'


def _coerce_operator(value) -> Optional[IdOperator]:
    if isinstance(value, IdOperator):
        return value
    if isinstance(value, (int, Fraction, ExpConstant, FunctionExpr)):
        return IdOperator.function(value)
    return None


# rendering

def render_kernel(kernel: Kernel) -> str:
    if kernel[0] == 'm':
        return render_monomial(kernel[2], kernel[1])
    return str(kernel[1])


def render_word(word: Word) -> str:
    kind = word[0]
    if kind == 'D':
        return 'D' if word[1] == 1 else f'D^{word[1]}'
    if kind == 'A':
        return 'A' if word[1] == UNIT_KERNEL else f'A.{render_kernel(word[1])}'
    point = f'E[{format_rational(word[1])}]'
    if kind == 'E':
        return point if word[2] == 0 else f'{point}.{render_word(("D", word[2]))}'
    return f'{point}.{render_word(("A", word[2]))}'


def _render_term(word: Word, coefficient: FunctionExpr) -> str:
    if word == IDENTITY_WORD:
        return str(coefficient)
    text = render_word(word)
    if coefficient.is_one():
        return text
    if (-coefficient).is_one():
        return f'-{text}'
    if coefficient.is_atomic():
        return f'{coefficient}.{text}'
    return f'({coefficient}).{text}'


# multiplication

def _derivatives(g: FunctionExpr, count: int) -> List[FunctionExpr]:
    derivatives = [g]
    for _ in range(count):
        derivatives.append(derivatives[-1].differentiate())
    return derivatives


def _word_times_function(word: Word, g: FunctionExpr) -> Dict[Word, FunctionExpr]:
    """
    Normal form of word * g as a sum of function * word.
    """
    acc: Dict[Word, FunctionExpr] = {}
    kind = word[0]
    if kind == 'D':
        order = word[1]
        for k, derivative in enumerate(_derivatives(g, order)):
            _add_term(acc, ('D', order - k), derivative.scale(comb(order, k)))
    elif kind == 'A':
        for coefficient, kernel in kernel_terms(kernel_function(word[1]) * g):
            _add_term(acc, ('A', kernel), FunctionExpr.constant(coefficient))
    elif kind == 'E':
        point, order = word[1], word[2]
        for k, derivative in enumerate(_derivatives(g, order)):
            value = derivative.evaluate(point) * comb(order, k)
            _add_term(acc, ('E', point, order - k), FunctionExpr.constant(value))
    else:
        point = word[1]
        for coefficient, kernel in kernel_terms(kernel_function(word[2]) * g):
            _add_term(acc, ('EA', point, kernel), FunctionExpr.constant(coefficient))
    return acc


def _evaluate_left(point: Fraction, terms: Iterable[Tuple[Word, FunctionExpr]]) -> Dict[Word, FunctionExpr]:
    """
    Normal form of E[point] * (sum of f * word).
    """
    acc: Dict[Word, FunctionExpr] = {}
    for word, coefficient in terms:
        value = coefficient.evaluate(point)
        if not value:
            continue
        kind = word[0]
        if kind == 'D':
            target = ('E', point, word[1])
        elif kind == 'A':
            target = ('EA', point, word[1])
        else:
            target = word
        _add_term(acc, target, FunctionExpr.constant(value))
    return acc


@lru_cache(maxsize=8192)
def _word_times_word(first: Word, second: Word) -> Tuple[Tuple[Word, FunctionExpr], ...]:
    return tuple(_word_product(first, second).items())


def _word_product(first: Word, second: Word) -> Dict[Word, FunctionExpr]:
    kind = first[0]
    if kind == 'E':
        inner = _word_times_word(('D', first[2]), second)
        return _evaluate_left(first[1], inner)
    if kind == 'EA':
        inner = _word_times_word(('A', first[2]), second)
        return _evaluate_left(first[1], inner)

    acc: Dict[Word, FunctionExpr] = {}
    if kind == 'D':
        order = first[1]
        if order == 0:
            return {second: FunctionExpr.one()}
        if second[0] == 'D':
            return {('D', order + second[1]): FunctionExpr.one()}
        if second[0] == 'A':
            # D^i A m = D^(i-1) m
            return _word_times_function(('D', order - 1), kernel_function(second[1]))
        return acc

    # first is an integral with kernel m
    m = kernel_function(first[1])
    if second[0] == 'D':
        order = second[1]
        if order == 0:
            return {first: FunctionExpr.one()}
        # A m D = m - A m' - m(0) E[0]
        _add_term(acc, ('D', order - 1), m)
        for coefficient, kernel in kernel_terms(m.differentiate()):
            for word, f in _word_times_word(('A', kernel), ('D', order - 1)):
                _add_term(acc, word, f.scale(-coefficient))
        _add_term(acc, ('E', Fraction(0), order - 1), FunctionExpr.constant(-m.evaluate(0)))
        return acc
    antiderivative = m.integrate()
    if second[0] == 'A':
        # A m A n = (int m) A n - A (int m) n
        _add_term(acc, second, antiderivative)
        for coefficient, kernel in kernel_terms(antiderivative * kernel_function(second[1])):
            _add_term(acc, ('A', kernel), FunctionExpr.constant(-coefficient))
        return acc
    _add_term(acc, second, antiderivative)
    return acc


def op_multiply(left: IdOperator, right: IdOperator) -> IdOperator:
    """
    Composition left * right reduced to normal form.
    """
    acc: Dict[Word, FunctionExpr] = {}
    for first, f1 in left._terms.items():
        for second, f2 in right._terms.items():
            for middle, h in _word_times_function(first, f2).items():
                prefix = f1 * h
                for word, g in _word_times_word(middle, second):
                    _add_term(acc, word, prefix * g)
    return IdOperator._wrap(acc)


def op_add(left: IdOperator, right: IdOperator) -> IdOperator:
    return left + right


# application

def _apply_word(word: Word, f: FunctionExpr) -> FunctionExpr:
    kind = word[0]
    if kind == 'D':
        return f.differentiate(word[1])
    if kind == 'A':
        return (kernel_function(word[1]) * f).integrate()
    if kind == 'E':
        return FunctionExpr.constant(f.differentiate(word[2]).evaluate(word[1]))
    return FunctionExpr.constant((kernel_function(word[2]) * f).integrate().evaluate(word[1]))


def op_apply(operator: IdOperator, f: FunctionExpr) -> FunctionExpr:
    result = FunctionExpr.zero()
    for word, coefficient in operator._terms.items():
        result = result + coefficient * _apply_word(word, f)
    return result


# variation of constants

def wronskian_matrix(functions: Sequence[FunctionExpr]) -> List[List[FunctionExpr]]:
    columns = [_derivatives(u, len(functions) - 1) for u in functions]
    return [[column[i] for column in columns] for i in range(len(functions))]


def wronskian(functions: Sequence[FunctionExpr]) -> FunctionExpr:
    return laplace_determinant(wronskian_matrix(functions), FunctionExpr.zero(), FunctionExpr.one())


def fundamental_right_inverse(operator: IdOperator, fundamental_system: Sequence[FunctionExpr]) -> IdOperator:
    """
    Right inverse of a monic differential operator from a fundamental
    system u_1..u_n: sum_i u_i * A * (d_i / d), where d is the Wronskian
    and d_i the signed minors of its last row.
    """
    if not operator.is_monic_differential():
        raise ValueError(f'{operator} is not a monic differential operator')
    size = operator.order()
    if len(fundamental_system) != size:
        raise ArityMismatch(f'Operator of order {size} needs {size} functions, got {len(fundamental_system)}')
    matrix = wronskian_matrix(fundamental_system)
    determinant = laplace_determinant(matrix, FunctionExpr.zero(), FunctionExpr.one())
    if determinant.is_zero():
        raise SingularWronskian('Wronskian of the fundamental system vanishes')
    result = IdOperator.zero()
    for i, u in enumerate(fundamental_system):
        minor = laplace_determinant(minor_matrix(matrix, size - 1, i), FunctionExpr.zero(), FunctionExpr.one())
        if minor.is_zero():
            continue
        sign = 1 if (size - 1 + i) % 2 == 0 else -1
        kernel = (minor / determinant).scale(sign)
        result = result + IdOperator.function(u) * IdOperator.integral(kernel)
    logger.debug(f'Right inverse of {operator}: {result}')
    return result
