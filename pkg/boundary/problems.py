"""
Generalized boundary problems (T, B, E).

T is a monic linear differential operator, B a finite-dimensional space of
Stieltjes boundary conditions and E an exceptional space of forcing functions
complementing the admissible right-hand sides. This module decides
regularity, computes compatibility conditions and builds the (generalized)
Green's operator. Span computations go through exact coordinates over
monomial bases.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

from django.conf import settings
from sympy import Poly, QQ, Rational as SymRational, Symbol

from algebra.constants import ExpConstant, ZERO
from algebra.exceptions import NoClosedForm, NotStieltjes
from algebra.funcalg import ExpPolynomial, FunctionExpr
from algebra.idop import IdOperator, fundamental_right_inverse, word_sort_key, wronskian
from algebra.linalg import KMatrix, inverse, is_invertible, kernel_basis, left_inverse, rank, row_reduce

from .exceptions import (
    BoundaryProblemError,
    InvalidBasis,
    InvalidFundamentalSystem,
    MissingFundamentalSystem,
    NotRegular,
    NotSemiRegular,
)

logger = logging.getLogger(__name__)

_LAMBDA = Symbol('lam')


@dataclass(frozen=True)
class FuncSpace:
    """
    Space of functions spanned by an ordered basis.
    """
    basis: Tuple[FunctionExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'basis', tuple(FunctionExpr.coerce(f) for f in self.basis))

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __str__(self) -> str:
        return 'ES(' + ', '.join(str(f) for f in self.basis) + ')'


@dataclass(frozen=True)
class CondSpace:
    """
    Space of Stieltjes boundary conditions spanned by an ordered basis.
    """
    basis: Tuple[IdOperator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'basis', tuple(self.basis))

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __str__(self) -> str:
        return 'BC(' + ', '.join(str(b) for b in self.basis) + ')'


Space = Union[FuncSpace, CondSpace]


# coordinates

def function_coordinates(funcs: Sequence[FunctionExpr]) -> Tuple[List[tuple], KMatrix]:
    """
    Monomial index (frequency, degree) and the matrix whose rows are the
    coordinates of funcs.
    """
    maps = [FunctionExpr.coerce(f).coordinates() for f in funcs]
    index = sorted(set().union(*maps)) if maps else []
    return index, KMatrix([[m.get(key, ZERO) for key in index] for m in maps], len(index))


def cond_coordinates(conds: Sequence[IdOperator]) -> Tuple[List[tuple], KMatrix]:
    """
    Boundary-word index and the matrix whose rows are the coordinates of conds.
    """
    maps = [b.coordinates() for b in conds]
    index = sorted(set().union(*maps), key=word_sort_key) if maps else []
    return index, KMatrix([[m.get(key, ZERO) for key in index] for m in maps], len(index))


def _coordinates(items: Sequence, conditions: bool):
    return cond_coordinates(items) if conditions else function_coordinates(items)


def _is_condition_list(items: Sequence) -> bool:
    return bool(items) and isinstance(items[0], IdOperator)


def extract_basis(items: Sequence) -> Tuple:
    """
    The elements of items, in order, that are independent of their
    predecessors.
    """
    items = list(items)
    if not items:
        return ()
    _, matrix = _coordinates(items, _is_condition_list(items))
    kept, kept_rows, current_rank = [], [], 0
    for item, row in zip(items, matrix.rows):
        trial = KMatrix(kept_rows + [row], matrix.ncols)
        trial_rank = rank(trial)
        if trial_rank > current_rank:
            kept.append(item)
            kept_rows.append(row)
            current_rank = trial_rank
    return tuple(kept)


def check_independent(items: Sequence, what: str) -> None:
    if not items:
        return
    try:
        _, matrix = _coordinates(items, _is_condition_list(items))
    except NoClosedForm as exc:
        logger.warning(f'Independence of {what} not checked: {exc}')
        return
    if rank(matrix) != len(items):
        raise InvalidBasis(f'The {what} are linearly dependent')


def reduced_basis(space: Space) -> Space:
    """
    Canonical basis of a space: the nonzero rows of the reduced echelon
    form of its coordinate matrix.
    """
    if not space.basis:
        return space
    conditions = isinstance(space, CondSpace)
    index, matrix = _coordinates(space.basis, conditions)
    reduction = row_reduce(matrix)
    rows = reduction.reduced.rows[:len(reduction.pivots)]
    if conditions:
        return CondSpace(tuple(
            IdOperator.from_coordinates({key: value for key, value in zip(index, row) if value})
            for row in rows
        ))
    return FuncSpace(tuple(
        FunctionExpr(_polynomial_from_row(index, row)) for row in rows
    ))


def _polynomial_from_row(index, row) -> ExpPolynomial:
    return ExpPolynomial.from_coordinates({key: value for key, value in zip(index, row) if value})


def space_sum(a: Space, b: Space) -> Space:
    if type(a) is not type(b):
        raise TypeError('Cannot add a condition space and a function space')
    return type(a)(extract_basis(a.basis + b.basis))


def space_leq(a: Space, b: Space) -> bool:
    """
    True when every element of a lies in the span of b.
    """
    if not a.basis:
        return True
    if not b.basis:
        return False
    conditions = isinstance(a, CondSpace)
    _, matrix = _coordinates(b.basis + a.basis, conditions)
    return rank(matrix) == rank(matrix.select_rows(range(len(b.basis))))


def space_equal(a: Space, b: Space) -> bool:
    return space_leq(a, b) and space_leq(b, a)


def combine(coefficients: Sequence[ExpConstant], items: Sequence):
    """
    sum_i coefficients[i] * items[i] for conditions or functions.
    """
    if _is_condition_list(items):
        total = IdOperator.zero()
        for c, item in zip(coefficients, items):
            if c:
                total = total + item.scale(c)
        return total
    total = FunctionExpr.zero()
    for c, item in zip(coefficients, items):
        if c:
            total = total + item.scale(c)
    return total


def evaluation_matrix(conds: Sequence[IdOperator], funcs: Sequence[FunctionExpr]) -> KMatrix:
    """
    The matrix (beta_i(u_j)).
    """
    return KMatrix([[b.functional_value(u) for u in funcs] for b in conds], len(funcs))


def intersect_primal(u_space: FuncSpace, b_space: CondSpace) -> FuncSpace:
    """
    Basis of the functions in U annihilated by every condition of B.
    """
    if not u_space.basis or not b_space.basis:
        return u_space
    matrix = evaluation_matrix(b_space.basis, u_space.basis)
    return FuncSpace(tuple(combine(k, u_space.basis) for k in kernel_basis(matrix)))


def intersect_dual(b_space: CondSpace, u_space: FuncSpace) -> CondSpace:
    """
    Basis of the conditions in B annihilating every function of U.
    """
    if not u_space.basis or not b_space.basis:
        return b_space
    matrix = evaluation_matrix(b_space.basis, u_space.basis).transpose()
    return CondSpace(tuple(combine(k, b_space.basis) for k in kernel_basis(matrix)))


# fundamental systems

def characteristic_roots(operator: IdOperator) -> Optional[List[Tuple[Fraction, int]]]:
    """
    Rational roots with multiplicities of the characteristic polynomial of a
    constant-coefficient operator, or None when the operator has
    non-rational coefficients or the roots are not all rational.
    """
    if not operator.is_differential() or not operator.has_constant_coefficients():
        return None
    coefficients = operator.differential_coefficients()
    if not all(c.constant_value().is_rational() for c in coefficients):
        return None
    values = [c.constant_value().to_fraction() for c in reversed(coefficients)]
    poly = Poly([SymRational(v.numerator, v.denominator) for v in values], _LAMBDA, domain=QQ)
    roots = poly.ground_roots()
    if sum(roots.values()) != operator.order():
        return None
    result = [(Fraction(int(r.p), int(r.q)), int(m)) for r, m in roots.items()]
    return sorted(result, key=lambda item: (abs(item[0]), -item[0]))


def fundamental_system(operator: IdOperator) -> Tuple[FunctionExpr, ...]:
    """
    Kernel basis x^j*exp(lam*x) of a constant-coefficient operator.
    """
    roots = characteristic_roots(operator)
    if roots is None:
        raise MissingFundamentalSystem(f'No fundamental system available for {operator}; supply one')
    return tuple(
        FunctionExpr.monomial(j, root)
        for root, multiplicity in roots
        for j in range(multiplicity)
    )


def validate_fundamental_system(operator: IdOperator, functions: Sequence[FunctionExpr]) -> None:
    if len(functions) != operator.order():
        raise InvalidFundamentalSystem(
            f'Operator of order {operator.order()} needs {operator.order()} functions, got {len(functions)}'
        )
    for u in functions:
        if not operator.apply(u).is_zero():
            raise InvalidFundamentalSystem(f'{u} is not annihilated by {operator}')
    if functions and wronskian(functions).is_zero():
        raise InvalidFundamentalSystem('The fundamental system has a vanishing Wronskian')


def resolve_fundamental_system(operator: IdOperator, given: Optional[Sequence[FunctionExpr]] = None) -> Tuple[FunctionExpr, ...]:
    if given:
        return tuple(FunctionExpr.coerce(u) for u in given)
    return fundamental_system(operator)


# problems

@dataclass(frozen=True)
class BoundaryProblem:
    """
    A generalized boundary problem (T, B, E); E empty gives a classical
    boundary problem (T, B).
    """
    operator: IdOperator
    conditions: CondSpace
    exceptional: FuncSpace = field(default_factory=FuncSpace)
    fundamental_system: Optional[Tuple[FunctionExpr, ...]] = None

    def __post_init__(self):
        if not isinstance(self.conditions, CondSpace):
            object.__setattr__(self, 'conditions', CondSpace(tuple(self.conditions)))
        if not isinstance(self.exceptional, FuncSpace):
            object.__setattr__(self, 'exceptional', FuncSpace(tuple(self.exceptional)))
        if self.fundamental_system is not None:
            object.__setattr__(self, 'fundamental_system', tuple(self.fundamental_system) or None)
        self._validate()

    def _validate(self):
        if not self.operator.is_monic_differential() or self.operator.order() < 1:
            raise BoundaryProblemError(f'{self.operator} is not a monic differential operator')
        for condition in self.conditions.basis:
            if not condition.is_stieltjes():
                raise NotStieltjes(f'{condition} is not a Stieltjes boundary condition')
        check_independent(self.conditions.basis, 'boundary conditions')
        check_independent(self.exceptional.basis, 'exceptional functions')
        if self.fundamental_system is not None:
            validate_fundamental_system(self.operator, self.fundamental_system)

    @property
    def order(self) -> int:
        return self.operator.order()

    @property
    def is_generalized(self) -> bool:
        return bool(self.exceptional.basis)

    @cached_property
    def kernel(self) -> Tuple[FunctionExpr, ...]:
        """Fundamental system, given or computed."""
        return resolve_fundamental_system(self.operator, self.fundamental_system)

    def __str__(self) -> str:
        parts = [str(self.operator), str(self.conditions)]
        if self.exceptional.basis:
            parts.append(str(self.exceptional))
        if self.fundamental_system:
            parts.append('FS(' + ', '.join(str(u) for u in self.fundamental_system) + ')')
        name = 'GBP' if self.exceptional.basis else 'BP'
        return f'{name}({", ".join(parts)})'


def is_semi_regular(problem: BoundaryProblem) -> bool:
    matrix = evaluation_matrix(problem.conditions.basis, problem.kernel)
    return rank(matrix) == problem.order


def compatibility_conditions(operator: IdOperator, conditions: CondSpace,
                             fundsys: Optional[Sequence[FunctionExpr]] = None) -> CondSpace:
    """
    Conditions f must satisfy for T u = f to have a solution u in the
    orthogonal of B.
    """
    kernel = resolve_fundamental_system(operator, fundsys)
    matrix = evaluation_matrix(conditions.basis, kernel)
    if rank(matrix) != len(kernel):
        raise NotSemiRegular(f'{conditions} does not determine the kernel of {operator} uniquely')
    annihilating = intersect_dual(conditions, FuncSpace(kernel))
    right_inverse = fundamental_right_inverse(operator, kernel)
    result = reduced_basis(CondSpace(tuple(b * right_inverse for b in annihilating.basis)))
    logger.debug(f'Compatibility conditions of {operator} with {conditions}: {result}')
    return result


def is_regular(problem: BoundaryProblem) -> bool:
    kernel = problem.kernel
    matrix = evaluation_matrix(problem.conditions.basis, kernel)
    if rank(matrix) != problem.order:
        return False
    if not problem.exceptional.basis:
        return len(problem.conditions) == problem.order
    compat = compatibility_conditions(problem.operator, problem.conditions, kernel)
    if len(compat) != len(problem.exceptional):
        return False
    return is_invertible(evaluation_matrix(compat.basis, problem.exceptional.basis))


def right_inverse(problem: BoundaryProblem) -> IdOperator:
    return fundamental_right_inverse(problem.operator, problem.kernel)


def _kernel_projector(kernel: Sequence[FunctionExpr], normalized: Sequence[IdOperator]) -> IdOperator:
    total = IdOperator.zero()
    for u, condition in zip(kernel, normalized):
        total = total + IdOperator.function(u) * condition
    return total


def greens_operator_regular(problem: BoundaryProblem) -> IdOperator:
    """
    Green's operator (1 - P) H of a regular problem with dim B = ord T,
    where P projects onto Ker T along the orthogonal of B.
    """
    if problem.exceptional.basis or len(problem.conditions) != problem.order:
        raise NotRegular('A regular Green\'s operator needs dim B = ord T and no exceptional space')
    kernel = problem.kernel
    matrix = evaluation_matrix(problem.conditions.basis, kernel)
    if not is_invertible(matrix):
        raise NotRegular(f'{problem} is not regular')
    normalized = [combine(row, problem.conditions.basis) for row in inverse(matrix).rows]
    h = right_inverse(problem)
    return h - _kernel_projector(kernel, normalized) * h


def projector(problem: BoundaryProblem) -> IdOperator:
    """
    Projector onto the admissible forcing functions along E.
    """
    if not problem.exceptional.basis:
        return IdOperator.identity()
    compat = compatibility_conditions(problem.operator, problem.conditions, problem.kernel)
    exceptional = problem.exceptional.basis
    matrix = evaluation_matrix(compat.basis, exceptional)
    if not is_invertible(matrix):
        raise NotRegular(f'{problem.exceptional} does not complement the admissible forcing functions')
    normalized = [combine(row, compat.basis) for row in inverse(matrix).rows]
    return IdOperator.identity() - _kernel_projector(exceptional, normalized)


def greens_operator(problem: BoundaryProblem) -> IdOperator:
    """
    The generalized Green's operator mapping f to the unique u in the
    orthogonal of B with T u = Q f.
    """
    if not is_regular(problem):
        raise NotRegular(f'{problem} is not regular')
    if not problem.exceptional.basis:
        return greens_operator_regular(problem)
    kernel = problem.kernel
    matrix = evaluation_matrix(problem.conditions.basis, kernel)
    normalized = [combine(row, problem.conditions.basis) for row in left_inverse(matrix).rows]
    solution = right_inverse(problem) * projector(problem)
    green = solution - _kernel_projector(kernel, normalized) * solution
    logger.debug(f'Green\'s operator of {problem}: {green}')
    return green


# verification

def problem_frequencies(problem: BoundaryProblem) -> List[Fraction]:
    """
    Exponential frequencies occurring in the problem data, always with 0.
    """
    frequencies = {Fraction(0)}
    try:
        frequencies.update(f for u in problem.kernel for f in u.numerator.frequencies())
    except MissingFundamentalSystem:
        pass
    for e in problem.exceptional.basis:
        frequencies.update(e.numerator.frequencies())
    for condition in problem.conditions.basis:
        for word in condition.terms:
            if word[0] == 'EA' and word[2][0] == 'm':
                frequencies.add(word[2][1])
    return sorted(frequencies, key=lambda f: (abs(f), -f))


@dataclass
class GreenCheck:
    """
    Outcome of checking u = G f against the defining properties of a Green's
    operator, using plain differentiation and evaluation.
    """
    forcing: FunctionExpr
    solution: FunctionExpr
    conditions_satisfied: bool
    residual_in_exceptional: bool

    @property
    def passed(self) -> bool:
        return self.conditions_satisfied and self.residual_in_exceptional


def random_forcing(rng: random.Random, frequencies: Sequence[Fraction], max_degree: int = 2) -> FunctionExpr:
    total = FunctionExpr.zero()
    for _ in range(rng.randint(1, 3)):
        coefficient = rng.choice([-3, -2, -1, 1, 2, 3])
        total = total + FunctionExpr.monomial(rng.randint(0, max_degree), rng.choice(list(frequencies)), coefficient)
    return total if not total.is_zero() else FunctionExpr.one()


def check_solution(problem: BoundaryProblem, green: IdOperator, forcing: FunctionExpr) -> GreenCheck:
    solution = green.apply(forcing)
    conditions_satisfied = all(not b.functional_value(solution) for b in problem.conditions.basis)
    image = FunctionExpr.zero()
    for order, coefficient in enumerate(problem.operator.differential_coefficients()):
        image = image + coefficient * solution.differentiate(order)
    residual = image - forcing
    if residual.is_zero():
        in_exceptional = True
    else:
        in_exceptional = space_leq(FuncSpace((residual,)), problem.exceptional)
    return GreenCheck(forcing, solution, conditions_satisfied, in_exceptional)


def verify_green(problem: BoundaryProblem, green: Optional[IdOperator] = None,
                 samples: Optional[int] = None, seed: Optional[int] = None) -> List[GreenCheck]:
    """
    Apply the Green's operator to random exponential polynomials and check
    each result directly.
    """
    if green is None:
        green = greens_operator(problem)
    if samples is None:
        samples = getattr(settings, 'BVP_VERIFY_SAMPLES', 3)
    rng = random.Random(seed)
    frequencies = problem_frequencies(problem)
    checks = []
    for _ in range(samples):
        check = check_solution(problem, green, random_forcing(rng, frequencies))
        if not check.passed:
            logger.warning(f'Green\'s operator check failed for forcing {check.forcing}')
        checks.append(check)
    return checks
