"""
Composition and factorization of generalized boundary problems.

Composition multiplies the operators and transports conditions and
exceptional functions between the factors. The reverse order law test
decides whether the Green's operator of a composite is the product of the
factors' Green's operators. Factorization goes the other way: given a
factorization of the operator, it splits the boundary conditions into a
regular right factor and a left factor, optionally searching for an
exceptional space that makes the reverse order law hold.
"""

import logging
import operator as _operator
from functools import reduce
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from django.conf import settings

from algebra.exceptions import NoClosedForm
from algebra.funcalg import FunctionExpr
from algebra.idop import IdOperator, fundamental_right_inverse
from algebra.linalg import is_invertible, kernel_basis, rref_with_transform

from .exceptions import (
    BadFactorization,
    MissingFundamentalSystem,
    NotRegular,
    NotSemiRegular,
    OrderMismatch,
    SearchExhausted,
)
from .problems import (
    BoundaryProblem,
    CondSpace,
    FuncSpace,
    characteristic_roots,
    combine,
    compatibility_conditions,
    evaluation_matrix,
    extract_basis,
    function_coordinates,
    intersect_dual,
    intersect_primal,
    is_regular,
    is_semi_regular,
    problem_frequencies,
    reduced_basis,
    resolve_fundamental_system,
    space_leq,
    space_sum,
)

logger = logging.getLogger(__name__)


def _composite_fundamental_system(p1: BoundaryProblem, p2: BoundaryProblem,
                                  product: IdOperator) -> Optional[Tuple[FunctionExpr, ...]]:
    """
    Kernel basis of T1*T2 for products that are not handled by the
    constant-coefficient solver: Ker T2 followed by H2 applied to Ker T1.
    """
    if characteristic_roots(product) is not None:
        return None
    try:
        kernel1, kernel2 = p1.kernel, p2.kernel
        right_inverse = fundamental_right_inverse(p2.operator, kernel2)
        return tuple(kernel2) + tuple(right_inverse.apply(u) for u in kernel1)
    except (MissingFundamentalSystem, NoClosedForm) as exc:
        logger.warning(f'No fundamental system for the composite {product}: {exc}')
        return None


def compose(p1: BoundaryProblem, p2: BoundaryProblem) -> BoundaryProblem:
    """
    (T1, B1, E1) o (T2, B2, E2) = (T1 T2, B2 + T2*(B1 n E2'), E1 + T1(B1' n E2)).
    """
    product = p1.operator * p2.operator
    if product.order() != p1.order + p2.order:
        raise OrderMismatch(f'{p1.operator} * {p2.operator} has order {product.order()}')
    gammas = intersect_dual(p1.conditions, p2.exceptional)
    solutions = intersect_primal(p2.exceptional, p1.conditions)
    transported_conditions = [gamma * p2.operator for gamma in gammas.basis]
    transported_functions = [p1.operator.apply(v) for v in solutions.basis]
    conditions = extract_basis(p2.conditions.basis + tuple(transported_conditions))
    exceptional = extract_basis(p1.exceptional.basis + tuple(transported_functions))
    composite = BoundaryProblem(
        product,
        CondSpace(conditions),
        FuncSpace(exceptional),
        _composite_fundamental_system(p1, p2, product),
    )
    logger.debug(f'Composite problem: {composite}')
    return composite


def inverse_image(operator: IdOperator, space: FuncSpace,
                  fundsys: Optional[Sequence[FunctionExpr]] = None) -> FuncSpace:
    """
    Basis of the preimage of a function space: Ker T followed by H(e).
    """
    kernel = resolve_fundamental_system(operator, fundsys)
    right_inverse = fundamental_right_inverse(operator, kernel)
    return FuncSpace(tuple(kernel) + tuple(right_inverse.apply(e) for e in space.basis))


def funcspace_intersect(a: FuncSpace, b: FuncSpace) -> FuncSpace:
    if not a.basis or not b.basis:
        return FuncSpace()
    _, matrix = function_coordinates(a.basis + tuple(-f for f in b.basis))
    relations = kernel_basis(matrix.transpose())
    size = len(a.basis)
    return FuncSpace(extract_basis([combine(vector[:size], a.basis) for vector in relations]))


def check_reverse_order_law(p1: BoundaryProblem, p2: BoundaryProblem) -> bool:
    """
    True when the Green's operator of p1 o p2 is G2 * G1.
    """
    for problem in (p1, p2):
        if not is_regular(problem):
            raise NotRegular(f'{problem} is not regular')
    preimage = inverse_image(p1.operator, p1.exceptional, p1.kernel)
    common = funcspace_intersect(p2.exceptional, preimage)
    required = intersect_dual(p1.conditions, common)
    annihilating = intersect_dual(p1.conditions, p2.exceptional)
    available = space_sum(compatibility_conditions(p2.operator, p2.conditions, p2.kernel), annihilating)
    holds = space_leq(required, available)
    logger.debug(f'Reverse order law for {p1} and {p2}: {holds}')
    return holds


def is_outer_inverse(green: IdOperator, operator: IdOperator) -> bool:
    return (green * operator * green - green).is_zero()


def split_conditions(conditions: Sequence[IdOperator],
                     fundsys: Sequence[FunctionExpr]) -> Tuple[List[IdOperator], int]:
    """
    Rebasis the conditions so that the first mu of them are dual to the
    kernel basis and the rest annihilate it.
    """
    matrix = evaluation_matrix(conditions, fundsys)
    reduced, transform = rref_with_transform(matrix)
    mu = sum(1 for row in reduced.rows if any(row))
    if mu != len(fundsys):
        raise NotSemiRegular('The conditions do not determine the kernel of the right factor')
    transformed = [combine(row, conditions) for row in transform.rows]
    return transformed, mu


def _check_factorization(problem: BoundaryProblem, left: IdOperator, right: IdOperator) -> None:
    if left.order() + right.order() != problem.order:
        raise OrderMismatch(
            f'Factor orders {left.order()} + {right.order()} do not add up to {problem.order}'
        )
    if left * right != problem.operator:
        raise BadFactorization(f'({left}) * ({right}) is not {problem.operator}')


def _image_fundamental_system(problem: BoundaryProblem, right: IdOperator) -> Optional[Tuple[FunctionExpr, ...]]:
    if not problem.fundamental_system:
        return None
    try:
        images = [right.apply(u) for u in problem.fundamental_system]
        return extract_basis([f for f in images if not f.is_zero()]) or None
    except NoClosedForm as exc:
        logger.warning(f'Could not transport the fundamental system: {exc}')
        return None


def factor_right_regular(problem: BoundaryProblem, left: IdOperator, right: IdOperator,
                         fundsys2: Optional[Sequence[FunctionExpr]] = None) -> Tuple[BoundaryProblem, BoundaryProblem]:
    """
    Factor a regular problem along T = T1 T2 into (T1, B1, E) o (T2, B2).
    """
    _check_factorization(problem, left, right)
    try:
        if not is_regular(problem):
            raise NotRegular(f'{problem} is not regular')
    except MissingFundamentalSystem:
        logger.warning(f'Regularity of {problem} not checked: no fundamental system for {problem.operator}')
    kernel2 = resolve_fundamental_system(right, fundsys2)
    transformed, mu = split_conditions(problem.conditions.basis, kernel2)
    right_inverse = fundamental_right_inverse(right, kernel2)
    pushed_up = [condition * right_inverse for condition in transformed[mu:]]
    left_problem = BoundaryProblem(
        left,
        reduced_basis(CondSpace(tuple(pushed_up))),
        problem.exceptional,
        _image_fundamental_system(problem, right),
    )
    right_problem = BoundaryProblem(
        right,
        CondSpace(tuple(transformed[:mu])),
        FuncSpace(),
        tuple(fundsys2) if fundsys2 else None,
    )
    logger.info(f'Factored {problem} into {left_problem} and {right_problem}')
    return left_problem, right_problem


def linear_factors(operator: IdOperator) -> List[IdOperator]:
    """
    First-order factors D - lam of a constant-coefficient operator with
    rational characteristic roots.
    """
    roots = characteristic_roots(operator)
    if roots is None:
        raise MissingFundamentalSystem(f'{operator} does not split into rational linear factors')
    return [
        IdOperator.derivation() - IdOperator.function(FunctionExpr.constant(root))
        for root, multiplicity in roots
        for _ in range(multiplicity)
    ]


def factor_chain(problem: BoundaryProblem, factors: Sequence[IdOperator],
                 fundamental_systems: Optional[Sequence[Optional[Sequence[FunctionExpr]]]] = None) -> List[BoundaryProblem]:
    """
    Split a problem along T = F1 F2 ... Fk by peeling regular right factors
    off one at a time; the first returned problem carries E.
    """
    factors = list(factors)
    if len(factors) < 2:
        return [problem]
    systems = list(fundamental_systems or [None] * len(factors))
    current = problem
    peeled: List[BoundaryProblem] = []
    for index in range(len(factors) - 1, 0, -1):
        left = reduce(_operator.mul, factors[:index])
        current, right_problem = factor_right_regular(current, left, factors[index], systems[index])
        peeled.insert(0, right_problem)
    return [current] + peeled


def default_candidate_pool(problem: BoundaryProblem, right: IdOperator,
                           kernel2: Sequence[FunctionExpr]) -> List[FunctionExpr]:
    """
    Monomials x^k*exp(lam*x) with k <= ord T + dim B and lam among the
    frequencies of the problem and of the right factor's kernel.
    """
    frequencies = set(problem_frequencies(problem))
    for u in kernel2:
        frequencies.update(u.numerator.frequencies())
    max_degree = problem.order + len(problem.conditions)
    keys = sorted(
        ((k, f) for k in range(max_degree + 1) for f in frequencies),
        key=lambda item: (item[0], abs(item[1]), -item[1]),
    )
    return [FunctionExpr.monomial(k, f) for k, f in keys]


def factor_left_regular(problem: BoundaryProblem, left: IdOperator, right: IdOperator,
                        fundsys1: Optional[Sequence[FunctionExpr]] = None,
                        fundsys2: Optional[Sequence[FunctionExpr]] = None,
                        candidate_pool: Optional[Sequence[FunctionExpr]] = None) -> Tuple[BoundaryProblem, BoundaryProblem]:
    """
    Factor a semi-regular pair (T, B) into a regular left problem (T1, B1)
    and a generalized right problem (T2, B2, E2) satisfying the reverse
    order law, searching E2 in a finite pool of candidates.
    """
    _check_factorization(problem, left, right)
    try:
        if not is_semi_regular(problem):
            raise NotSemiRegular(f'{problem} is not semi-regular')
    except MissingFundamentalSystem:
        logger.warning(f'Semi-regularity of {problem} checked through its factors only')
    kernel1 = resolve_fundamental_system(left, fundsys1)
    kernel2 = resolve_fundamental_system(right, fundsys2)

    transformed, mu = split_conditions(problem.conditions.basis, kernel2)
    right_inverse = fundamental_right_inverse(right, kernel2)
    alphas = reduced_basis(CondSpace(tuple(c * right_inverse for c in transformed[mu:]))).basis

    chosen = next(
        (subset for subset in combinations(range(len(alphas)), left.order())
         if is_invertible(evaluation_matrix([alphas[i] for i in subset], kernel1))),
        None,
    )
    if chosen is None:
        raise NotSemiRegular(f'No subset of {CondSpace(alphas)} gives a regular left factor')
    pushed_down = [alphas[j] * right for j in range(len(alphas)) if j not in chosen]
    right_conditions = CondSpace(extract_basis(tuple(transformed[:mu]) + tuple(pushed_down)))
    left_problem = BoundaryProblem(
        left,
        CondSpace(tuple(alphas[i] for i in chosen)),
        FuncSpace(),
        tuple(fundsys1) if fundsys1 else None,
    )
    logger.debug(f'Regular left factor {left_problem}; pushed down {len(pushed_down)} conditions')

    compat = compatibility_conditions(right, right_conditions, kernel2)
    pool = list(candidate_pool) if candidate_pool is not None else default_candidate_pool(problem, right, kernel2)
    limit = getattr(settings, 'BVP_LEFT_FACTOR_MAX_CANDIDATES', 2000)
    tried = 0
    for candidate in combinations(pool, len(compat)):
        if tried >= limit:
            logger.warning(f'Stopped the exceptional space search after {limit} candidates')
            break
        tried += 1
        if not is_invertible(evaluation_matrix(compat.basis, candidate)):
            continue
        right_problem = BoundaryProblem(
            right,
            right_conditions,
            FuncSpace(candidate),
            tuple(fundsys2) if fundsys2 else None,
        )
        if check_reverse_order_law(left_problem, right_problem):
            logger.info(f'Accepted exceptional space {right_problem.exceptional} after {tried} candidates')
            return left_problem, right_problem
    raise SearchExhausted(f'No exceptional space among {tried} candidates satisfies the reverse order law')
