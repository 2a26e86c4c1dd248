"""
Randomized checks of the defining properties of Green's operators,
composition and factorization on seeded constant-coefficient problems.
"""

import factory.random
import pytest

from boundary.algorithms import check_reverse_order_law, compose, factor_right_regular, is_outer_inverse
from boundary.problems import (
    BoundaryProblem,
    CondSpace,
    FuncSpace,
    greens_operator,
    intersect_dual,
    intersect_primal,
    is_regular,
    projector,
    space_equal,
    verify_green,
)

from .factories import BoundaryProblemFactory, ROOTS, operator_from_roots, rng

pytestmark = pytest.mark.slow

INSTANCES = 200
PAIRS = INSTANCES


def regular_problems(count, **kwargs):
    for _ in range(count):
        problem = BoundaryProblemFactory(**kwargs)
        if is_regular(problem):
            yield problem


def assert_direct_sums(composite, p1, p2):
    transported = intersect_dual(p1.conditions, p2.exceptional)
    solutions = intersect_primal(p2.exceptional, p1.conditions)
    assert len(composite.conditions) == len(p2.conditions) + len(transported), (p1, p2)
    assert len(composite.exceptional) == len(p1.exceptional) + len(solutions), (p1, p2)


def rebased(items):
    """A shuffled basis of the same span whose first vector is added to the others."""
    items = list(items)
    rng().shuffle(items)
    return tuple(item + items[0] for item in items[1:]) + tuple(items[:1])


def test_greens_operator_properties():
    factory.random.reseed_random(20240611)
    checked = 0
    for problem in regular_problems(INSTANCES):
        green = greens_operator(problem)
        assert (problem.operator * green - projector(problem)).is_zero(), problem
        for condition in problem.conditions:
            assert (condition * green).is_zero(), problem
        for e in problem.exceptional:
            assert green.apply(e).is_zero(), problem
        assert is_outer_inverse(green, problem.operator), problem
        assert all(check.passed for check in verify_green(problem, green, seed=checked)), problem
        checked += 1
    assert checked


def test_reverse_order_law_matches_outer_inverse_test():
    factory.random.reseed_random(7)
    checked = 0
    for _ in range(PAIRS):
        p1 = BoundaryProblemFactory(roots=[rng().choice(ROOTS) for _ in range(rng().randint(1, 2))])
        p2 = BoundaryProblemFactory(roots=[rng().choice(ROOTS) for _ in range(rng().randint(1, 2))])
        if not (is_regular(p1) and is_regular(p2)):
            continue
        g1, g2 = greens_operator(p1), greens_operator(p2)
        holds = check_reverse_order_law(p1, p2)
        assert holds == is_outer_inverse(g2 * g1, p1.operator * p2.operator), (p1, p2)
        composite = compose(p1, p2)
        assert_direct_sums(composite, p1, p2)
        if holds:
            assert is_regular(composite), (p1, p2)
            assert greens_operator(composite) == g2 * g1, (p1, p2)
        checked += 1
    assert checked


def test_right_factorization_round_trip():
    factory.random.reseed_random(99)
    checked = 0
    for _ in range(INSTANCES // 4):
        roots = sorted(rng().choice(ROOTS) for _ in range(rng().randint(2, 3)))
        problem = BoundaryProblemFactory(roots=roots)
        if not is_regular(problem):
            continue
        split = rng().randint(1, len(roots) - 1)
        left, right = factor_right_regular(
            problem,
            operator_from_roots(roots[:split]),
            operator_from_roots(roots[split:]),
        )
        composite = compose(left, right)
        assert composite.operator == problem.operator
        assert space_equal(composite.conditions, problem.conditions), problem
        assert space_equal(composite.exceptional, problem.exceptional), problem
        assert greens_operator(right) * greens_operator(left) == greens_operator(problem), problem
        checked += 1
    assert checked


def test_greens_operator_ignores_basis_choices():
    factory.random.reseed_random(31)
    checked = 0
    for problem in regular_problems(INSTANCES // 2):
        exceptional = list(problem.exceptional.basis)
        rng().shuffle(exceptional)
        other = BoundaryProblem(
            problem.operator,
            CondSpace(rebased(problem.conditions.basis)),
            FuncSpace(tuple(exceptional)),
            rebased(problem.kernel),
        )
        assert greens_operator(other) == greens_operator(problem), problem
        checked += 1
    assert checked
