import pytest

from algebra.idop import IdOperator
from boundary.algorithms import (
    check_reverse_order_law,
    compose,
    default_candidate_pool,
    factor_chain,
    factor_left_regular,
    factor_right_regular,
    funcspace_intersect,
    inverse_image,
    is_outer_inverse,
    linear_factors,
    split_conditions,
)
from boundary.exceptions import (
    BadFactorization,
    MissingFundamentalSystem,
    NotRegular,
    OrderMismatch,
    SearchExhausted,
)
from boundary.problems import (
    BoundaryProblem,
    CondSpace,
    FuncSpace,
    compatibility_conditions,
    greens_operator,
    intersect_dual,
    intersect_primal,
    is_regular,
    space_equal,
)

from .conftest import D, E, EA, exp_minus_x, exp_x, one, x


@pytest.fixture
def clamped_fourth_order():
    """The fourth order conditions without an exceptional space."""
    return BoundaryProblem(
        D ** 4 - D ** 2,
        CondSpace((E(0, 1), E(0, 3), E(1), E(1, 1), E(1, 3))),
    )


@pytest.fixture
def quotient_factors():
    """D - exp(2x)/(exp(x) - 1) and D - 1."""
    weight = exp_x * exp_x / (exp_x - one)
    return D - IdOperator.function(weight), D - 1


class TestInverseImage:

    def test_kernel_and_particular_solution(self):
        preimage = inverse_image(D ** 2, FuncSpace((one,)))
        assert str(preimage) == 'ES(1, x, 1/2*x^2)'

    def test_hyperbolic_preimage(self):
        preimage = inverse_image(D ** 2 - 1, FuncSpace((x,)))
        assert space_equal(preimage, FuncSpace((x, exp_x, exp_minus_x)))

    def test_intersection(self):
        preimage = inverse_image(D ** 2 - 1, FuncSpace((x,)))
        assert len(funcspace_intersect(FuncSpace((one,)), preimage)) == 0
        common = funcspace_intersect(FuncSpace((one, exp_x)), preimage)
        assert space_equal(common, FuncSpace((exp_x,)))
        assert len(funcspace_intersect(FuncSpace(), preimage)) == 0


class TestCompose:

    def test_mean_zero_then_hyperbolic(self, mean_zero_problem, hyperbolic_problem):
        composite = compose(mean_zero_problem, hyperbolic_problem)
        assert composite.operator == D ** 4 - D ** 2
        expected = CondSpace((
            E(0, 1),
            E(0, 3) - E(1, 3),
            E(1),
            E(1, 1),
            E(1, 2) - E(1, 3),
        ))
        assert space_equal(composite.conditions, expected)
        assert space_equal(composite.exceptional, FuncSpace((one,)))

    def test_direct_sum_dimensions(self, mean_zero_problem, hyperbolic_problem):
        composite = compose(mean_zero_problem, hyperbolic_problem)
        transported = intersect_dual(mean_zero_problem.conditions, hyperbolic_problem.exceptional)
        solutions = intersect_primal(hyperbolic_problem.exceptional, mean_zero_problem.conditions)
        assert (len(transported), len(solutions)) == (2, 0)
        assert len(composite.conditions) == len(hyperbolic_problem.conditions) + len(transported)
        assert len(composite.exceptional) == len(mean_zero_problem.exceptional) + len(solutions)

    def test_hyperbolic_then_mean_zero(self, mean_zero_problem, hyperbolic_problem, fourth_order_problem):
        composite = compose(hyperbolic_problem, mean_zero_problem)
        assert space_equal(composite.conditions, fourth_order_problem.conditions)
        assert space_equal(composite.exceptional, FuncSpace((x,)))
        assert is_regular(composite)

    def test_classical_problems(self):
        composite = compose(BoundaryProblem(D, CondSpace((E(1),))), BoundaryProblem(D, CondSpace((E(0),))))
        assert composite.operator == D ** 2
        assert space_equal(composite.conditions, CondSpace((E(0), E(1, 1))))
        assert len(composite.exceptional) == 0
        assert not composite.is_generalized


class TestReverseOrderLaw:

    def test_holds(self, mean_zero_problem, hyperbolic_problem):
        assert check_reverse_order_law(mean_zero_problem, hyperbolic_problem)
        composite = compose(mean_zero_problem, hyperbolic_problem)
        product = greens_operator(hyperbolic_problem) * greens_operator(mean_zero_problem)
        assert greens_operator(composite) == product

    def test_fails_in_the_other_order(self, mean_zero_problem, hyperbolic_problem):
        assert not check_reverse_order_law(hyperbolic_problem, mean_zero_problem)

    def test_agrees_with_outer_inverse_test(self, mean_zero_problem, hyperbolic_problem):
        g1 = greens_operator(mean_zero_problem)
        g2 = greens_operator(hyperbolic_problem)
        t1 = mean_zero_problem.operator
        t2 = hyperbolic_problem.operator
        assert is_outer_inverse(g2 * g1, t1 * t2)
        assert not is_outer_inverse(g1 * g2, t2 * t1)

    def test_integral_is_outer_inverse_of_derivation(self):
        assert is_outer_inverse(IdOperator.integral(), D)

    def test_classical_problems_always_satisfy_it(self):
        first = BoundaryProblem(D, CondSpace((E(1),)))
        second = BoundaryProblem(D - 1, CondSpace((E(0),)))
        assert check_reverse_order_law(first, second)

    def test_needs_regular_factors(self, end_conditions, hyperbolic_problem):
        with pytest.raises(NotRegular):
            check_reverse_order_law(BoundaryProblem(D ** 2, end_conditions), hyperbolic_problem)


class TestRightFactorization:

    def test_split_conditions(self, fourth_order_problem):
        transformed, mu = split_conditions(fourth_order_problem.conditions.basis, (one, x))
        assert mu == 2
        assert transformed == [E(1) - E(0, 1), E(0, 1), E(0, 3), E(1, 1) - E(0, 1), E(1, 3)]

    def test_fourth_order_problem(self, fourth_order_problem):
        left, right = factor_right_regular(fourth_order_problem, D ** 2 - 1, D ** 2)
        assert left.operator == D ** 2 - 1
        assert space_equal(left.conditions, CondSpace((E(0, 1), E(1, 1), EA(1))))
        assert space_equal(left.exceptional, FuncSpace((x,)))
        assert space_equal(right.conditions, CondSpace((E(0, 1), E(1))))
        assert len(right.exceptional) == 0
        assert is_regular(left)
        assert is_regular(right)

    def test_greens_operator_factors(self, fourth_order_problem):
        left, right = factor_right_regular(fourth_order_problem, D ** 2 - 1, D ** 2)
        assert greens_operator(fourth_order_problem) == greens_operator(right) * greens_operator(left)

    def test_composition_recovers_the_problem(self, fourth_order_problem):
        left, right = factor_right_regular(fourth_order_problem, D ** 2 - 1, D ** 2)
        composite = compose(left, right)
        assert composite.operator == fourth_order_problem.operator
        assert space_equal(composite.conditions, fourth_order_problem.conditions)
        assert space_equal(composite.exceptional, fourth_order_problem.exceptional)

    def test_rational_function_coefficients(self, quotient_factors):
        t1, t2 = quotient_factors
        problem = BoundaryProblem(t1 * t2, CondSpace((E(1), E(2), E(3))), FuncSpace((one,)))
        left, right = factor_right_regular(problem, t1, t2, fundsys2=(exp_x,))
        weighted = [EA(c, exp_minus_x) for c in (1, 2, 3)]
        expected = CondSpace((weighted[1] - weighted[0], weighted[2] - weighted[0]))
        assert space_equal(left.conditions, expected)
        assert space_equal(left.exceptional, FuncSpace((one,)))
        assert space_equal(right.conditions, CondSpace((E(1),)))
        composite = compose(left, right)
        assert space_equal(composite.conditions, problem.conditions)

    def test_rejects_wrong_factors(self, fourth_order_problem):
        with pytest.raises(BadFactorization):
            factor_right_regular(fourth_order_problem, D ** 2 + 1, D ** 2)
        with pytest.raises(OrderMismatch):
            factor_right_regular(fourth_order_problem, D, D ** 2)

    def test_rejects_irregular_problems(self, end_conditions):
        with pytest.raises(NotRegular):
            factor_right_regular(BoundaryProblem(D ** 2, end_conditions), D, D)


class TestFactorChain:

    def test_linear_factors(self):
        assert linear_factors(D ** 3 - D) == [D, D - 1, D + 1]
        assert linear_factors(D ** 2 - 2 * D + 1) == [D - 1, D - 1]
        with pytest.raises(MissingFundamentalSystem):
            linear_factors(D ** 2 + 1)

    def test_two_factors(self):
        problem = BoundaryProblem(D ** 2, CondSpace((E(0), E(1))))
        factors = factor_chain(problem, linear_factors(problem.operator))
        assert [str(p) for p in factors] == ['BP(D, BC(E[1].A))', 'BP(D, BC(E[0]))']

    def test_three_factors(self):
        problem = BoundaryProblem(D ** 3 - D, CondSpace((E(0), E(1), E(0, 1))))
        factors = factor_chain(problem, linear_factors(problem.operator))
        assert len(factors) == 3
        assert [p.operator for p in factors] == [D, D - 1, D + 1]
        greens = [greens_operator(p) for p in factors]
        assert greens_operator(problem) == greens[2] * greens[1] * greens[0]

    def test_single_factor(self):
        problem = BoundaryProblem(D, CondSpace((E(0),)))
        assert factor_chain(problem, [D]) == [problem]


class TestLeftFactorization:

    def test_default_pool(self, clamped_fourth_order):
        left, right = factor_left_regular(clamped_fourth_order, D ** 2 - 1, D ** 2)
        assert str(left) == 'BP(D^2 - 1, BC(E[0].D, E[1].D))'
        assert space_equal(right.conditions, CondSpace((E(0, 1), E(1), E(1, 1))))
        assert str(compatibility_conditions(D ** 2, right.conditions)) == 'BC(E[1].A)'
        assert right.exceptional == FuncSpace((one,))
        assert check_reverse_order_law(left, right)

    def test_composition_keeps_the_conditions(self, clamped_fourth_order):
        left, right = factor_left_regular(clamped_fourth_order, D ** 2 - 1, D ** 2)
        composite = compose(left, right)
        assert space_equal(composite.conditions, clamped_fourth_order.conditions)

    def test_explicit_pool(self, clamped_fourth_order):
        left, right = factor_left_regular(clamped_fourth_order, D ** 2 - 1, D ** 2, candidate_pool=[exp_x])
        assert right.exceptional == FuncSpace((exp_x,))
        assert check_reverse_order_law(left, right)

    def test_pool_without_complement(self, clamped_fourth_order):
        with pytest.raises(SearchExhausted):
            factor_left_regular(clamped_fourth_order, D ** 2 - 1, D ** 2, candidate_pool=[x - one / 2])

    def test_candidate_limit(self, clamped_fourth_order, settings):
        settings.BVP_LEFT_FACTOR_MAX_CANDIDATES = 0
        with pytest.raises(SearchExhausted):
            factor_left_regular(clamped_fourth_order, D ** 2 - 1, D ** 2)

    def test_regular_problem_needs_no_exceptional_space(self):
        problem = BoundaryProblem(D ** 2, CondSpace((E(0), E(1))))
        left, right = factor_left_regular(problem, D, D)
        assert len(right.exceptional) == 0
        assert len(left.conditions) == 1
        assert check_reverse_order_law(left, right)

    def test_default_pool_contents(self, clamped_fourth_order):
        pool = default_candidate_pool(clamped_fourth_order, D ** 2, (one, x))
        assert pool[:3] == [one, exp_x, exp_minus_x]
        assert x in pool
