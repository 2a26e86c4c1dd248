import pytest

from algebra.exceptions import NotStieltjes
from algebra.idop import IdOperator
from boundary.algorithms import is_outer_inverse
from boundary.exceptions import (
    BoundaryProblemError,
    InvalidBasis,
    InvalidFundamentalSystem,
    MissingFundamentalSystem,
    NotRegular,
    NotSemiRegular,
)
from boundary.problems import (
    BoundaryProblem,
    CondSpace,
    FuncSpace,
    check_solution,
    compatibility_conditions,
    fundamental_system,
    greens_operator,
    intersect_dual,
    intersect_primal,
    is_regular,
    is_semi_regular,
    projector,
    reduced_basis,
    space_equal,
    space_leq,
    space_sum,
    verify_green,
)

from .conftest import D, E, EA, exp_minus_x, exp_x, one, x


class TestSpaces:

    def test_reduced_basis_of_conditions(self):
        space = CondSpace((E(1) + E(0), E(0)))
        assert str(reduced_basis(space)) == 'BC(E[0], E[1])'

    def test_reduced_basis_of_functions(self):
        space = FuncSpace((x + one, 2 * one))
        assert space_equal(reduced_basis(space), FuncSpace((one, x)))

    def test_inclusion_and_sum(self):
        small = CondSpace((E(1) - E(0),))
        large = CondSpace((E(0), E(1)))
        assert space_leq(small, large)
        assert not space_leq(large, small)
        assert len(space_sum(small, large)) == 2
        assert space_leq(FuncSpace(), FuncSpace((x,)))

    def test_dual_intersection(self, end_conditions):
        assert intersect_dual(end_conditions, FuncSpace()) == end_conditions
        annihilating = intersect_dual(end_conditions, FuncSpace((one,)))
        assert space_equal(annihilating, CondSpace((E(1, 1), E(0, 1))))

    def test_primal_intersection(self):
        solutions = intersect_primal(FuncSpace((one, x)), CondSpace((E(0),)))
        assert space_equal(solutions, FuncSpace((x,)))

    def test_rendering(self, mean_zero_problem):
        assert str(mean_zero_problem) == 'GBP(D^2, BC(E[1], E[1].D, E[0].D), ES(1))'


class TestProblemValidation:

    def test_operator_must_be_monic(self):
        with pytest.raises(BoundaryProblemError):
            BoundaryProblem(2 * D, CondSpace((E(0),)))
        with pytest.raises(BoundaryProblemError):
            BoundaryProblem(IdOperator.identity(), CondSpace())

    def test_conditions_must_be_independent(self):
        with pytest.raises(InvalidBasis):
            BoundaryProblem(D, CondSpace((E(1), E(1).scale(2))))

    def test_conditions_must_be_stieltjes(self):
        with pytest.raises(NotStieltjes):
            BoundaryProblem(D, CondSpace((x * E(1),)))

    def test_exceptional_functions_must_be_independent(self):
        with pytest.raises(InvalidBasis):
            BoundaryProblem(D, CondSpace((E(0), E(1))), FuncSpace((x, 3 * x)))

    def test_supplied_fundamental_system_is_checked(self):
        with pytest.raises(InvalidFundamentalSystem):
            BoundaryProblem(D ** 2 - 1, CondSpace((E(0), E(1))), fundamental_system=(exp_x, x))
        with pytest.raises(InvalidFundamentalSystem):
            BoundaryProblem(D ** 2 - 1, CondSpace((E(0), E(1))), fundamental_system=(exp_x, exp_x.scale(2)))
        with pytest.raises(InvalidFundamentalSystem):
            BoundaryProblem(D ** 2 - 1, CondSpace((E(0), E(1))), fundamental_system=(exp_x,))


class TestFundamentalSystems:

    def test_constant_coefficients_with_repeated_roots(self):
        assert fundamental_system(D ** 4 - D ** 2) == (one, x, exp_x, exp_minus_x)
        assert fundamental_system(D ** 2 - 2 * D + 1) == (exp_x, x * exp_x)

    def test_irrational_roots_need_a_supplied_system(self):
        with pytest.raises(MissingFundamentalSystem):
            fundamental_system(D ** 2 - 2)

    def test_variable_coefficients_need_a_supplied_system(self):
        with pytest.raises(MissingFundamentalSystem):
            fundamental_system(D - x)

    def test_problem_kernel_prefers_the_supplied_system(self):
        supplied = (exp_x.scale(2),)
        problem = BoundaryProblem(D - 1, CondSpace((E(0),)), fundamental_system=supplied)
        assert problem.kernel == supplied

    def test_problem_kernel_without_a_system(self):
        problem = BoundaryProblem(D - x, CondSpace((E(0),)))
        with pytest.raises(MissingFundamentalSystem):
            problem.kernel


class TestCompatibility:

    def test_mean_zero_condition(self, end_conditions):
        conditions = compatibility_conditions(D ** 2, end_conditions)
        assert str(conditions) == 'BC(E[1].A)'

    def test_hyperbolic_cosine_weight(self, end_conditions):
        conditions = compatibility_conditions(D ** 2 - 1, end_conditions)
        assert str(conditions) == 'BC(E[1].A.exp(-x) + E[1].A.exp(x))'

    def test_regular_problem_has_no_compatibility_conditions(self):
        assert len(compatibility_conditions(D ** 2, CondSpace((E(0), E(1))))) == 0

    def test_requires_semi_regularity(self):
        with pytest.raises(NotSemiRegular):
            compatibility_conditions(D ** 2, CondSpace((E(0),)))


class TestRegularity:

    def test_generalized_problems(self, mean_zero_problem, hyperbolic_problem):
        assert is_regular(mean_zero_problem)
        assert is_regular(hyperbolic_problem)

    def test_overdetermined_problem_without_exceptional_space(self, end_conditions):
        problem = BoundaryProblem(D ** 2, end_conditions)
        assert is_semi_regular(problem)
        assert not is_regular(problem)

    def test_exceptional_space_must_complement_admissible_functions(self, end_conditions):
        # x has mean 1/2, x - 1/2 has mean zero and is admissible
        assert is_regular(BoundaryProblem(D ** 2, end_conditions, FuncSpace((x,))))
        assert not is_regular(BoundaryProblem(D ** 2, end_conditions, FuncSpace((2 * x - 1,))))

    def test_underdetermined_problem(self):
        problem = BoundaryProblem(D ** 2, CondSpace((E(0),)))
        assert not is_semi_regular(problem)
        assert not is_regular(problem)


class TestGreensOperator:

    def test_mean_zero_problem(self, mean_zero_problem):
        green = greens_operator(mean_zero_problem)
        assert str(green) == 'x.A - A.x + (-1/2*x^2 - 1/2).E[1].A + E[1].A.x'

    def test_classical_two_point_problem(self):
        problem = BoundaryProblem(D ** 2, CondSpace((E(0), E(1))))
        green = greens_operator(problem)
        assert D ** 2 * green == IdOperator.identity()
        assert (E(0) * green).is_zero()
        assert (E(1) * green).is_zero()

    def test_generalized_problem_properties(self, hyperbolic_problem):
        operator = hyperbolic_problem.operator
        green = greens_operator(hyperbolic_problem)
        assert operator * green == projector(hyperbolic_problem)
        for condition in hyperbolic_problem.conditions:
            assert (condition * green).is_zero()
        assert green.apply(x).is_zero()
        assert is_outer_inverse(green, operator)

    def test_projector_fixes_admissible_functions(self, mean_zero_problem):
        q = projector(mean_zero_problem)
        assert q.apply(one).is_zero()
        assert q.apply(2 * x - 1) == 2 * x - 1
        assert q * q == q

    def test_not_regular(self):
        with pytest.raises(NotRegular):
            greens_operator(BoundaryProblem(D ** 2, CondSpace((E(0), E(0, 1), EA(1)))))


class TestVerification:

    def test_random_forcing_functions(self, mean_zero_problem, settings):
        settings.BVP_VERIFY_SAMPLES = 5
        checks = verify_green(mean_zero_problem, seed=7)
        assert len(checks) == 5
        assert all(check.passed for check in checks)

    def test_same_seed_same_forcing(self, hyperbolic_problem):
        first = verify_green(hyperbolic_problem, samples=2, seed=11)
        second = verify_green(hyperbolic_problem, samples=2, seed=11)
        assert [c.forcing for c in first] == [c.forcing for c in second]
        assert all(check.passed for check in first)

    def test_wrong_operator_is_detected(self, mean_zero_problem):
        check = check_solution(mean_zero_problem, IdOperator.integral(), x)
        assert not check.passed
