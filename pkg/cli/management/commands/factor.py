"""
Factor a regular boundary problem along a factorization of its operator.
"""

from boundary.algorithms import factor_chain, factor_right_regular, linear_factors

from cli.base import EngineCommand
from cli.exceptions import ExpressionTypeError


class Command(EngineCommand):
    help = (
        'Split a regular problem into (T1, B1, E) o (T2, B2); without --t1/--t2 a '
        'constant-coefficient operator is split into first-order factors'
    )

    def add_engine_arguments(self, parser):
        parser.add_argument('problem', help='Boundary problem expression, JSON, or - for stdin')
        parser.add_argument('--t1', help='Left operator factor')
        parser.add_argument('--t2', help='Right operator factor')
        parser.add_argument('--fundsys2', help='Comma-separated fundamental system of the right factor')

    def compute(self, **options):
        problem = self.read_problem(options['problem'])
        if bool(options['t1']) != bool(options['t2']):
            raise ExpressionTypeError('--t1 and --t2 must be given together')
        if options['t1']:
            return list(factor_right_regular(
                problem,
                self.read_operator(options['t1']),
                self.read_operator(options['t2']),
                self.read_functions(options['fundsys2']),
            ))
        return factor_chain(problem, linear_factors(problem.operator))
