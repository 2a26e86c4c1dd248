"""
Print the compatibility conditions of a semi-regular boundary problem.
"""

from boundary.problems import compatibility_conditions

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Compute the conditions a forcing function must satisfy for BP(T, BC(...)) to be solvable'

    def add_engine_arguments(self, parser):
        parser.add_argument('problem', help='Boundary problem expression, JSON, or - for stdin')

    def compute(self, **options):
        problem = self.read_problem(options['problem'])
        return compatibility_conditions(problem.operator, problem.conditions, problem.kernel)
