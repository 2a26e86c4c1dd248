"""
Decide regularity of a (generalized) boundary problem.
"""

from boundary.problems import is_regular, is_semi_regular

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Print true when the problem has a unique (generalized) Green\'s operator'

    def add_engine_arguments(self, parser):
        parser.add_argument('problem', help='Boundary problem expression, JSON, or - for stdin')

    def compute(self, **options):
        problem = self.read_problem(options['problem'])
        regular = is_regular(problem)
        if options['format'] == 'json':
            return {'tag': 'bool', 'value': regular, 'semi_regular': is_semi_regular(problem)}
        return regular
