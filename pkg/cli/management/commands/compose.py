"""
Print the composite of two boundary problems.
"""

from boundary.algorithms import compose

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Compose two boundary problems: the result has operator T1*T2'

    def add_engine_arguments(self, parser):
        parser.add_argument('first', help='Left problem (T1, B1, E1)')
        parser.add_argument('second', help='Right problem (T2, B2, E2)')

    def compute(self, **options):
        return compose(self.read_problem(options['first']), self.read_problem(options['second']))
