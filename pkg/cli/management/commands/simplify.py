"""
Print the normal form of an operator expression.
"""

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Reduce an operator expression to normal form'

    def add_engine_arguments(self, parser):
        parser.add_argument('operator', help='Operator expression, JSON, or - for stdin')

    def compute(self, **options):
        return self.read_operator(options['operator'])
