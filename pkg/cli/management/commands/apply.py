"""
Apply an integro-differential operator to a function.
"""

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Print the function obtained by applying the operator'

    def add_engine_arguments(self, parser):
        parser.add_argument('operator', help='Operator expression or JSON')
        parser.add_argument('function', help='Function expression or JSON')

    def compute(self, **options):
        return self.read_operator(options['operator']).apply(self.read_function(options['function']))
