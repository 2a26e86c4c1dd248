"""
Print a basis of the preimage of a function space under an operator.
"""

from boundary.algorithms import inverse_image

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Compute T^-1(E) for a differential operator T and ES(...)'

    def add_engine_arguments(self, parser):
        parser.add_argument('operator', help='Monic differential operator')
        parser.add_argument('space', help='Function space ES(...)')
        parser.add_argument('--fundsys', help='Comma-separated fundamental system of the operator')

    def compute(self, **options):
        return inverse_image(
            self.read_operator(options['operator']),
            self.read_function_space(options['space']),
            self.read_functions(options['fundsys']),
        )
