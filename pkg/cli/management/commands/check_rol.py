"""
Decide the reverse order law for two regular boundary problems.
"""

from boundary.algorithms import check_reverse_order_law

from cli.base import EngineCommand


class Command(EngineCommand):
    help = "Print true when the Green's operator of P1 o P2 equals G2*G1"

    def add_engine_arguments(self, parser):
        parser.add_argument('first', help='Left problem (T1, B1, E1)')
        parser.add_argument('second', help='Right problem (T2, B2, E2)')

    def compute(self, **options):
        return check_reverse_order_law(self.read_problem(options['first']), self.read_problem(options['second']))
