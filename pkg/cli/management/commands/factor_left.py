"""
Factor a semi-regular boundary problem into a regular left factor and a
generalized right factor satisfying the reverse order law.
"""

from boundary.algorithms import factor_left_regular

from cli.base import EngineCommand


class Command(EngineCommand):
    help = 'Split a semi-regular BP(T, BC(...)) along T = T1*T2 with a searched exceptional space'

    def add_engine_arguments(self, parser):
        parser.add_argument('problem', help='Boundary problem expression, JSON, or - for stdin')
        parser.add_argument('--t1', required=True, help='Left operator factor')
        parser.add_argument('--t2', required=True, help='Right operator factor')
        parser.add_argument('--fundsys1', help='Comma-separated fundamental system of the left factor')
        parser.add_argument('--fundsys2', help='Comma-separated fundamental system of the right factor')
        parser.add_argument('--pool', help='Comma-separated candidate functions for the exceptional space')

    def compute(self, **options):
        return list(factor_left_regular(
            self.read_problem(options['problem']),
            self.read_operator(options['t1']),
            self.read_operator(options['t2']),
            self.read_functions(options['fundsys1']),
            self.read_functions(options['fundsys2']),
            self.read_functions(options['pool']),
        ))
