"""
Print the (generalized) Green's operator of a regular boundary problem.
"""

from boundary.exceptions import BoundaryProblemError
from boundary.problems import greens_operator, verify_green

from cli.base import EngineCommand


class Command(EngineCommand):
    help = "Compute the Green's operator of GBP(T, BC(...), ES(...)) or BP(T, BC(...))"

    def add_engine_arguments(self, parser):
        parser.add_argument('problem', help='Boundary problem expression, JSON, or - for stdin')
        parser.add_argument(
            '--verify',
            action='store_true',
            help='Apply the result to random forcing functions and check each solution',
        )
        parser.add_argument(
            '--samples',
            type=int,
            default=None,
            help='Number of forcing functions for --verify (default: BVP_VERIFY_SAMPLES)',
        )

    def compute(self, **options):
        problem = self.read_problem(options['problem'])
        green = greens_operator(problem)
        if options['verify']:
            checks = verify_green(problem, green, options['samples'], options['seed'])
            failed = [check for check in checks if not check.passed]
            if failed:
                raise BoundaryProblemError(f'Green\'s operator failed {len(failed)} of {len(checks)} checks')
            self.stderr.write(f'Verified {len(checks)} forcing functions')
        return green
