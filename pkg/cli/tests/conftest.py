from io import StringIO

import pytest

from cli.runner import run_command

MEAN_ZERO = 'GBP(d^2, BC(e(1), e(1).d, e(0).d), ES(1))'
HYPERBOLIC = 'GBP(d^2 - 1, BC(e(1), e(1).d, e(0).d), ES(x))'
CLAMPED = 'BP(d^4 - d^2, BC(e(0).d, e(0).d^3, e(1), e(1).d, e(1).d^3))'


@pytest.fixture
def run_cli():
    """Run a subcommand; returns (exit code, stdout, stderr)."""

    def run(*argv, stdin=None):
        stdout, stderr = StringIO(), StringIO()
        code = run_command(
            list(argv),
            stdin=StringIO(stdin) if stdin is not None else None,
            stdout=stdout,
            stderr=stderr,
        )
        return code, stdout.getvalue(), stderr.getvalue()

    return run
