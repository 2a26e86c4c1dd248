"""
Entry point running one engine command with captured streams.

Subcommand names use hyphens on the command line (check-rol) and map to the
management commands of this app (check_rol).
"""

import logging
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from importlib import import_module
from typing import List, Optional, Sequence, TextIO

from django.core.management import find_commands

from .base import USAGE_ERROR

logger = logging.getLogger(__name__)


def available_commands() -> List[str]:
    management_dir = os.path.join(os.path.dirname(__file__), 'management')
    return sorted(name.replace('_', '-') for name in find_commands(management_dir))


def _usage() -> str:
    return 'usage: python -m cli <command> [options]\n\ncommands:\n' + '\n'.join(
        f'  {name}' for name in available_commands()
    ) + '\n'


def run_command(argv: Sequence[str], stdin: Optional[TextIO] = None,
                stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run a subcommand and return its exit code: 0 on success, 1 on a
    mathematical failure and 2 on invalid usage or input.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)
    if not argv or argv[0] in ('-h', '--help', 'help'):
        stdout.write(_usage())
        return 0 if argv else USAGE_ERROR
    name = argv[0]
    if name not in available_commands():
        stderr.write(f'Unknown command {name!r}\n{_usage()}')
        return USAGE_ERROR
    module_name = name.replace('-', '_')
    command = import_module(f'cli.management.commands.{module_name}').Command(stdout=stdout, stderr=stderr)
    command.stdin = stdin
    logger.debug(f'Running {name} with {argv[1:]}')
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            command.run_from_argv(['manage.py', module_name, *argv[1:]])
    except SystemExit as exit_request:
        code = exit_request.code
        if code is None:
            return 0
        return code if isinstance(code, int) else USAGE_ERROR
    return 0
