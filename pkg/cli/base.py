"""
Shared behaviour of the boundary-problem management commands.

Commands read their arguments as expressions or as tagged JSON, run one
engine operation and print the result. Input errors exit with status 2 and
mathematical failures with status 1.
"""

import json
import logging
import sys
from typing import Optional, Tuple

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from algebra.exceptions import AlgebraError
from algebra.funcalg import FunctionExpr
from algebra.idop import IdOperator
from boundary.problems import BoundaryProblem, CondSpace, FuncSpace

from .evaluator import as_function, as_operator, eval_ast, kind_name
from .exceptions import ExpressionError, ExpressionTypeError
from .parser import parse, parse_list
from .printer import render
from .serializers import load_value

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
MATH_ERROR = 1


class EngineCommand(BaseCommand):
    """
    Base class: subclasses implement add_engine_arguments() and compute().
    """
    requires_system_checks = []
    requires_migrations_checks = False
    stdin = None

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            choices=['text', 'json'],
            default='text',
            help='Output format (default: text)',
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=None,
            help='Seed for randomized checks',
        )
        self.add_engine_arguments(parser)

    def add_engine_arguments(self, parser):
        pass

    def compute(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            result = self.compute(**options)
        except (ExpressionError, ValidationError) as e:
            logger.error(f'{self.command_name()}: invalid input: {e}')
            raise CommandError(f'{type(e).__name__}: {_error_text(e)}', returncode=USAGE_ERROR)
        except AlgebraError as e:
            logger.error(f'{self.command_name()} failed: {type(e).__name__}: {e}')
            raise CommandError(f'{type(e).__name__}: {e}', returncode=MATH_ERROR)
        self.stdout.write(render(result, options['format']))

    def command_name(self) -> str:
        return self.__class__.__module__.rsplit('.', 1)[-1].replace('_', '-')

    # argument readers

    def read_text(self, text: str) -> str:
        if text == '-':
            return (self.stdin or sys.stdin).read()
        return text

    def read_value(self, text: str):
        text = self.read_text(text).strip()
        if text.startswith('{'):
            try:
                payload = json.loads(text)
            except json.JSONDecodeError as e:
                raise ValidationError({'json': f'Invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})'})
            return load_value(payload)
        return eval_ast(parse(text))

    def read_problem(self, text: str) -> BoundaryProblem:
        value = self.read_value(text)
        if not isinstance(value, BoundaryProblem):
            raise ExpressionTypeError(f'Expected BP(...) or GBP(...), got a {kind_name(value)}')
        return value

    def read_operator(self, text: str) -> IdOperator:
        return as_operator(self.read_value(text))

    def read_function(self, text: str) -> FunctionExpr:
        return as_function(self.read_value(text))

    def read_function_space(self, text: str) -> FuncSpace:
        value = self.read_value(text)
        if not isinstance(value, FuncSpace):
            raise ExpressionTypeError(f'Expected ES(...), got a {kind_name(value)}')
        return value

    def read_condition_space(self, text: str) -> CondSpace:
        value = self.read_value(text)
        if not isinstance(value, CondSpace):
            raise ExpressionTypeError(f'Expected BC(...), got a {kind_name(value)}')
        return value

    def read_functions(self, text: Optional[str]) -> Optional[Tuple[FunctionExpr, ...]]:
        """Comma-separated function list, e.g. for --fundsys."""
        if not text:
            return None
        return tuple(as_function(eval_ast(node)) for node in parse_list(text))


def _error_text(error) -> str:
    if isinstance(error, ValidationError):
        return json.dumps(error.detail, default=str)
    return str(error)
