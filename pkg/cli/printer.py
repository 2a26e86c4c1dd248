"""
Text rendering of expression trees and command results.
"""

from rest_framework.renderers import JSONRenderer

from .parser import ATOM_POWER, BINDING_POWER, PREFIX_POWER, BinaryOp, Call, Evaluation, Name, Negate, Node, Number, Power
from .serializers import dump_value


def _power(node: Node) -> int:
    if isinstance(node, BinaryOp):
        return BINDING_POWER[node.op]
    if isinstance(node, Negate):
        return PREFIX_POWER
    if isinstance(node, Power):
        return BINDING_POWER['^']
    return ATOM_POWER


def _wrapped(node: Node, needs_parentheses: bool) -> str:
    text = render_ast(node)
    return f'({text})' if needs_parentheses else text


def render_ast(node: Node) -> str:
    """
    Print an expression tree with the fewest parentheses that parse back to
    the same tree.
    """
    if isinstance(node, Number):
        return str(node.value)
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Evaluation):
        return f'e({render_ast(node.point)})'
    if isinstance(node, Call):
        return f'{node.name}({", ".join(render_ast(arg) for arg in node.args)})'
    if isinstance(node, Negate):
        return '-' + _wrapped(node.operand, _power(node.operand) < PREFIX_POWER)
    if isinstance(node, Power):
        return _wrapped(node.base, _power(node.base) < ATOM_POWER) + f'^{node.exponent}'
    power = BINDING_POWER[node.op]
    left = _wrapped(node.left, _power(node.left) < power)
    right = _wrapped(node.right, _power(node.right) <= power)
    if node.op in ('+', '-'):
        return f'{left} {node.op} {right}'
    return f'{left}{node.op}{right}'


def render_text(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return '\n'.join(render_text(item) for item in value)
    return str(value)


def render_json(data) -> str:
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')


def render(value, fmt: str = 'text') -> str:
    """
    Render a command result as plain text or as tagged JSON.
    """
    if fmt == 'json':
        return render_json(dump_value(value))
    return render_text(value)

