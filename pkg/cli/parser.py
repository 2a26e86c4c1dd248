"""
Expression parser for operators, conditions and boundary problems.

The input syntax uses d and a for derivative and integral, e(c) or E[c] for
evaluation at c, exp(r*x) for exponentials and the constructors BP, GBP,
BC, ES and FS. Operators bind, from loosest to tightest: + and -, then
composition '.', then * and /, then unary minus, then ^.
"""

import re
from dataclasses import dataclass
from typing import Iterator, List, Tuple, Union

from .exceptions import ExpressionSyntaxError, ExpressionTypeError


@dataclass(frozen=True)
class Number:
    value: int


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Evaluation:
    point: 'Node'


@dataclass(frozen=True)
class Call:
    name: str
    args: Tuple['Node', ...]


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: 'Node'
    right: 'Node'


@dataclass(frozen=True)
class Negate:
    operand: 'Node'


@dataclass(frozen=True)
class Power:
    base: 'Node'
    exponent: int


Node = Union[Number, Name, Evaluation, Call, BinaryOp, Negate, Power]

BINDING_POWER = {'+': 10, '-': 10, '.': 20, '*': 30, '/': 30, '^': 50}
PREFIX_POWER = 40
ATOM_POWER = 100

ALIASES = {'x': 'x', 'd': 'd', 'D': 'd', 'a': 'a', 'A': 'a'}

# name -> (min args, max args or None)
CONSTRUCTORS = {
    'exp': (1, 1),
    'BP': (2, 3),
    'GBP': (3, 4),
    'BC': (0, None),
    'ES': (0, None),
    'FS': (0, None),
}

_TOKEN = re.compile(
    r'(?P<space>\s+)|(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^.(),\[\]])'
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> Iterator[Token]:
    position, line, line_start = 0, 1, 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        column = position - line_start + 1
        if not match:
            raise ExpressionSyntaxError(f'Unexpected character {text[position]!r}', line, column)
        kind = match.lastgroup
        value = match.group()
        if kind == 'space':
            newlines = value.count('\n')
            if newlines:
                line += newlines
                line_start = position + value.rfind('\n') + 1
        else:
            yield Token(kind, value, line, column)
        position = match.end()
    yield Token('end', '', line, position - line_start + 1)


class Parser:
    """
    Pratt parser over the token stream.
    """

    def __init__(self, text: str):
        self.tokens: List[Token] = list(tokenize(text))
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def advance(self) -> Token:
        token = self.tokens[self.position]
        if token.kind != 'end':
            self.position += 1
        return token

    def error(self, message: str, token: Token = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, token.line, token.column)

    def expect(self, text: str) -> Token:
        token = self.current
        if token.text != text or token.kind == 'end':
            found = 'end of input' if token.kind == 'end' else repr(token.text)
            raise self.error(f'Expected {text!r}, found {found}')
        return self.advance()

    def binding_power(self, token: Token) -> int:
        if token.kind != 'op':
            return 0
        return BINDING_POWER.get(token.text, 0)

    def parse(self) -> Node:
        node = self.expression()
        if self.current.kind != 'end':
            raise self.error(f'Unexpected {self.current.text!r}')
        return node

    def parse_list(self) -> Tuple[Node, ...]:
        if self.current.kind == 'end':
            return ()
        nodes = [self.expression()]
        while self.current.text == ',' and self.current.kind == 'op':
            self.advance()
            nodes.append(self.expression())
        if self.current.kind != 'end':
            raise self.error(f'Unexpected {self.current.text!r}')
        return tuple(nodes)

    def expression(self, right_power: int = 0) -> Node:
        left = self.prefix(self.advance())
        while right_power < self.binding_power(self.current):
            left = self.infix(self.advance(), left)
        return left

    def prefix(self, token: Token) -> Node:
        if token.kind == 'number':
            return Number(int(token.text))
        if token.kind == 'name':
            return self.name(token)
        if token.text == '-':
            return Negate(self.expression(PREFIX_POWER))
        if token.text == '(':
            node = self.expression()
            self.expect(')')
            return node
        found = 'end of input' if token.kind == 'end' else repr(token.text)
        raise self.error(f'Unexpected {found}', token)

    def infix(self, token: Token, left: Node) -> Node:
        if token.text == '^':
            exponent = self.current
            if exponent.kind != 'number':
                raise self.error('Exponent must be a nonnegative integer', exponent)
            self.advance()
            return Power(left, int(exponent.text))
        return BinaryOp(token.text, left, self.expression(BINDING_POWER[token.text]))

    def name(self, token: Token) -> Node:
        if token.text in ALIASES:
            return Name(ALIASES[token.text])
        if token.text in ('e', 'E'):
            opener = self.current
            closer = {'(': ')', '[': ']'}.get(opener.text)
            if opener.kind != 'op' or closer is None:
                raise self.error('Evaluation needs a point: e(c) or E[c]')
            self.advance()
            point = self.expression()
            self.expect(closer)
            return Evaluation(point)
        if token.text in CONSTRUCTORS:
            self.expect('(')
            args = []
            if self.current.text != ')':
                args.append(self.expression())
                while self.current.text == ',':
                    self.advance()
                    args.append(self.expression())
            self.expect(')')
            low, high = CONSTRUCTORS[token.text]
            if len(args) < low or (high is not None and len(args) > high):
                raise ExpressionTypeError(f'{token.text} takes {_arity_text(low, high)} arguments, got {len(args)}')
            return Call(token.text, tuple(args))
        raise self.error(f'Unknown name {token.text!r}', token)


def _arity_text(low: int, high) -> str:
    if high is None:
        return f'at least {low}'
    if low == high:
        return str(low)
    return f'{low} to {high}'


def parse(text: str) -> Node:
    return Parser(text).parse()


def parse_list(text: str) -> Tuple[Node, ...]:
    """Comma-separated expressions, as used by --fundsys and --pool."""
    return Parser(text).parse_list()
