"""
Exact constants for boundary computations.

A constant is a quotient of two finite rational combinations of exponential
monomials exp(r) with rational exponents r. Values of this shape arise when
exponential polynomials are evaluated at rational points, so the engine never
has to leave exact arithmetic.

Quotients are kept in lowest terms: numerator and denominator are reduced by
their gcd (computed with sympy in the variable t = exp(1/N)), the denominator
is shifted to have lowest exponent 0 and is scaled to have leading
coefficient 1.
"""

import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from numbers import Rational
from typing import Dict, Iterable, Tuple, Union

from sympy import E, Poly, QQ, Rational as SymRational, Symbol

from .exceptions import DivisionByZero

logger = logging.getLogger(__name__)

# (exponent, coefficient) pairs sorted by exponent
Terms = Tuple[Tuple[Fraction, Fraction], ...]

_T = Symbol('t')
_ONE_TERMS: Terms = ((Fraction(0), Fraction(1)),)


def as_fraction(value) -> Fraction:
    """
    Coerce an int, Fraction or 'p/q' string into a Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f'Cannot interpret {value!r} as a rational number')


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def _collect(pairs: Iterable[Tuple[Fraction, Fraction]]) -> Dict[Fraction, Fraction]:
    collected: Dict[Fraction, Fraction] = {}
    for exponent, coefficient in pairs:
        collected[exponent] = collected.get(exponent, Fraction(0)) + coefficient
    return {e: c for e, c in collected.items() if c}


def _to_poly(terms: Terms, low: Fraction, scale: int) -> Poly:
    rep = {
        (int((exponent - low) * scale),): SymRational(c.numerator, c.denominator)
        for exponent, c in terms
    }
    return Poly.from_dict(rep, _T, domain=QQ)


def _from_poly(poly: Poly, low: Fraction, scale: int) -> Terms:
    pairs = []
    for (power,), coefficient in poly.terms():
        pairs.append((low + Fraction(power, scale), Fraction(int(coefficient.p), int(coefficient.q))))
    return tuple(sorted(pairs))


@lru_cache(maxsize=4096)
def _cancel(num: Terms, den: Terms) -> Tuple[Terms, Terms]:
    """
    Divide numerator and denominator by their polynomial gcd.
    """
    exponents = [e for e, _ in num + den]
    scale = reduce(lcm, (e.denominator for e in exponents), 1)
    low = min(exponents)
    p = _to_poly(num, low, scale)
    q = _to_poly(den, low, scale)
    g = p.gcd(q)
    if g.degree() <= 0:
        return num, den
    return _from_poly(p.exquo(g), low, scale), _from_poly(q.exquo(g), low, scale)


def _normalize(num: Dict[Fraction, Fraction], den: Dict[Fraction, Fraction]) -> Tuple[Terms, Terms]:
    num = {e: c for e, c in num.items() if c}
    den = {e: c for e, c in den.items() if c}
    if not den:
        raise DivisionByZero('Division by the zero constant')
    if not num:
        return (), _ONE_TERMS
    if len(den) > 1:
        reduced_num, reduced_den = _cancel(tuple(sorted(num.items())), tuple(sorted(den.items())))
        num, den = dict(reduced_num), dict(reduced_den)
    shift = min(den)
    lead = den[max(den)]
    num_terms = tuple(sorted((e - shift, c / lead) for e, c in num.items()))
    den_terms = tuple(sorted((e - shift, c / lead) for e, c in den.items()))
    return num_terms, den_terms


def _render_terms(terms: Terms) -> str:
    pieces = []
    for exponent, coefficient in sorted(terms, reverse=True):
        if exponent == 0:
            piece = format_rational(coefficient)
        else:
            power = 'exp(1)' if exponent == 1 else f'exp({format_rational(exponent)})'
            if coefficient == 1:
                piece = power
            elif coefficient == -1:
                piece = f'-{power}'
            else:
                piece = f'{format_rational(coefficient)}*{power}'
        pieces.append(piece)
    return join_signed(pieces)


def join_signed(pieces) -> str:
    """
    Join rendered summands with ' + ' / ' - ' depending on their sign.
    """
    text = ''
    for index, piece in enumerate(pieces):
        if index == 0:
            text = piece
        elif piece.startswith('-'):
            text += f' - {piece[1:]}'
        else:
            text += f' + {piece}'
    return text or '0'


class ExpConstant:
    """
    Element of the constant field: a reduced quotient of Laurent polynomials
    in exponentials with rational exponents.
    """

    __slots__ = ('_num', '_den', '_hash')

    def __init__(self, numerator: Dict[Fraction, Fraction] = None, denominator: Dict[Fraction, Fraction] = None):
        num = _collect((as_fraction(e), as_fraction(c)) for e, c in (numerator or {}).items())
        den = _collect((as_fraction(e), as_fraction(c)) for e, c in (denominator or {Fraction(0): Fraction(1)}).items())
        self._num, self._den = _normalize(num, den)
        self._hash = None

    @classmethod
    def _from_reduced(cls, num: Terms, den: Terms) -> 'ExpConstant':
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    @classmethod
    def _build(cls, num: Dict[Fraction, Fraction], den: Dict[Fraction, Fraction]) -> 'ExpConstant':
        return cls._from_reduced(*_normalize(num, den))

    @classmethod
    def rational(cls, value) -> 'ExpConstant':
        value = as_fraction(value)
        if not value:
            return cls._from_reduced((), _ONE_TERMS)
        return cls._from_reduced(((Fraction(0), value),), _ONE_TERMS)

    @classmethod
    def exp(cls, exponent, coefficient=1) -> 'ExpConstant':
        """
        The constant coefficient * exp(exponent).
        """
        return cls._build({as_fraction(exponent): as_fraction(coefficient)}, {Fraction(0): Fraction(1)})

    @classmethod
    def coerce(cls, value) -> 'ExpConstant':
        if isinstance(value, ExpConstant):
            return value
        return cls.rational(value)

    @property
    def numerator_terms(self) -> Terms:
        return self._num

    @property
    def denominator_terms(self) -> Terms:
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def is_one(self) -> bool:
        return self._num == _ONE_TERMS and self._den == _ONE_TERMS

    def is_rational(self) -> bool:
        return self._den == _ONE_TERMS and all(e == 0 for e, _ in self._num)

    def is_laurent(self) -> bool:
        """True when the denominator is 1."""
        return self._den == _ONE_TERMS

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f'{self} is not a rational number')
        return self._num[0][1] if self._num else Fraction(0)

    def is_atomic(self) -> bool:
        """
        True when the rendering is a single signed product and needs no
        parentheses as a factor.
        """
        return self._den == _ONE_TERMS and len(self._num) <= 1

    def exponents(self) -> Tuple[Fraction, ...]:
        return tuple(e for e, _ in self._num + self._den)

    def __bool__(self) -> bool:
        return bool(self._num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExpConstant.rational(other)
        if not isinstance(other, ExpConstant):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __neg__(self) -> 'ExpConstant':
        return ExpConstant._from_reduced(tuple((e, -c) for e, c in self._num), self._den)

    def __add__(self, other) -> 'ExpConstant':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        if self._den == other._den:
            return ExpConstant._build(_collect(self._num + other._num), dict(self._den))
        num = _collect(_product(self._num, other._den) + _product(other._num, self._den))
        return ExpConstant._build(num, _collect(_product(self._den, other._den)))

    __radd__ = __add__

    def __sub__(self, other) -> 'ExpConstant':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'ExpConstant':
        return (-self) + other

    def __mul__(self, other) -> 'ExpConstant':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self._num or not other._num:
            return ExpConstant._from_reduced((), _ONE_TERMS)
        if self.is_one():
            return other
        if other.is_one():
            return self
        num = _collect(_product(self._num, other._num))
        den = _collect(_product(self._den, other._den))
        return ExpConstant._build(num, den)

    __rmul__ = __mul__

    def inverse(self) -> 'ExpConstant':
        if not self._num:
            raise DivisionByZero('The zero constant has no inverse')
        return ExpConstant._build(dict(self._den), dict(self._num))

    def __truediv__(self, other) -> 'ExpConstant':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> 'ExpConstant':
        return self.inverse() * other

    def __pow__(self, power: int) -> 'ExpConstant':
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            return self.inverse() ** (-power)
        result = ExpConstant.rational(1)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def approximate(self, digits: int = 15) -> str:
        """
        Decimal rendering, used for display only.
        """
        def to_sympy(terms):
            return sum(
                (SymRational(c.numerator, c.denominator) * E ** SymRational(e.numerator, e.denominator)
                 for e, c in terms),
                SymRational(0),
            )
        return str((to_sympy(self._num) / to_sympy(self._den)).evalf(digits))

    def __str__(self) -> str:
        numerator = _render_terms(self._num)
        if self._den == _ONE_TERMS:
            return numerator
        denominator = _render_terms(self._den)
        if len(self._num) > 1:
            numerator = f'({numerator})'
        if len(self._den) > 1 or self._den[0][1] != 1:
            denominator = f'({denominator})'
        return f'{numerator}/{denominator}'

    def __repr__(self) -> str:
        return f'ExpConstant({self})'


def _coerce_or_none(value):
    if isinstance(value, ExpConstant):
        return value
    if isinstance(value, (int, Fraction)):
        return ExpConstant.rational(value)
    return None


def _product(left: Terms, right: Terms) -> Terms:
    return tuple((e1 + e2, c1 * c2) for e1, c1 in left for e2, c2 in right)


ZERO = ExpConstant.rational(0)
ONE = ExpConstant.rational(1)

ConstantLike = Union[ExpConstant, Fraction, int]


def const_add(a: ConstantLike, b: ConstantLike) -> ExpConstant:
    return ExpConstant.coerce(a) + ExpConstant.coerce(b)


def const_mul(a: ConstantLike, b: ConstantLike) -> ExpConstant:
    return ExpConstant.coerce(a) * ExpConstant.coerce(b)


def const_div(a: ConstantLike, b: ConstantLike) -> ExpConstant:
    return ExpConstant.coerce(a) / ExpConstant.coerce(b)


def const_is_zero(a: ConstantLike) -> bool:
    return ExpConstant.coerce(a).is_zero()
