"""
Coefficient functions.

ExpPolynomial is a finite sum of terms c * x^k * exp(lam*x) with constants c
and rational frequencies lam. FunctionExpr is a quotient of two such sums and
is the coefficient domain of integro-differential operators. Integration is
only closed on exponential polynomials; quotients raise NoClosedForm.
"""

import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import lcm
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import Poly, QQ, Rational as SymRational, symbols

from .constants import ExpConstant, ONE, ZERO, as_fraction, format_rational, join_signed
from .exceptions import DivisionByZero, NoClosedForm, PoleAtPoint

logger = logging.getLogger(__name__)

# monomial key: (frequency, degree)
Monomial = Tuple[Fraction, int]

_X, _Y, _T = symbols('x y t')


def _trim(coefficients: Iterable[ExpConstant]) -> Tuple[ExpConstant, ...]:
    coefficients = list(coefficients)
    while coefficients and not coefficients[-1]:
        coefficients.pop()
    return tuple(coefficients)


def _poly_add(p: Tuple[ExpConstant, ...], q: Tuple[ExpConstant, ...]) -> Tuple[ExpConstant, ...]:
    size = max(len(p), len(q))
    return _trim(
        (p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO)
        for i in range(size)
    )


def _poly_mul(p: Tuple[ExpConstant, ...], q: Tuple[ExpConstant, ...]) -> Tuple[ExpConstant, ...]:
    if not p or not q:
        return ()
    result = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                result[i + j] = result[i + j] + a * b
    return _trim(result)


def _poly_derivative(p: Tuple[ExpConstant, ...]) -> Tuple[ExpConstant, ...]:
    return _trim(p[k] * k for k in range(1, len(p)))


def _poly_value(p: Tuple[ExpConstant, ...], point: Fraction) -> ExpConstant:
    value = ZERO
    for coefficient in reversed(p):
        value = value * point + coefficient
    return value


class ExpPolynomial:
    """
    Finite sum of c * x^k * exp(lam*x); stored as frequency -> polynomial
    coefficients in ascending degree.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Dict[Fraction, Tuple[ExpConstant, ...]] = None):
        cleaned = {}
        for frequency, coefficients in (terms or {}).items():
            coefficients = _trim(ExpConstant.coerce(c) for c in coefficients)
            if coefficients:
                cleaned[as_fraction(frequency)] = coefficients
        self._terms = tuple(sorted(cleaned.items()))
        self._hash = None

    @classmethod
    def zero(cls) -> 'ExpPolynomial':
        return cls()

    @classmethod
    def constant(cls, value) -> 'ExpPolynomial':
        return cls({Fraction(0): (ExpConstant.coerce(value),)})

    @classmethod
    def one(cls) -> 'ExpPolynomial':
        return cls.constant(ONE)

    @classmethod
    def monomial(cls, degree: int = 0, frequency=0, coefficient=1) -> 'ExpPolynomial':
        coefficients = [ZERO] * degree + [ExpConstant.coerce(coefficient)]
        return cls({as_fraction(frequency): tuple(coefficients)})

    @classmethod
    def from_coordinates(cls, coordinates: Dict[Monomial, ExpConstant]) -> 'ExpPolynomial':
        grouped: Dict[Fraction, List[ExpConstant]] = {}
        for (frequency, degree), coefficient in coordinates.items():
            row = grouped.setdefault(frequency, [])
            row.extend([ZERO] * (degree + 1 - len(row)))
            row[degree] = row[degree] + coefficient
        return cls({f: tuple(c) for f, c in grouped.items()})

    @property
    def terms(self) -> Tuple[Tuple[Fraction, Tuple[ExpConstant, ...]], ...]:
        return self._terms

    def coordinates(self) -> Dict[Monomial, ExpConstant]:
        return {
            (frequency, degree): c
            for frequency, coefficients in self._terms
            for degree, c in enumerate(coefficients)
            if c
        }

    def frequencies(self) -> Tuple[Fraction, ...]:
        return tuple(f for f, _ in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0 and len(self._terms[0][1]) == 1)

    def constant_value(self) -> ExpConstant:
        if not self._terms:
            return ZERO
        if not self.is_constant():
            raise ValueError(f'{self} is not constant')
        return self._terms[0][1][0]

    def is_unit_monomial(self) -> bool:
        """True for c * exp(lam*x), which is invertible in the algebra."""
        return len(self._terms) == 1 and len(self._terms[0][1]) == 1

    def has_rational_coefficients(self) -> bool:
        return all(c.is_rational() for _, coefficients in self._terms for c in coefficients)

    def leading(self) -> Tuple[Monomial, ExpConstant]:
        frequency, coefficients = self._terms[-1]
        return (frequency, len(coefficients) - 1), coefficients[-1]

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __neg__(self) -> 'ExpPolynomial':
        return ExpPolynomial({f: tuple(-c for c in p) for f, p in self._terms})

    def __add__(self, other: 'ExpPolynomial') -> 'ExpPolynomial':
        merged = dict(self._terms)
        for frequency, coefficients in other._terms:
            merged[frequency] = _poly_add(merged.get(frequency, ()), coefficients)
        return ExpPolynomial(merged)

    def __sub__(self, other: 'ExpPolynomial') -> 'ExpPolynomial':
        return self + (-other)

    def __mul__(self, other: 'ExpPolynomial') -> 'ExpPolynomial':
        product: Dict[Fraction, Tuple[ExpConstant, ...]] = {}
        for f1, p1 in self._terms:
            for f2, p2 in other._terms:
                frequency = f1 + f2
                product[frequency] = _poly_add(product.get(frequency, ()), _poly_mul(p1, p2))
        return ExpPolynomial(product)

    def scale(self, constant) -> 'ExpPolynomial':
        constant = ExpConstant.coerce(constant)
        if not constant:
            return ExpPolynomial()
        return ExpPolynomial({f: tuple(c * constant for c in p) for f, p in self._terms})

    def shift(self, frequency: Fraction) -> 'ExpPolynomial':
        """Multiply by exp(frequency*x)."""
        return ExpPolynomial({f + frequency: p for f, p in self._terms})

    def differentiate(self) -> 'ExpPolynomial':
        # (p e^{lam x})' = (p' + lam p) e^{lam x}
        return ExpPolynomial({
            f: _poly_add(_poly_derivative(p), tuple(c * f for c in p))
            for f, p in self._terms
        })

    def integrate(self) -> 'ExpPolynomial':
        """
        Antiderivative vanishing at 0.
        """
        result: Dict[Fraction, Tuple[ExpConstant, ...]] = {}
        correction = ZERO
        for frequency, p in self._terms:
            if frequency == 0:
                antiderivative = (ZERO,) + tuple(c / (k + 1) for k, c in enumerate(p))
                result[frequency] = _poly_add(result.get(frequency, ()), antiderivative)
                continue
            # sum_j (-1)^j p^(j) / lam^(j+1)
            primitive: Tuple[ExpConstant, ...] = ()
            derivative = p
            j = 0
            while derivative:
                factor = ExpConstant.rational(Fraction((-1) ** j) / frequency ** (j + 1))
                primitive = _poly_add(primitive, tuple(c * factor for c in derivative))
                derivative = _poly_derivative(derivative)
                j += 1
            result[frequency] = _poly_add(result.get(frequency, ()), primitive)
            correction = correction + (primitive[0] if primitive else ZERO)
        if correction:
            result[Fraction(0)] = _poly_add(result.get(Fraction(0), ()), (-correction,))
        return ExpPolynomial(result)

    def evaluate(self, point) -> ExpConstant:
        point = as_fraction(point)
        value = ZERO
        for frequency, p in self._terms:
            inner = _poly_value(p, point)
            if frequency and point:
                inner = inner * ExpConstant.exp(frequency * point)
            value = value + inner
        return value

    def __str__(self) -> str:
        pieces = []
        for (frequency, degree), coefficient in sorted(self.coordinates().items(), reverse=True):
            pieces.append(render_monomial(degree, frequency, coefficient))
        return join_signed(pieces)

    def __repr__(self) -> str:
        return f'ExpPolynomial({self})'


def render_monomial(degree: int, frequency: Fraction, coefficient: ExpConstant = ONE) -> str:
    factors = []
    if degree == 1:
        factors.append('x')
    elif degree > 1:
        factors.append(f'x^{degree}')
    if frequency == 1:
        factors.append('exp(x)')
    elif frequency == -1:
        factors.append('exp(-x)')
    elif frequency:
        factors.append(f'exp({format_rational(frequency)}*x)')
    if not factors:
        return str(coefficient)
    body = '*'.join(factors)
    if coefficient.is_one():
        return body
    if (-coefficient).is_one():
        return f'-{body}'
    if coefficient.is_atomic():
        return f'{coefficient}*{body}'
    return f'({coefficient})*{body}'


def _poly_to_sympy(p: ExpPolynomial, low: Fraction, scale: int) -> Poly:
    rep = {}
    for (frequency, degree), c in p.coordinates().items():
        value = c.to_fraction()
        rep[(degree, int((frequency - low) * scale))] = SymRational(value.numerator, value.denominator)
    return Poly.from_dict(rep, _X, _Y, domain=QQ)


def _poly_from_sympy(poly: Poly, low: Fraction, scale: int) -> ExpPolynomial:
    coordinates = {}
    for (degree, power), c in poly.terms():
        coordinates[(low + Fraction(power, scale), degree)] = ExpConstant.rational(Fraction(int(c.p), int(c.q)))
    return ExpPolynomial.from_coordinates(coordinates)


@lru_cache(maxsize=2048)
def _cancel_rational(num: ExpPolynomial, den: ExpPolynomial) -> Tuple[ExpPolynomial, ExpPolynomial]:
    """
    gcd cancellation for quotients with rational coefficients, computed in
    the polynomial ring Q[x, y] with y = exp(x/N).
    """
    frequencies = num.frequencies() + den.frequencies()
    scale = reduce(lcm, (f.denominator for f in frequencies), 1)
    low = min(frequencies)
    p = _poly_to_sympy(num, low, scale)
    q = _poly_to_sympy(den, low, scale)
    g = p.gcd(q)
    if g.total_degree() <= 0:
        return num, den
    return _poly_from_sympy(p.exquo(g), low, scale), _poly_from_sympy(q.exquo(g), low, scale)


def _clear_denominators(p: ExpPolynomial) -> Tuple[ExpPolynomial, ExpConstant]:
    """
    Scale p so every coefficient is a Laurent sum; returns the scaled
    polynomial and the factor used.
    """
    factors: List[ExpConstant] = []
    for c in p.coordinates().values():
        if not c.is_laurent():
            factor = ExpConstant(dict(c.denominator_terms))
            if factor not in factors:
                factors.append(factor)
    factor = reduce(lambda a, b: a * b, factors, ONE)
    return p.scale(factor), factor


def _laurent_to_sympy(p: ExpPolynomial, low: Fraction, scale: int, t_low: Fraction, t_scale: int) -> Poly:
    rep = {}
    for (frequency, degree), c in p.coordinates().items():
        for exponent, value in c.numerator_terms:
            key = (degree, int((frequency - low) * scale), int((exponent - t_low) * t_scale))
            rep[key] = rep.get(key, 0) + SymRational(value.numerator, value.denominator)
    return Poly.from_dict(rep, _X, _Y, _T, domain=QQ)


def _laurent_from_sympy(poly: Poly, low: Fraction, scale: int, t_low: Fraction, t_scale: int) -> ExpPolynomial:
    coordinates: Dict[Monomial, ExpConstant] = {}
    for (degree, power, t_power), c in poly.terms():
        key = (low + Fraction(power, scale), degree)
        value = ExpConstant.exp(t_low + Fraction(t_power, t_scale), Fraction(int(c.p), int(c.q)))
        coordinates[key] = coordinates.get(key, ZERO) + value
    return ExpPolynomial.from_coordinates(coordinates)


@lru_cache(maxsize=1024)
def _cancel_exponential(num: ExpPolynomial, den: ExpPolynomial) -> Tuple[ExpPolynomial, ExpPolynomial]:
    """
    gcd cancellation over the constant field. Coefficients are cleared to
    Laurent sums and the gcd is computed in Q[x, y, t] with y = exp(x/N)
    and t = exp(1/M).
    """
    cleared_num, num_factor = _clear_denominators(num)
    cleared_den, den_factor = _clear_denominators(den)
    frequencies = num.frequencies() + den.frequencies()
    scale = reduce(lcm, (f.denominator for f in frequencies), 1)
    low = min(frequencies)
    exponents = [
        e
        for p in (cleared_num, cleared_den)
        for c in p.coordinates().values()
        for e, _ in c.numerator_terms
    ]
    t_scale = reduce(lcm, (e.denominator for e in exponents), 1)
    t_low = min(exponents)
    p = _laurent_to_sympy(cleared_num, low, scale, t_low, t_scale)
    q = _laurent_to_sympy(cleared_den, low, scale, t_low, t_scale)
    g = p.gcd(q)
    if g.degree(_X) <= 0 and g.degree(_Y) <= 0:
        return num, den
    reduced_num = _laurent_from_sympy(p.exquo(g), low, scale, t_low, t_scale)
    reduced_den = _laurent_from_sympy(q.exquo(g), low, scale, t_low, t_scale)
    return reduced_num.scale(den_factor / num_factor), reduced_den


def _normalize_quotient(num: ExpPolynomial, den: ExpPolynomial) -> Tuple[ExpPolynomial, ExpPolynomial]:
    if not den:
        raise DivisionByZero('Division by the zero function')
    if not num:
        return ExpPolynomial(), ExpPolynomial.one()
    if not den.is_unit_monomial():
        if num.has_rational_coefficients() and den.has_rational_coefficients():
            num, den = _cancel_rational(num, den)
        else:
            num, den = _cancel_exponential(num, den)
    if den.is_unit_monomial():
        frequency, coefficients = den.terms[0]
        return num.shift(-frequency).scale(coefficients[0].inverse()), ExpPolynomial.one()
    low = min(den.frequencies())
    _, lead = den.leading()
    inverse = lead.inverse()
    return num.shift(-low).scale(inverse), den.shift(-low).scale(inverse)


class FunctionExpr:
    """
    Quotient of exponential polynomials in the variable x.
    """

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator: ExpPolynomial = None, denominator: Optional[ExpPolynomial] = None):
        numerator = numerator if numerator is not None else ExpPolynomial()
        if denominator is None:
            self.numerator, self.denominator = numerator, ExpPolynomial.one()
        else:
            self.numerator, self.denominator = _normalize_quotient(numerator, denominator)

    @classmethod
    def _raw(cls, numerator: ExpPolynomial, denominator: ExpPolynomial) -> 'FunctionExpr':
        obj = cls.__new__(cls)
        obj.numerator = numerator
        obj.denominator = denominator
        return obj

    @classmethod
    def constant(cls, value) -> 'FunctionExpr':
        return cls(ExpPolynomial.constant(value))

    @classmethod
    def zero(cls) -> 'FunctionExpr':
        return cls()

    @classmethod
    def one(cls) -> 'FunctionExpr':
        return cls(ExpPolynomial.one())

    @classmethod
    def x(cls) -> 'FunctionExpr':
        return cls(ExpPolynomial.monomial(1))

    @classmethod
    def monomial(cls, degree: int = 0, frequency=0, coefficient=1) -> 'FunctionExpr':
        return cls(ExpPolynomial.monomial(degree, frequency, coefficient))

    @classmethod
    def coerce(cls, value) -> 'FunctionExpr':
        if isinstance(value, FunctionExpr):
            return value
        if isinstance(value, ExpPolynomial):
            return cls(value)
        return cls.constant(value)

    def is_polynomial(self) -> bool:
        return self.denominator.is_constant()

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.numerator.is_constant()

    def is_one(self) -> bool:
        return self.is_constant() and self.constant_value().is_one()

    def constant_value(self) -> ExpConstant:
        if not self.is_constant():
            raise ValueError(f'{self} is not constant')
        return self.numerator.constant_value()

    def as_polynomial(self) -> ExpPolynomial:
        if not self.is_polynomial():
            raise NoClosedForm(f'{self} is not an exponential polynomial')
        return self.numerator

    def coordinates(self) -> Dict[Monomial, ExpConstant]:
        return self.as_polynomial().coordinates()

    def is_atomic(self) -> bool:
        """True when the rendering needs no parentheses as a left factor."""
        if not self.is_polynomial():
            return False
        coordinates = self.numerator.coordinates()
        if len(coordinates) != 1:
            return False
        (coefficient,) = coordinates.values()
        return coefficient.is_atomic()

    def __bool__(self) -> bool:
        return not self.numerator.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ExpConstant, ExpPolynomial)):
            other = FunctionExpr.coerce(other)
        if not isinstance(other, FunctionExpr):
            return NotImplemented
        if self.numerator == other.numerator and self.denominator == other.denominator:
            return True
        if self.is_polynomial() and other.is_polynomial():
            return False
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        if self.is_polynomial():
            return hash(self.numerator)
        # quotients may have several equal representations
        return hash('quotient')

    def __neg__(self) -> 'FunctionExpr':
        return FunctionExpr._raw(-self.numerator, self.denominator)

    def __add__(self, other) -> 'FunctionExpr':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.is_polynomial() and other.is_polynomial():
            return FunctionExpr(self.numerator + other.numerator)
        if self.denominator == other.denominator:
            return FunctionExpr(self.numerator + other.numerator, self.denominator)
        return FunctionExpr(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __sub__(self, other) -> 'FunctionExpr':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'FunctionExpr':
        return (-self) + other

    def __mul__(self, other) -> 'FunctionExpr':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return FunctionExpr()
        if self.is_polynomial() and other.is_polynomial():
            return FunctionExpr(self.numerator * other.numerator)
        return FunctionExpr(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def scale(self, constant) -> 'FunctionExpr':
        return FunctionExpr._raw(self.numerator.scale(constant), self.denominator) if constant else FunctionExpr()

    def inverse(self) -> 'FunctionExpr':
        if self.is_zero():
            raise DivisionByZero('The zero function has no inverse')
        return FunctionExpr(self.denominator, self.numerator)

    def __truediv__(self, other) -> 'FunctionExpr':
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> 'FunctionExpr':
        return self.inverse() * other

    def __pow__(self, power: int) -> 'FunctionExpr':
        if not isinstance(power, int):
            return NotImplemented
        if power < 0:
            return self.inverse() ** (-power)
        result = FunctionExpr.one()
        for _ in range(power):
            result = result * self
        return result

    def differentiate(self, times: int = 1) -> 'FunctionExpr':
        result = self
        for _ in range(times):
            if result.is_polynomial():
                result = FunctionExpr(result.numerator.differentiate())
            else:
                num, den = result.numerator, result.denominator
                result = FunctionExpr(num.differentiate() * den - num * den.differentiate(), den * den)
        return result

    def integrate(self) -> 'FunctionExpr':
        """
        Antiderivative with base point 0.
        """
        if not self.is_polynomial():
            raise NoClosedForm(f'No closed-form antiderivative for {self}')
        return FunctionExpr(self.numerator.integrate())

    def evaluate(self, point) -> ExpConstant:
        point = as_fraction(point)
        denominator = self.denominator.evaluate(point)
        if not denominator:
            raise PoleAtPoint(f'{self} has a pole at x = {format_rational(point)}')
        return self.numerator.evaluate(point) / denominator

    def __str__(self) -> str:
        numerator = str(self.numerator)
        if self.is_polynomial():
            return numerator
        if not FunctionExpr(self.numerator).is_atomic():
            numerator = f'({numerator})'
        return f'{numerator}/({self.denominator})'

    def __repr__(self) -> str:
        return f'FunctionExpr({self})'


def _coerce_or_none(value) -> Optional[FunctionExpr]:
    if isinstance(value, FunctionExpr):
        return value
    if isinstance(value, (int, Fraction, ExpConstant, ExpPolynomial)):
        return FunctionExpr.coerce(value)
    return None


def fn_add(f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    return f + g


def fn_mul(f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    return f * g


def fn_div(f: FunctionExpr, g: FunctionExpr) -> FunctionExpr:
    return f / g


def fn_differentiate(f: FunctionExpr) -> FunctionExpr:
    return f.differentiate()


def fn_integrate(f: FunctionExpr) -> FunctionExpr:
    return f.integrate()


def fn_evaluate(f: FunctionExpr, point) -> ExpConstant:
    return f.evaluate(point)
