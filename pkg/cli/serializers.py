"""
Serializers for the JSON form of engine values.

Every value is a tagged object: 'function', 'operator', 'BC', 'ES', 'BP' or
'GBP' for inputs, plus 'bool' and 'factors' for results. Rationals are
written as "p/q" strings so that no precision is lost.
"""

from fractions import Fraction
from typing import Dict, List

from rest_framework import serializers

from algebra.constants import ExpConstant, format_rational
from algebra.exceptions import AlgebraError
from algebra.funcalg import ExpPolynomial, FunctionExpr
from algebra.idop import IdOperator, kernel_function
from boundary.problems import BoundaryProblem, CondSpace, FuncSpace


class RationalField(serializers.Field):
    """
    Exact rational number written as "p/q" or "p".
    """
    default_error_messages = {
        'invalid': 'Expected a rational number such as "3" or "-1/2".',
    }

    def to_representation(self, value):
        return format_rational(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


def _sum_terms(terms) -> Dict[Fraction, Fraction]:
    total: Dict[Fraction, Fraction] = {}
    for term in terms:
        total[term['exponent']] = total.get(term['exponent'], Fraction(0)) + term['coefficient']
    return total


class ExpTermSerializer(serializers.Serializer):
    exponent = RationalField()
    coefficient = RationalField()


class ConstantSerializer(serializers.Serializer):
    """
    Serializer for constants: quotients of sums of c*exp(r).
    """
    numerator = ExpTermSerializer(many=True)
    denominator = ExpTermSerializer(many=True, required=False)

    def to_representation(self, instance: ExpConstant):
        return {
            'numerator': [_exp_term(e, c) for e, c in instance.numerator_terms],
            'denominator': [_exp_term(e, c) for e, c in instance.denominator_terms],
        }

    def validate(self, attrs):
        denominator = attrs.get('denominator')
        if denominator is not None and not any(_sum_terms(denominator).values()):
            raise serializers.ValidationError('Denominator must not be zero.')
        return attrs

    @staticmethod
    def build(data) -> ExpConstant:
        return ExpConstant(_sum_terms(data['numerator']), _sum_terms(data['denominator']) if data.get('denominator') else None)

    def create(self, validated_data):
        return self.build(validated_data)


def _exp_term(exponent: Fraction, coefficient: Fraction) -> dict:
    return {'exponent': format_rational(exponent), 'coefficient': format_rational(coefficient)}


class MonomialSerializer(serializers.Serializer):
    frequency = RationalField()
    degree = serializers.IntegerField(min_value=0)
    coefficient = ConstantSerializer()


def _monomials(polynomial: ExpPolynomial) -> List[dict]:
    return [
        {
            'frequency': format_rational(frequency),
            'degree': degree,
            'coefficient': ConstantSerializer().to_representation(coefficient),
        }
        for (frequency, degree), coefficient in sorted(polynomial.coordinates().items())
    ]


def _polynomial(monomials) -> ExpPolynomial:
    coordinates = {}
    for monomial in monomials:
        key = (monomial['frequency'], monomial['degree'])
        coordinates[key] = coordinates.get(key, ExpConstant.rational(0)) + ConstantSerializer.build(monomial['coefficient'])
    return ExpPolynomial.from_coordinates(coordinates)


class FunctionSerializer(serializers.Serializer):
    """
    Serializer for coefficient functions.
    """
    tag = serializers.ChoiceField(choices=['function'], required=False)
    numerator = MonomialSerializer(many=True)
    denominator = MonomialSerializer(many=True, required=False)

    def to_representation(self, instance: FunctionExpr):
        data = {'tag': 'function', 'numerator': _monomials(instance.numerator)}
        if not instance.is_polynomial():
            data['denominator'] = _monomials(instance.denominator)
        return data

    def validate(self, attrs):
        if 'denominator' in attrs and not attrs['denominator']:
            raise serializers.ValidationError('Denominator must not be empty.')
        return attrs

    @staticmethod
    def build(data) -> FunctionExpr:
        numerator = _polynomial(data['numerator'])
        if data.get('denominator'):
            return FunctionExpr(numerator, _polynomial(data['denominator']))
        return FunctionExpr(numerator)

    def create(self, validated_data):
        return self.build(validated_data)


class TermSerializer(serializers.Serializer):
    """
    One coefficient-word pair of an operator in normal form.
    """
    kind = serializers.ChoiceField(choices=['D', 'A', 'E', 'EA'])
    coefficient = FunctionSerializer()
    order = serializers.IntegerField(min_value=0, required=False, allow_null=True)
    point = RationalField(required=False, allow_null=True)
    kernel = FunctionSerializer(required=False, allow_null=True)

    def to_representation(self, instance):
        word, coefficient = instance
        kind = word[0]
        data = {
            'kind': kind,
            'coefficient': FunctionSerializer().to_representation(coefficient),
            'order': None,
            'point': None,
            'kernel': None,
        }
        if kind == 'D':
            data['order'] = word[1]
        elif kind == 'A':
            data['kernel'] = FunctionSerializer().to_representation(kernel_function(word[1]))
        elif kind == 'E':
            data['point'] = format_rational(word[1])
            data['order'] = word[2]
        else:
            data['point'] = format_rational(word[1])
            data['kernel'] = FunctionSerializer().to_representation(kernel_function(word[2]))
        return data

    def validate(self, attrs):
        kind = attrs['kind']
        if kind in ('D', 'E') and attrs.get('order') is None:
            raise serializers.ValidationError({'order': f'Required for {kind} terms.'})
        if kind in ('E', 'EA') and attrs.get('point') is None:
            raise serializers.ValidationError({'point': f'Required for {kind} terms.'})
        if kind in ('A', 'EA') and attrs.get('kernel') is None:
            raise serializers.ValidationError({'kernel': f'Required for {kind} terms.'})
        return attrs

    @staticmethod
    def build(data) -> IdOperator:
        coefficient = IdOperator.function(FunctionSerializer.build(data['coefficient']))
        kind = data['kind']
        if kind == 'D':
            return coefficient * IdOperator.derivation(data['order'])
        if kind == 'E':
            return coefficient * IdOperator.evaluation(data['point'], data['order'])
        kernel = FunctionSerializer.build(data['kernel'])
        if kind == 'A':
            return coefficient * IdOperator.integral(kernel)
        return coefficient * IdOperator.integral_evaluation(data['point'], kernel)


class OperatorSerializer(serializers.Serializer):
    """
    Serializer for integro-differential operators.
    """
    tag = serializers.ChoiceField(choices=['operator'])
    terms = TermSerializer(many=True)

    def to_representation(self, instance: IdOperator):
        return {
            'tag': 'operator',
            'terms': [TermSerializer().to_representation(term) for term in instance.sorted_terms()],
        }

    @staticmethod
    def build(data) -> IdOperator:
        total = IdOperator.zero()
        for term in data['terms']:
            total = total + TermSerializer.build(term)
        return total

    def create(self, validated_data):
        return self.build(validated_data)


class CondSpaceSerializer(serializers.Serializer):
    tag = serializers.ChoiceField(choices=['BC'])
    items = OperatorSerializer(many=True)

    def to_representation(self, instance: CondSpace):
        return {'tag': 'BC', 'items': [OperatorSerializer().to_representation(b) for b in instance.basis]}

    @staticmethod
    def build(data) -> CondSpace:
        return CondSpace(tuple(OperatorSerializer.build(item) for item in data['items']))

    def create(self, validated_data):
        return self.build(validated_data)


class FuncSpaceSerializer(serializers.Serializer):
    tag = serializers.ChoiceField(choices=['ES'])
    items = FunctionSerializer(many=True)

    def to_representation(self, instance: FuncSpace):
        return {'tag': 'ES', 'items': [FunctionSerializer().to_representation(f) for f in instance.basis]}

    @staticmethod
    def build(data) -> FuncSpace:
        return FuncSpace(tuple(FunctionSerializer.build(item) for item in data['items']))

    def create(self, validated_data):
        return self.build(validated_data)


class ProblemSerializer(serializers.Serializer):
    """
    Serializer for boundary problems BP(T, B) and GBP(T, B, E).
    """
    tag = serializers.ChoiceField(choices=['BP', 'GBP'])
    operator = OperatorSerializer()
    conditions = CondSpaceSerializer()
    exceptional = FuncSpaceSerializer(required=False)
    fundamental_system = FunctionSerializer(many=True, required=False, allow_null=True)

    def to_representation(self, instance: BoundaryProblem):
        return {
            'tag': 'GBP' if instance.exceptional.basis else 'BP',
            'operator': OperatorSerializer().to_representation(instance.operator),
            'conditions': CondSpaceSerializer().to_representation(instance.conditions),
            'exceptional': FuncSpaceSerializer().to_representation(instance.exceptional),
            'fundamental_system': (
                [FunctionSerializer().to_representation(u) for u in instance.fundamental_system]
                if instance.fundamental_system else None
            ),
        }

    @staticmethod
    def build(data) -> BoundaryProblem:
        exceptional = FuncSpaceSerializer.build(data['exceptional']) if data.get('exceptional') else FuncSpace()
        fundamental = data.get('fundamental_system')
        return BoundaryProblem(
            OperatorSerializer.build(data['operator']),
            CondSpaceSerializer.build(data['conditions']),
            exceptional,
            tuple(FunctionSerializer.build(u) for u in fundamental) if fundamental else None,
        )

    def create(self, validated_data):
        return self.build(validated_data)


SERIALIZERS_BY_TAG = {
    'function': FunctionSerializer,
    'operator': OperatorSerializer,
    'BC': CondSpaceSerializer,
    'ES': FuncSpaceSerializer,
    'BP': ProblemSerializer,
    'GBP': ProblemSerializer,
}


def load_value(payload: dict):
    """
    Validate a tagged JSON object and build the engine value.

    Raises rest_framework.exceptions.ValidationError for malformed input.
    """
    if not isinstance(payload, dict) or payload.get('tag') not in SERIALIZERS_BY_TAG:
        raise serializers.ValidationError({'tag': f'Expected one of {sorted(SERIALIZERS_BY_TAG)}.'})
    serializer = SERIALIZERS_BY_TAG[payload['tag']](data=payload)
    serializer.is_valid(raise_exception=True)
    return serializer.save()


def dump_value(value):
    """
    Tagged JSON-ready data for a command result.
    """
    if isinstance(value, bool):
        return {'tag': 'bool', 'value': value}
    if isinstance(value, (list, tuple)):
        return {'tag': 'factors', 'items': [dump_value(item) for item in value]}
    if isinstance(value, FunctionExpr):
        return FunctionSerializer(value).data
    if isinstance(value, IdOperator):
        return OperatorSerializer(value).data
    if isinstance(value, CondSpace):
        return CondSpaceSerializer(value).data
    if isinstance(value, FuncSpace):
        return FuncSpaceSerializer(value).data
    if isinstance(value, BoundaryProblem):
        return ProblemSerializer(value).data
    if isinstance(value, dict):
        return value
    raise TypeError(f'Cannot serialize {type(value).__name__}')
