"""
Coefficient fields QQ and F_p.
"""

import pytest
from sympy import Rational

from tstd.errors import FieldError, ParseError
from tstd.kernel.coeff import Coefficient, FieldKind, FieldSpec, field_add, field_inv


@pytest.fixture
def f7():
    return FieldSpec.prime(7)


def test_field_kinds():
    assert FieldSpec().kind == FieldKind.RATIONALS
    assert FieldSpec.prime(32003).kind == FieldKind.PRIME_FIELD
    assert str(FieldSpec()) == 'QQ'
    assert str(FieldSpec.prime(7)) == 'GF(7)'


@pytest.mark.parametrize('p', [1, 4, 32004, -5, 2 ** 31 + 11])
def test_invalid_characteristic(p):
    with pytest.raises(FieldError):
        FieldSpec(p)


@pytest.mark.parametrize('text, p', [('QQ', 0), ('GF(7)', 7), ('F_32003', 32003), ('5', 5)])
def test_from_text(text, p):
    assert FieldSpec.from_text(text).characteristic == p


def test_from_text_rejects_garbage():
    with pytest.raises(FieldError):
        FieldSpec.from_text('RR')


def test_rational_arithmetic():
    QQ = FieldSpec()
    a = Coefficient.of(Rational(1, 2), QQ)
    b = Coefficient.of(Rational(-3, 4), QQ)
    assert str(a + b) == '-1/4'
    assert str(a * b) == '-3/8'
    assert str(a - b) == '5/4'
    assert str(b.inverse()) == '-4/3'
    assert str(-a) == '-1/2'


def test_prime_field_arithmetic(f7):
    a = Coefficient.of(3, f7)
    assert str(a.inverse()) == '5'
    assert str(a + Coefficient.of(5, f7)) == '1'
    assert str(Coefficient.of(-1, f7)) == '6'


def test_rational_into_prime_field(f7):
    assert str(Coefficient.of(Rational(1, 2), f7)) == '4'
    with pytest.raises(FieldError, match="division by zero"):
        f7.convert(Rational(1, 7))


def test_inverse_of_zero():
    with pytest.raises(FieldError, match="division by zero in coefficient field"):
        field_inv(Coefficient.of(0, FieldSpec()))


def test_mixed_fields_rejected(f7):
    with pytest.raises(FieldError, match="mixed coefficient fields"):
        field_add(Coefficient.of(1, f7), Coefficient.of(1, FieldSpec()))


def test_parse_and_format_are_canonical(f7):
    QQ = FieldSpec()
    assert QQ.format(QQ.parse('-6/8')) == '-3/4'
    assert QQ.format(QQ.parse(' 12 ')) == '12'
    assert f7.format(f7.parse('-1')) == '6'
    assert QQ.is_canonical(QQ.parse('2/4'))
    with pytest.raises(ParseError):
        QQ.parse('1.5')


def test_coefficient_equality_respects_field(f7):
    assert Coefficient.of(8, f7) == Coefficient.of(1, f7)
    assert Coefficient.of(1, f7) != Coefficient.of(1, FieldSpec())
    assert len({Coefficient.of(8, f7), Coefficient.of(1, f7)}) == 1
