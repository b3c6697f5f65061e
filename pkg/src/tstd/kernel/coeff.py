"""
Exact coefficient fields: the rationals QQ and prime fields F_p.

Field elements are sympy domain elements (``QQ`` or ``GF(p)``); this module
adds the canonical text form and the checks the rest of the engine relies on.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ

from tstd.errors import FieldError, ParseError

logger = logging.getLogger(__name__)

PRIME_BOUND = 2 ** 31

_COEFF_RE = re.compile(r'^\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$')


class FieldKind(str, Enum):
    RATIONALS = 'QQ'
    PRIME_FIELD = 'GF'


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: characteristic 0 means QQ, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p == 0:
            return
        if p < 0 or p >= PRIME_BOUND or not isprime(p):
            raise FieldError(f"characteristic must be 0 or a prime below 2^31, got {p}")

    @classmethod
    def rationals(cls) -> 'FieldSpec':
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> 'FieldSpec':
        return cls(p)

    @classmethod
    def from_text(cls, text: str) -> 'FieldSpec':
        """Parse ``QQ``, ``0``, ``GF(p)``, ``F_p`` or a bare prime."""
        cleaned = text.strip()
        if cleaned.upper() in ('QQ', 'Q', '0'):
            return cls.rationals()
        match = re.fullmatch(r'(?:GF\((\d+)\)|F_?(\d+)|(\d+))', cleaned)
        if not match:
            raise FieldError(f"unknown coefficient field '{text}'")
        return cls.prime(int(next(g for g in match.groups() if g)))

    @property
    def kind(self) -> FieldKind:
        return FieldKind.RATIONALS if self.characteristic == 0 else FieldKind.PRIME_FIELD

    @cached_property
    def domain(self):
        """The sympy domain doing the arithmetic."""
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic, symmetric=False)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def convert(self, value: Union[int, Any]):
        """Map an integer or rational into the field."""
        if self.characteristic == 0:
            return QQ.convert(value)
        if isinstance(value, int):
            return self.domain(value)
        rational = QQ.convert(value)
        denominator = QQ.denom(rational)
        if denominator % self.characteristic == 0:
            raise FieldError("division by zero in coefficient field")
        return self.domain(int(QQ.numer(rational))) / self.domain(int(denominator))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise FieldError("division by zero in coefficient field")
        return self.domain.quo(self.domain.one, a)

    def residue(self, a) -> int:
        """Canonical integer representative in [0, p)."""
        return int(a) % self.characteristic

    def format(self, a) -> str:
        if self.characteristic == 0:
            numerator, denominator = int(QQ.numer(a)), int(QQ.denom(a))
            if denominator == 1:
                return str(numerator)
            return f"{numerator}/{denominator}"
        return str(self.residue(a))

    def parse(self, text: str):
        """Parse ``5``, ``-3/4`` (optional sign, optional fraction)."""
        match = _COEFF_RE.match(text)
        if not match:
            raise ParseError(f"invalid coefficient '{text}'")
        sign, numerator, denominator = match.groups()
        value = QQ(int(numerator), int(denominator or 1))
        if sign == '-':
            value = -value
        return self.convert(value)

    def is_canonical(self, a) -> bool:
        if self.characteristic == 0:
            return QQ.of_type(a) and QQ.denom(a) > 0
        return 0 <= int(a) % self.characteristic < self.characteristic

    def __str__(self) -> str:
        return 'QQ' if self.characteristic == 0 else f'GF({self.characteristic})'


@dataclass(frozen=True)
class Coefficient:
    """An exact field element tagged with its field."""

    value: Any
    field: FieldSpec

    @classmethod
    def of(cls, value, field: FieldSpec) -> 'Coefficient':
        return cls(field.convert(value), field)

    def __add__(self, other: 'Coefficient') -> 'Coefficient':
        return field_add(self, other)

    def __sub__(self, other: 'Coefficient') -> 'Coefficient':
        return field_add(self, field_neg(other))

    def __mul__(self, other: 'Coefficient') -> 'Coefficient':
        return field_mul(self, other)

    def __neg__(self) -> 'Coefficient':
        return field_neg(self)

    def inverse(self) -> 'Coefficient':
        return field_inv(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.field, str(self)))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"Coefficient({self}, {self.field})"


def _same_field(a: Coefficient, b: Coefficient) -> FieldSpec:
    if a.field != b.field:
        raise FieldError(f"mixed coefficient fields: {a.field} and {b.field}")
    return a.field


def field_add(a: Coefficient, b: Coefficient) -> Coefficient:
    field = _same_field(a, b)
    return Coefficient(field.add(a.value, b.value), field)


def field_mul(a: Coefficient, b: Coefficient) -> Coefficient:
    field = _same_field(a, b)
    return Coefficient(field.mul(a.value, b.value), field)


def field_neg(a: Coefficient) -> Coefficient:
    return Coefficient(a.field.neg(a.value), a.field)


def field_inv(a: Coefficient) -> Coefficient:
    return Coefficient(a.field.inv(a.value), a.field)
