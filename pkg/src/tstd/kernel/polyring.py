"""
Sparse elements of K[t_1..t_m][x_1..x_n]^s.

A PolyVector is an immutable, strictly descending sequence of
(ModuleMonomial, coefficient) pairs under the ordering it was normalized with.
Coefficients are raw sympy domain elements of the context's field.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from math import gcd
from typing import (TYPE_CHECKING, Dict, Iterable, Iterator, List, NamedTuple,
                    Optional, Sequence, Tuple)

from tstd.errors import ContextError
from tstd.kernel.coeff import Coefficient, FieldSpec

if TYPE_CHECKING:
    from tstd.kernel.ordering import CompiledOrdering

logger = logging.getLogger(__name__)

# x-degree of the zero element
DEG_ZERO = -1

RESERVED_NAMES = frozenset({'gen'})


def _default_names(m: int, n: int) -> Tuple[str, ...]:
    tnames = ('t',) if m == 1 else tuple(f't{i}' for i in range(1, m + 1))
    if n <= 3:
        xnames = ('x', 'y', 'z')[:n]
    else:
        xnames = tuple(f'x{i}' for i in range(1, n + 1))
    return tnames + xnames


@dataclass(frozen=True)
class RingContext:
    """Ambient ring K[t][x]^s with Puiseux denominator ``denom``."""

    m: int
    n: int
    s: int = 1
    field: FieldSpec = dataclass_field(default_factory=FieldSpec)
    denom: int = 1
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ContextError(f"need m, n >= 0 and m + n >= 1, got m={self.m}, n={self.n}")
        if self.s < 1:
            raise ContextError(f"module rank must be >= 1, got {self.s}")
        if self.denom < 1:
            raise ContextError(f"denominator must be >= 1, got {self.denom}")
        names = tuple(self.names) or _default_names(self.m, self.n)
        object.__setattr__(self, 'names', names)
        if len(names) != self.m + self.n:
            raise ContextError(f"expected {self.m + self.n} variable names, got {len(names)}")
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate variable name in {list(names)}")
        for name in names:
            if not name.isidentifier() or name in RESERVED_NAMES:
                raise ContextError(f"invalid variable name '{name}'")

    @property
    def tnames(self) -> Tuple[str, ...]:
        return self.names[:self.m]

    @property
    def xnames(self) -> Tuple[str, ...]:
        return self.names[self.m:]

    def index_of(self, name: str) -> Tuple[str, int]:
        """Return ('t', i) or ('x', i) for a variable name."""
        if name in self.tnames:
            return 't', self.tnames.index(name)
        if name in self.xnames:
            return 'x', self.xnames.index(name)
        raise ContextError(f"unknown variable '{name}'")

    def scalar(self) -> 'RingContext':
        return self.with_rank(1)

    def with_rank(self, s: int) -> 'RingContext':
        if s == self.s:
            return self
        return RingContext(self.m, self.n, s, self.field, self.denom, self.names)

    def with_denom(self, denom: int) -> 'RingContext':
        return RingContext(self.m, self.n, self.s, self.field, denom, self.names)

    def without_x(self, drop: Iterable[str]) -> 'RingContext':
        drop = set(drop)
        xnames = tuple(name for name in self.xnames if name not in drop)
        return RingContext(self.m, len(xnames), self.s, self.field, self.denom,
                           self.tnames + xnames)

    def with_x(self, name: str) -> 'RingContext':
        """Append one x-variable at the end of the x-block."""
        return RingContext(self.m, self.n + 1, self.s, self.field, self.denom,
                           self.names + (name,))

    def x_only(self) -> 'RingContext':
        """The same x-block and field with no t-variables (K[x]^s)."""
        return RingContext(0, self.n, self.s, self.field, 1, self.xnames)

    def fresh_name(self, *candidates: str) -> str:
        for name in candidates:
            if name not in self.names:
                return name
        i = 0
        while f'{candidates[0]}_{i}' in self.names:
            i += 1
        return f'{candidates[0]}_{i}'

    def one(self, comp: int = 1) -> 'ModuleMonomial':
        return ModuleMonomial((0,) * self.m, (0,) * self.n, comp)

    def variable(self, name: str, power: int = 1) -> 'ModuleMonomial':
        """Monomial of one variable; t-powers are in units of 1/denom."""
        block, i = self.index_of(name)
        if block == 't':
            alpha = tuple(power if j == i else 0 for j in range(self.m))
            return ModuleMonomial(alpha, (0,) * self.n)
        beta = tuple(power if j == i else 0 for j in range(self.n))
        return ModuleMonomial((0,) * self.m, beta)

    def check_monomial(self, mon: 'ModuleMonomial') -> None:
        if len(mon.alpha) != self.m or len(mon.beta) != self.n:
            raise ContextError(f"monomial {mon} does not fit m={self.m}, n={self.n}")
        if not 1 <= mon.comp <= self.s:
            raise ContextError(f"component {mon.comp} outside rank {self.s}")


@dataclass(frozen=True, slots=True)
class ModuleMonomial:
    """t^alpha x^beta e_comp; alpha counts multiples of 1/denom."""

    alpha: Tuple[int, ...]
    beta: Tuple[int, ...]
    comp: int = 1

    def times(self, other: 'ModuleMonomial') -> 'ModuleMonomial':
        """Product with a scalar monomial; the component of self is kept."""
        return ModuleMonomial(tuple(a + b for a, b in zip(self.alpha, other.alpha)),
                              tuple(a + b for a, b in zip(self.beta, other.beta)),
                              self.comp)

    def divides(self, other: 'ModuleMonomial') -> bool:
        return (self.comp == other.comp
                and all(a <= b for a, b in zip(self.alpha, other.alpha))
                and all(a <= b for a, b in zip(self.beta, other.beta)))

    def quotient(self, other: 'ModuleMonomial') -> 'ModuleMonomial':
        """Scalar monomial self / other; other must divide self."""
        if not other.divides(self):
            raise ContextError(f"{other} does not divide {self}")
        return ModuleMonomial(tuple(a - b for a, b in zip(self.alpha, other.alpha)),
                              tuple(a - b for a, b in zip(self.beta, other.beta)))

    def lcm(self, other: 'ModuleMonomial') -> Optional['ModuleMonomial']:
        if self.comp != other.comp:
            return None
        return ModuleMonomial(tuple(map(max, self.alpha, other.alpha)),
                              tuple(map(max, self.beta, other.beta)),
                              self.comp)

    def with_comp(self, comp: int) -> 'ModuleMonomial':
        return ModuleMonomial(self.alpha, self.beta, comp)

    @property
    def deg_x(self) -> int:
        return sum(self.beta)

    @property
    def deg_t(self) -> int:
        return sum(self.alpha)

    def degree(self, folded: bool = False) -> int:
        return self.deg_x + (self.deg_t if folded else 0)

    def is_one(self) -> bool:
        return not any(self.alpha) and not any(self.beta)


def monomial_divides(p: ModuleMonomial, q: ModuleMonomial) -> bool:
    return p.divides(q)


def monomial_lcm(p: ModuleMonomial, q: ModuleMonomial) -> Optional[ModuleMonomial]:
    """Componentwise max, or None (the zero monomial) for distinct components."""
    return p.lcm(q)


@dataclass(frozen=True)
class Term:
    coeff: Coefficient
    mon: ModuleMonomial


class LeadingData(NamedTuple):
    lm: Optional[ModuleMonomial]
    lc: Coefficient
    lt: 'PolyVector'
    tail: 'PolyVector'


def format_monomial(mon: ModuleMonomial, ctx: RingContext, with_gen: bool) -> str:
    factors = []
    for name, a in zip(ctx.tnames, mon.alpha):
        if a == 0:
            continue
        g = gcd(a, ctx.denom)
        num, den = a // g, ctx.denom // g
        if den != 1:
            factors.append(f'{name}^({num}/{den})')
        else:
            factors.append(name if num == 1 else f'{name}^{num}')
    for name, b in zip(ctx.xnames, mon.beta):
        if b:
            factors.append(name if b == 1 else f'{name}^{b}')
    if with_gen:
        factors.append(f'gen({mon.comp})')
    return '*'.join(factors)


class PolyVector:
    """Immutable element of K[t][x]^s, terms sorted descending under ``order``."""

    __slots__ = ('ctx', 'order', 'terms')

    def __init__(self, ctx: RingContext, order: 'CompiledOrdering',
                 terms: Tuple[Tuple[ModuleMonomial, object], ...] = ()):
        self.ctx = ctx
        self.order = order
        self.terms = terms

    # Construction

    @classmethod
    def zero(cls, ctx: RingContext, order: 'CompiledOrdering') -> 'PolyVector':
        return cls(ctx, order, ())

    @classmethod
    def from_terms(cls, ctx: RingContext, order: 'CompiledOrdering',
                   pairs: Iterable[Tuple[ModuleMonomial, object]]) -> 'PolyVector':
        """Normalize arbitrary (monomial, coefficient) pairs: merge, drop zeros, sort."""
        if order.ctx != ctx:
            raise ContextError("ordering was compiled for a different ring context")
        acc: Dict[ModuleMonomial, object] = {}
        convert = ctx.field.convert
        for mon, c in pairs:
            ctx.check_monomial(mon)
            if isinstance(c, Coefficient):
                c = c.value
            elif not ctx.field.domain.of_type(c):
                c = convert(c)
            acc[mon] = acc[mon] + c if mon in acc else c
        return cls.from_dict(ctx, order, acc)

    @classmethod
    def from_dict(cls, ctx: RingContext, order: 'CompiledOrdering',
                  acc: Dict[ModuleMonomial, object]) -> 'PolyVector':
        """Sort already-converted coefficients; zero entries are dropped."""
        key = order.key
        items = sorted(((mon, c) for mon, c in acc.items() if c),
                       key=lambda item: key(item[0]), reverse=True)
        return cls(ctx, order, tuple(items))

    @classmethod
    def monomial(cls, ctx: RingContext, order: 'CompiledOrdering',
                 mon: ModuleMonomial, coeff=1) -> 'PolyVector':
        return cls.from_terms(ctx, order, [(mon, coeff)])

    @classmethod
    def constant(cls, ctx: RingContext, order: 'CompiledOrdering',
                 coeff=1, comp: int = 1) -> 'PolyVector':
        return cls.from_terms(ctx, order, [(ctx.one(comp), coeff)])

    @classmethod
    def from_components(cls, ctx: RingContext, order: 'CompiledOrdering',
                        components: Sequence['PolyVector']) -> 'PolyVector':
        """Assemble [p_1, ..., p_s] from scalar polynomials."""
        if len(components) != ctx.s:
            raise ContextError(f"expected {ctx.s} components, got {len(components)}")
        pairs = []
        for j, p in enumerate(components, start=1):
            pairs.extend((mon.with_comp(j), c) for mon, c in p.terms)
        return cls.from_terms(ctx, order, pairs)

    # Basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        field = self.ctx.field
        for mon, c in self.terms:
            yield Term(Coefficient(c, field), mon)

    def monomials(self) -> List[ModuleMonomial]:
        return [mon for mon, _ in self.terms]

    @property
    def lm(self) -> Optional[ModuleMonomial]:
        return self.terms[0][0] if self.terms else None

    @property
    def lead_coeff(self):
        return self.terms[0][1] if self.terms else self.ctx.field.zero

    def lead_term(self) -> 'PolyVector':
        return PolyVector(self.ctx, self.order, self.terms[:1])

    def tail(self) -> 'PolyVector':
        return PolyVector(self.ctx, self.order, self.terms[1:])

    def deg_x(self, folded: bool = False) -> int:
        if not self.terms:
            return DEG_ZERO
        return max(mon.degree(folded) for mon, _ in self.terms)

    def is_x_homogeneous(self, folded: bool = False) -> bool:
        return len({mon.degree(folded) for mon, _ in self.terms}) <= 1

    def is_unit_normalized(self) -> bool:
        """lt = 1, i.e. the element is a unit of the localisation."""
        return bool(self.terms) and self.terms[0][0].is_one() and self.terms[0][1] == self.ctx.field.one

    # Orderings

    def reorder(self, order: 'CompiledOrdering') -> 'PolyVector':
        if order is self.order:
            return self
        if order.ctx != self.ctx:
            raise ContextError("ordering was compiled for a different ring context")
        if order == self.order:
            return PolyVector(self.ctx, order, self.terms)
        return PolyVector.from_dict(self.ctx, order, dict(self.terms))

    def _aligned(self, other: 'PolyVector') -> 'PolyVector':
        if other.ctx != self.ctx:
            raise ContextError(f"ring context mismatch: {self.ctx} vs {other.ctx}")
        return other.reorder(self.order)

    # Arithmetic

    def _merge(self, other: 'PolyVector', negate: bool) -> 'PolyVector':
        other = self._aligned(other)
        key = self.order.key
        a, b = self.terms, other.terms
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            ka, kb = key(a[i][0]), key(b[j][0])
            if ka > kb:
                out.append(a[i])
                i += 1
            elif kb > ka:
                out.append((b[j][0], -b[j][1]) if negate else b[j])
                j += 1
            else:
                c = a[i][1] - b[j][1] if negate else a[i][1] + b[j][1]
                if c:
                    out.append((a[i][0], c))
                i += 1
                j += 1
        out.extend(a[i:])
        out.extend(((mon, -c) for mon, c in b[j:]) if negate else b[j:])
        return PolyVector(self.ctx, self.order, tuple(out))

    def add(self, other: 'PolyVector') -> 'PolyVector':
        return self._merge(other, negate=False)

    def sub(self, other: 'PolyVector') -> 'PolyVector':
        return self._merge(other, negate=True)

    def neg(self) -> 'PolyVector':
        return PolyVector(self.ctx, self.order, tuple((mon, -c) for mon, c in self.terms))

    def _as_element(self, c):
        if isinstance(c, Coefficient):
            if c.field != self.ctx.field:
                raise ContextError(f"coefficient from {c.field} used in {self.ctx.field}")
            return c.value
        if not self.ctx.field.domain.of_type(c):
            return self.ctx.field.convert(c)
        return c

    def scalar_mul(self, c) -> 'PolyVector':
        c = self._as_element(c)
        if not c:
            return PolyVector.zero(self.ctx, self.order)
        return PolyVector(self.ctx, self.order, tuple((mon, c * d) for mon, d in self.terms))

    def mul_term(self, mon: ModuleMonomial, c=1) -> 'PolyVector':
        """Multiply by the scalar term c*mon; the order is preserved."""
        c = self._as_element(c)
        if not c:
            return PolyVector.zero(self.ctx, self.order)
        return PolyVector(self.ctx, self.order,
                          tuple((m.times(mon), c * d) for m, d in self.terms))

    def mul_by_poly(self, p: 'PolyVector') -> 'PolyVector':
        """Multiply this rank-s vector by the rank-1 polynomial p."""
        if p.ctx.s != 1 or p.ctx.with_rank(self.ctx.s) != self.ctx:
            raise ContextError("mul_by_poly needs a scalar polynomial over the same ring")
        acc: Dict[ModuleMonomial, object] = {}
        for pm, pc in p.terms:
            for fm, fc in self.terms:
                mon = fm.times(pm)
                c = pc * fc
                acc[mon] = acc[mon] + c if mon in acc else c
        return PolyVector.from_dict(self.ctx, self.order, acc)

    def component(self, j: int) -> 'PolyVector':
        """The j-th coordinate as a scalar polynomial under ``order.scalar()``."""
        scalar_order = self.order.scalar()
        return PolyVector.from_dict(self.ctx.scalar(), scalar_order,
                                  {mon.with_comp(1): c for mon, c in self.terms if mon.comp == j})

    def drop_component(self, j: int) -> 'PolyVector':
        """This vector with its j-th coordinate set to zero."""
        return PolyVector(self.ctx, self.order, tuple((mon, c) for mon, c in self.terms if mon.comp != j))

    def lift(self, ctx: RingContext, order: 'CompiledOrdering', j: int) -> 'PolyVector':
        """Embed a scalar polynomial as p*e_j in the rank-s module ``ctx``."""
        if self.ctx.s != 1 or ctx.scalar() != self.ctx:
            raise ContextError("lift needs a scalar polynomial over the same ring")
        return PolyVector.from_terms(ctx, order, ((mon.with_comp(j), c) for mon, c in self.terms))

    def change_ring(self, ctx: RingContext, order: 'CompiledOrdering') -> 'PolyVector':
        """Move into another context, matching variables by name."""
        if ctx.field != self.ctx.field or ctx.denom != self.ctx.denom:
            raise ContextError("change_ring keeps field and denominator")
        pairs = []
        for mon, c in self.terms:
            alpha, beta = [0] * ctx.m, [0] * ctx.n
            for name, a in zip(self.ctx.tnames, mon.alpha):
                if a:
                    block, i = ctx.index_of(name)
                    if block != 't':
                        raise ContextError(f"variable '{name}' changes block")
                    alpha[i] = a
            for name, b in zip(self.ctx.xnames, mon.beta):
                if b:
                    block, i = ctx.index_of(name)
                    if block != 'x':
                        raise ContextError(f"variable '{name}' changes block")
                    beta[i] = b
            pairs.append((ModuleMonomial(tuple(alpha), tuple(beta), mon.comp), c))
        return PolyVector.from_terms(ctx, order, pairs)

    def monic(self) -> 'PolyVector':
        if not self.terms:
            return self
        return self.scalar_mul(self.ctx.field.inv(self.terms[0][1]))

    # Operators

    def __add__(self, other: 'PolyVector') -> 'PolyVector':
        return self.add(other)

    def __sub__(self, other: 'PolyVector') -> 'PolyVector':
        return self.sub(other)

    def __neg__(self) -> 'PolyVector':
        return self.neg()

    def __mul__(self, other) -> 'PolyVector':
        if isinstance(other, PolyVector):
            if other.ctx.s == 1 and other.ctx.with_rank(self.ctx.s) == self.ctx:
                return self.mul_by_poly(other)
            if self.ctx.s == 1:
                return other.mul_by_poly(self)
            raise ContextError("cannot multiply two vectors of rank > 1")
        return self.scalar_mul(other)

    def __rmul__(self, other) -> 'PolyVector':
        return self.scalar_mul(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.ctx == other.ctx and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms)))

    # Text

    def to_text(self, vector_form: bool = False) -> str:
        if vector_form:
            parts = [self.component(j).to_text() for j in range(1, self.ctx.s + 1)]
            return '[' + ', '.join(parts) + ']'
        if not self.terms:
            return '0'
        field = self.ctx.field
        with_gen = self.ctx.s > 1
        pieces = []
        for idx, (mon, c) in enumerate(self.terms):
            negative = field.characteristic == 0 and c < 0
            magnitude = -c if negative else c
            mono = format_monomial(mon, self.ctx, with_gen)
            if not mono:
                body = field.format(magnitude)
            elif magnitude == field.one:
                body = mono
            else:
                body = f'{field.format(magnitude)}*{mono}'
            if idx == 0:
                pieces.append(f'-{body}' if negative else body)
            else:
                pieces.append(f' - {body}' if negative else f' + {body}')
        return ''.join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PolyVector({self.to_text()!r})"


def leading_data(f: PolyVector, order: Optional['CompiledOrdering'] = None) -> LeadingData:
    """lm, lc, lt and tail of f; f = 0 yields (None, 0, 0, 0)."""
    if order is not None:
        f = f.reorder(order)
    field = f.ctx.field
    if f.is_zero():
        return LeadingData(None, Coefficient(field.zero, field), f, f)
    return LeadingData(f.terms[0][0], Coefficient(f.terms[0][1], field), f.lead_term(), f.tail())


def deg_x(f: PolyVector) -> int:
    return f.deg_x()


def is_x_homogeneous(f: PolyVector) -> bool:
    return f.is_x_homogeneous()
