"""
Monomial orderings on Mon^s(t, x).

An ordering is described by a frozen spec dataclass and compiled against a
RingContext into a CompiledOrdering whose ``key`` maps a ModuleMonomial to a
tuple: a larger key means a larger monomial. Weight comparisons are done on
integer-scaled weights so the keys stay exact.
"""

import logging
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cached_property, lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

from sympy import Rational, ilcm

from tstd.errors import OrderingError
from tstd.kernel.polyring import ModuleMonomial, RingContext

logger = logging.getLogger(__name__)

KEY_CACHE_SIZE = 1 << 16


class Cmp(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Priority(str, Enum):
    COMPONENT_FIRST = 'c'
    MONOMIAL_FIRST = 'm'


@dataclass(frozen=True)
class TLocalLex:
    """Lex on x (x_1 > ... > x_n), then t-local lex on t."""


@dataclass(frozen=True)
class DegRevLex:
    """Global degree-reverse-lex on x, t-local lex tiebreak on t."""


@dataclass(frozen=True)
class DegLex:
    """Global degree-lex on x, t-local lex tiebreak on t."""


@dataclass(frozen=True)
class WeightThen:
    """Compare w·(alpha/N, beta[, e]) first, then ``then``."""

    weights: Tuple[Rational, ...]
    then: 'OrderingSpec'


@dataclass(frozen=True)
class Block:
    """Degree-reverse-lex on ``outer_vars`` first, then ``inner`` on the rest."""

    outer_vars: Tuple[str, ...]
    inner: 'OrderingSpec'


@dataclass(frozen=True)
class ModuleExt:
    base: 'OrderingSpec'
    priority: Priority = Priority.MONOMIAL_FIRST


@dataclass(frozen=True)
class TInitialW:
    """The >_w ordering: w·(alpha/N, beta) first, then a global order on x."""

    w: Tuple[Rational, ...]
    global_x: 'OrderingSpec'


@dataclass(frozen=True)
class Homogenized:
    base: 'CompiledOrdering'
    extra_var: str
    folded: bool = False


@dataclass(frozen=True)
class Schreyer:
    base: 'CompiledOrdering'
    leads: Tuple[ModuleMonomial, ...]


@dataclass(frozen=True)
class Restricted:
    """u > v iff u·e_1 > v·e_1 under ``base``."""

    base: 'CompiledOrdering'


@dataclass(frozen=True)
class Projected:
    """Ordering on the module without component ``dropped``, induced by ``base``."""

    base: 'CompiledOrdering'
    dropped: int


OrderingSpec = Union[TLocalLex, DegRevLex, DegLex, WeightThen, Block, ModuleExt,
                     TInitialW, Homogenized, Schreyer, Restricted, Projected]

ScalarKey = Callable[[Tuple[int, ...], Tuple[int, ...], int], tuple]


def rationals(values: Sequence) -> Tuple[Rational, ...]:
    return tuple(Rational(v) for v in values)


class CompiledOrdering:
    """A total, semigroup-compatible order on the module monomials of ``ctx``."""

    def __init__(self, ctx: RingContext, spec: OrderingSpec,
                 key: Callable[[ModuleMonomial], tuple]):
        self.ctx = ctx
        self.spec = spec
        self.key = lru_cache(maxsize=KEY_CACHE_SIZE)(key)

    def cmp(self, p: ModuleMonomial, q: ModuleMonomial) -> Cmp:
        kp, kq = self.key(p), self.key(q)
        if kp > kq:
            return Cmp.GT
        if kp < kq:
            return Cmp.LT
        return Cmp.EQ

    def greater(self, p: ModuleMonomial, q: ModuleMonomial) -> bool:
        return self.key(p) > self.key(q)

    def max(self, monomials):
        return max(monomials, key=self.key)

    def is_t_local(self) -> bool:
        one = self.ctx.one()
        return all(self.key(self.ctx.variable(name)) < self.key(one)
                   for name in self.ctx.tnames)

    def is_global_x(self) -> bool:
        one = self.ctx.one()
        return all(self.key(self.ctx.variable(name)) > self.key(one)
                   for name in self.ctx.xnames)

    @cached_property
    def _scalar(self) -> 'CompiledOrdering':
        base = self
        return CompiledOrdering(self.ctx.scalar(), Restricted(self),
                                lambda mon: base.key(mon.with_comp(1)))

    def scalar(self) -> 'CompiledOrdering':
        """The induced ordering on Mon(t, x)."""
        if self.ctx.s == 1:
            return self
        return self._scalar

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompiledOrdering):
            return NotImplemented
        return self is other or (self.ctx == other.ctx and self.spec == other.spec)

    def __hash__(self) -> int:
        return hash((self.ctx, self.spec))

    def __repr__(self) -> str:
        return f"CompiledOrdering({self.spec!r})"


def cmp(order: CompiledOrdering, p: ModuleMonomial, q: ModuleMonomial) -> Cmp:
    return order.cmp(p, q)


def is_t_local(order: CompiledOrdering) -> bool:
    return order.is_t_local()


def _neg(values: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-v for v in values)


def _integer_weights(weights: Sequence[Rational], m: int, denom: int) -> Tuple[int, ...]:
    """Scale weights so that w·(alpha/N, beta, e) becomes an integer dot product."""
    scale = 1
    for w in weights:
        scale = ilcm(scale, Rational(w).q)
    scale *= denom
    scaled = []
    for i, w in enumerate(weights):
        value = Rational(w) * scale
        if i < m:
            value = value / denom
        scaled.append(int(value))
    return tuple(scaled)


def _scalar_key(spec: OrderingSpec, ctx: RingContext) -> ScalarKey:
    if isinstance(spec, TLocalLex):
        return lambda alpha, beta, comp: (beta, _neg(alpha))

    if isinstance(spec, DegRevLex):
        return lambda alpha, beta, comp: (sum(beta), _neg(beta[::-1]), _neg(alpha))

    if isinstance(spec, DegLex):
        return lambda alpha, beta, comp: (sum(beta), beta, _neg(alpha))

    if isinstance(spec, WeightThen):
        return _weight_key(spec, ctx)

    if isinstance(spec, Block):
        return _block_key(spec, ctx)

    if isinstance(spec, ModuleExt):
        raise OrderingError("module(...) must be the outermost ordering")
    raise OrderingError(f"unsupported ordering {spec!r}")


def _weight_key(spec: WeightThen, ctx: RingContext) -> ScalarKey:
    m, n, s = ctx.m, ctx.n, ctx.s
    if len(spec.weights) not in (m + n, m + n + s):
        raise OrderingError(f"weight vector has length {len(spec.weights)}, "
                            f"expected {m + n} or {m + n + s}")
    if any(w > 0 for w in spec.weights[:m]):
        raise OrderingError("ordering not t-local: positive weight on a t-variable")
    scaled = _integer_weights(spec.weights, m, ctx.denom)
    wt, wx, we = scaled[:m], scaled[m:m + n], scaled[m + n:]
    inner = _scalar_key(spec.then, ctx)

    def key(alpha, beta, comp):
        value = sum(a * b for a, b in zip(wt, alpha)) + sum(a * b for a, b in zip(wx, beta))
        if we:
            value += we[comp - 1]
        return (value, inner(alpha, beta, comp))
    return key


def _block_key(spec: Block, ctx: RingContext) -> ScalarKey:
    for name in spec.outer_vars:
        if name in ctx.tnames:
            raise OrderingError(f"block outer variable '{name}' is a t-variable")
        if name not in ctx.xnames:
            raise OrderingError(f"unknown block variable '{name}'")
    outer = [ctx.xnames.index(name) for name in ctx.xnames if name in spec.outer_vars]
    rest = [i for i in range(ctx.n) if i not in outer]
    if ctx.m + len(rest) == 0:
        def inner(alpha, beta, comp):
            return ()
    else:
        inner = _scalar_key(spec.inner, ctx.without_x(spec.outer_vars))

    def key(alpha, beta, comp):
        head = tuple(beta[i] for i in outer)
        tail = tuple(beta[i] for i in rest)
        return (sum(head), _neg(head[::-1]), inner(alpha, tail, comp))
    return key


def compile_ordering(spec: OrderingSpec, ctx: RingContext) -> CompiledOrdering:
    """Compile a user ordering spec; rejects orderings that are not t-local."""
    if isinstance(spec, TInitialW):
        return tinitial_ordering(spec.w, spec.global_x, ctx)
    if isinstance(spec, (Homogenized, Schreyer, Restricted, Projected)):
        raise OrderingError(f"{type(spec).__name__} orderings are built from a compiled ordering")

    if isinstance(spec, ModuleExt):
        base = _scalar_key(spec.base, ctx)
        if spec.priority == Priority.COMPONENT_FIRST:
            def key(mon):
                return (-mon.comp, base(mon.alpha, mon.beta, mon.comp))
        else:
            def key(mon):
                return (base(mon.alpha, mon.beta, mon.comp), -mon.comp)
    else:
        base = _scalar_key(spec, ctx)

        def key(mon):
            return (base(mon.alpha, mon.beta, mon.comp), -mon.comp)

    order = CompiledOrdering(ctx, spec, key)
    if not order.is_t_local():
        logger.error(f"Rejected ordering {spec!r}: some t-variable is >= 1")
        raise OrderingError("ordering not t-local")
    return order


@lru_cache(maxsize=64)
def homogenized(order: CompiledOrdering, folded: bool = False,
                extra_var: Optional[str] = None) -> CompiledOrdering:
    """Ordering >_h on the context extended by one homogenizing x-variable.

    Compares the degree in (x, x_0) first, plus the t-degree when ``folded``,
    and breaks ties with ``order`` on the monomial stripped of x_0.
    """
    name = extra_var or order.ctx.fresh_name('x_0', 'h')
    ctx_h = order.ctx.with_x(name)
    base_key = order.key

    def key(mon):
        stripped = ModuleMonomial(mon.alpha, mon.beta[:-1], mon.comp)
        degree = sum(mon.beta) + (sum(mon.alpha) if folded else 0)
        return (degree, base_key(stripped))
    return CompiledOrdering(ctx_h, Homogenized(order, name, folded), key)


def schreyer(base: CompiledOrdering, leads: Sequence[Optional[ModuleMonomial]]) -> CompiledOrdering:
    """Ordering on u·eps_i induced by u·leads[i] under ``base``; ties favour smaller i."""
    if any(lead is None for lead in leads):
        raise OrderingError("Schreyer ordering needs nonzero leading monomials")
    if not leads:
        raise OrderingError("Schreyer ordering needs at least one generator")
    leads = tuple(leads)
    ctx = base.ctx.with_rank(len(leads))
    base_key = base.key

    def key(mon):
        return (base_key(leads[mon.comp - 1].times(mon)), -mon.comp)
    return CompiledOrdering(ctx, Schreyer(base, leads), key)


def tinitial_ordering(w: Sequence, global_x: OrderingSpec, ctx: RingContext) -> CompiledOrdering:
    """The >_w ordering for one t-variable: w·(alpha/N, beta), then ``global_x``."""
    w = rationals(w)
    if ctx.m != 1:
        raise OrderingError(f"t-initial orderings need exactly one t-variable, got {ctx.m}")
    if len(w) != 1 + ctx.n:
        raise OrderingError(f"weight vector has length {len(w)}, expected {1 + ctx.n}")
    if w[0] >= 0:
        raise OrderingError(f"w_0 must be negative, got {w[0]}")
    if isinstance(global_x, (ModuleExt, TInitialW, Homogenized, Schreyer, Restricted, Projected)):
        raise OrderingError("tiebreak ordering must be a plain ordering on x")
    if ctx.n == 0:
        def global_key(alpha, beta, comp):
            return ()
    else:
        x_ctx = ctx.x_only().scalar()
        global_key = _scalar_key(global_x, x_ctx)
        global_order = CompiledOrdering(x_ctx, global_x,
                                        lambda mon: global_key(mon.alpha, mon.beta, 1))
        if not global_order.is_global_x():
            raise OrderingError("tiebreak ordering is not global on x")
    scaled = _integer_weights(w, 1, ctx.denom)

    def key(mon):
        value = scaled[0] * mon.alpha[0] + sum(a * b for a, b in zip(scaled[1:], mon.beta))
        return (value, global_key((), mon.beta, 1), -mon.comp)
    return CompiledOrdering(ctx, TInitialW(w, global_x), key)


def projected(order: CompiledOrdering, j: int) -> CompiledOrdering:
    """Restriction of ``order`` to the module with component j removed.

    Components above j shift down by one; p > q iff their images under the
    inclusion back into rank s compare the same way.
    """
    ctx = order.ctx
    if ctx.s < 2 or not 1 <= j <= ctx.s:
        raise OrderingError(f"cannot drop component {j} from rank {ctx.s}")
    base_key = order.key

    def key(mon):
        comp = mon.comp if mon.comp < j else mon.comp + 1
        return base_key(mon.with_comp(comp))
    return CompiledOrdering(ctx.with_rank(ctx.s - 1), Projected(order, j), key)
