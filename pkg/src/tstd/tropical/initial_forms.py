"""
w-initial forms, t-initial forms and t-initial ideals.

For w = (w_0, w_1, ..., w_n) with w_0 < 0 the w-degree of t^(a/N)·x^b is
w_0·a/N + w_1·b_1 + ... + w_n·b_n. IN_w(f) keeps the terms of maximal
w-degree; tin_w(f) is IN_w(f) with t set to 1, an element of K[x].
A standard basis under the >_w ordering maps onto generators of tin_w(I).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from sympy import Rational

from tstd.errors import ContextError, OrderingError
from tstd.kernel.ordering import (CompiledOrdering, DegRevLex, OrderingSpec, compile_ordering,
                                  rationals, tinitial_ordering)
from tstd.kernel.polyring import ModuleMonomial, PolyVector, RingContext, Term
from tstd.stdbasis.standard_basis import GeneratorSet, membership, std

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightVectorW:
    """(w_0, w_1, ..., w_n) with w_0 < 0."""

    w: tuple

    def __post_init__(self):
        w = rationals(self.w)
        if not w:
            raise OrderingError("empty weight vector")
        if w[0] >= 0:
            raise OrderingError(f"w_0 must be negative, got {w[0]}")
        object.__setattr__(self, 'w', w)

    @classmethod
    def parse(cls, text: str) -> 'WeightVectorW':
        """Comma separated rationals, e.g. "-1,0,1/2"."""
        try:
            return cls(tuple(Rational(part.strip()) for part in text.split(',')))
        except (TypeError, ValueError, SyntaxError) as exc:
            raise OrderingError(f"invalid weight vector '{text}'") from exc

    def check(self, ctx: RingContext) -> None:
        if ctx.m != 1:
            raise ContextError(f"t-initial forms need exactly one t-variable, got {ctx.m}")
        if len(self.w) != 1 + ctx.n:
            raise OrderingError(f"weight vector has length {len(self.w)}, expected {1 + ctx.n}")

    def __str__(self) -> str:
        return ','.join(str(v) for v in self.w)


@dataclass
class PuiseuxIdeal:
    """Generators in K[t^(1/N)][x] with a single t-variable."""

    gens: List[PolyVector]

    def __post_init__(self):
        if not self.gens:
            raise ContextError("a Puiseux ideal needs at least one generator")
        ctx = self.gens[0].ctx
        if any(g.ctx != ctx for g in self.gens):
            raise ContextError("generators come from different ring contexts")
        if ctx.m != 1 or ctx.s != 1:
            raise ContextError(f"Puiseux ideals live in K[t][x] (m=1, s=1), got m={ctx.m}, s={ctx.s}")

    @property
    def ctx(self) -> RingContext:
        return self.gens[0].ctx

    @property
    def denom(self) -> int:
        return self.ctx.denom


def _weight(w: WeightVectorW, N: int, mon: ModuleMonomial) -> Rational:
    value = w.w[0] * Rational(mon.alpha[0], N)
    for wi, b in zip(w.w[1:], mon.beta):
        value += wi * b
    return value


def w_degree(term: Union[Term, ModuleMonomial], w: WeightVectorW, N: int = 1) -> Rational:
    """w·(alpha/N, beta) of a term or monomial."""
    mon = term.mon if isinstance(term, Term) else term
    return _weight(w, N, mon)


def _nonzero(f: PolyVector, w: WeightVectorW, what: str) -> None:
    if f.is_zero():
        raise ContextError(f"{what} of the zero element is undefined")
    w.check(f.ctx)


def ord_w(f: PolyVector, w: WeightVectorW) -> Rational:
    """Maximal w-degree of the terms of f."""
    _nonzero(f, w, "w-order")
    N = f.ctx.denom
    return max(_weight(w, N, mon) for mon, _ in f.terms)


def in_w(f: PolyVector, w: WeightVectorW) -> PolyVector:
    """Terms of f of maximal w-degree, t-powers kept."""
    _nonzero(f, w, "w-initial form")
    N = f.ctx.denom
    top = ord_w(f, w)
    return PolyVector(f.ctx, f.order,
                      tuple((mon, c) for mon, c in f.terms if _weight(w, N, mon) == top))


def x_ordering(ctx: RingContext, global_x: OrderingSpec = DegRevLex()) -> CompiledOrdering:
    """``global_x`` compiled on K[x]^s, the home of t-initial forms."""
    return compile_ordering(global_x, ctx.x_only())


def tin_w(f: PolyVector, w: WeightVectorW,
          order: Optional[CompiledOrdering] = None) -> PolyVector:
    """IN_w(f) at t = 1, in K[x] under ``order`` (degrevlex by default)."""
    initial = in_w(f, w)
    order = order or x_ordering(f.ctx)
    return PolyVector.from_terms(order.ctx, order,
                                 ((ModuleMonomial((), mon.beta, mon.comp), c) for mon, c in initial.terms))


def _canonical(polys: Sequence[PolyVector], order: CompiledOrdering) -> List[PolyVector]:
    unique = {p.monic() for p in polys if p}
    return sorted(unique, key=lambda p: ([order.key(mon) for mon in p.monomials()], p.to_text()),
                  reverse=True)


def _w_standard_basis(I: PuiseuxIdeal, w: WeightVectorW, global_x: OrderingSpec) -> GeneratorSet:
    w.check(I.ctx)
    order = tinitial_ordering(w.w, global_x, I.ctx)
    return std(GeneratorSet.of(I.gens, order))


def tinitial_ideal(I: PuiseuxIdeal, w: WeightVectorW,
                   global_x: OrderingSpec = DegRevLex()) -> List[PolyVector]:
    """Monic generators tin_w(G) of tin_w(<I>) for a standard basis G under >_w.

    The list is deduplicated and sorted descending under ``global_x``.
    """
    basis = _w_standard_basis(I, w, global_x)
    order = x_ordering(I.ctx, global_x)
    result = _canonical([tin_w(g, w, order) for g in basis.gens], order)
    logger.info(f"t-initial ideal for w=({w}) has {len(result)} generators "
                f"from a standard basis of {len(basis)}")
    return result


def w_initial_ideal(I: PuiseuxIdeal, w: WeightVectorW,
                    global_x: OrderingSpec = DegRevLex()) -> List[PolyVector]:
    """Monic generators IN_w(G) over K[t^(1/N), x]; depends on the denominator N."""
    basis = _w_standard_basis(I, w, global_x)
    return _canonical([in_w(g, w) for g in basis.gens], basis.order)


def tin_contains_one(I: PuiseuxIdeal, w: WeightVectorW,
                     global_x: OrderingSpec = DegRevLex()) -> bool:
    generators = tinitial_ideal(I, w, global_x)
    order = x_ordering(I.ctx, global_x)
    return membership(PolyVector.constant(order.ctx, order), GeneratorSet(generators, order))


def rescale(f: PolyVector, M: int, order: Optional[CompiledOrdering] = None) -> PolyVector:
    """The same Puiseux element over denominator N·M: t-exponent numerators times M."""
    if M < 1:
        raise ContextError(f"rescale factor must be >= 1, got {M}")
    ctx = f.ctx.with_denom(f.ctx.denom * M)
    order = order or compile_ordering(f.order.spec, ctx)
    acc = {ModuleMonomial(tuple(a * M for a in mon.alpha), mon.beta, mon.comp): c
           for mon, c in f.terms}
    return PolyVector.from_dict(ctx, order, acc)


def rescale_ideal(I: PuiseuxIdeal, M: int) -> PuiseuxIdeal:
    return PuiseuxIdeal([rescale(g, M) for g in I.gens])


def tin_ideal_equal(left: Sequence[PolyVector], right: Sequence[PolyVector]) -> bool:
    """Mutual membership of two generator lists of the same K[x]."""
    if not left or not right:
        return not left and not right
    order = left[0].order
    L, R = GeneratorSet(list(left), order), GeneratorSet(list(right), order)
    return all(membership(p, L) for p in right) and all(membership(p, R) for p in left)

