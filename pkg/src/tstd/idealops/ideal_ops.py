"""
Elimination, intersection, ideal quotient and saturation over R[x]_>.

All four run the standard-basis engine under a block ordering that is
global on the eliminated variables and t-local on the rest.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from tstd.config import current_config
from tstd.division.mora import dwr
from tstd.errors import ContextError, DivisionError, EliminationError, OrderingError, SaturationError
from tstd.kernel.ordering import Block, ModuleExt, OrderingSpec, Priority, compile_ordering
from tstd.kernel.polyring import PolyVector, RingContext
from tstd.stdbasis.standard_basis import GeneratorSet, StdStatus, membership, std

logger = logging.getLogger(__name__)

Generators = Union[GeneratorSet, Sequence[PolyVector]]


@dataclass(frozen=True)
class EliminationSpec:
    """x-variables to eliminate; t-variables can never be eliminated."""

    drop_vars: Tuple[str, ...]

    def validate(self, ctx: RingContext) -> None:
        if not self.drop_vars:
            raise ContextError("nothing to eliminate")
        local = [name for name in self.drop_vars if name in ctx.tnames]
        if local:
            logger.error(f"Elimination of t-variables {local} requested")
            raise EliminationError("cannot eliminate local variables")
        unknown = [name for name in self.drop_vars if name not in ctx.xnames]
        if unknown:
            raise ContextError(f"unknown variables {unknown}")


def _unpack(F: Generators) -> Tuple[List[PolyVector], Optional[RingContext]]:
    """Generators plus the ring context a GeneratorSet carries even when empty."""
    if isinstance(F, GeneratorSet):
        return list(F.gens), F.ctx
    return list(F), None


def _context(families: Sequence[List[PolyVector]],
             known: Sequence[Optional[RingContext]] = ()) -> RingContext:
    contexts = {f.ctx for family in families for f in family}
    contexts.update(ctx for ctx in known if ctx is not None)
    if not contexts:
        raise ContextError("need at least one generator to fix the ring context")
    if len(contexts) > 1:
        raise ContextError("generators come from different ring contexts")
    return contexts.pop()


def _require_ideal(ctx: RingContext, operation: str) -> None:
    if ctx.s != 1:
        raise ContextError(f"{operation} is implemented for ideals (rank 1), got rank {ctx.s}")


def _block(outer: Tuple[str, ...], inner_ord: OrderingSpec, ctx: RingContext) -> OrderingSpec:
    """Elimination ordering; a module ordering keeps its component priority."""
    if isinstance(inner_ord, ModuleExt):
        if inner_ord.priority == Priority.COMPONENT_FIRST and ctx.s > 1:
            raise OrderingError("component-first module orderings do not eliminate; "
                                "use module(<ordering>, c)")
        return ModuleExt(Block(outer, inner_ord.base), inner_ord.priority)
    return Block(outer, inner_ord)


def eliminate(F: Generators, spec: EliminationSpec, inner_ord: OrderingSpec) -> GeneratorSet:
    """Standard basis of <F> ∩ R[x without spec.drop_vars]^s under ``inner_ord``."""
    gens, known = _unpack(F)
    ctx = _context([gens], [known])
    spec.validate(ctx)
    block_order = compile_ordering(_block(tuple(spec.drop_vars), inner_ord, ctx), ctx)
    basis = std(GeneratorSet.of([g.reorder(block_order) for g in gens], block_order))

    drop = [ctx.xnames.index(name) for name in spec.drop_vars]
    survivors = [g for g in basis.gens if not any(g.lm.beta[i] for i in drop)]
    reduced_ctx = ctx.without_x(spec.drop_vars)
    reduced_order = compile_ordering(inner_ord, reduced_ctx)
    logger.info(f"Elimination of {list(spec.drop_vars)} keeps {len(survivors)} of {len(basis)} generators")
    return GeneratorSet([g.change_ring(reduced_ctx, reduced_order) for g in survivors],
                        reduced_order, StdStatus.VERIFIED)


def intersect(F: Generators, G: Generators, inner_ord: OrderingSpec) -> GeneratorSet:
    """<F> ∩ <G> via a tag variable tau: eliminate tau from <tau·f_i, (1 - tau)·g_j>."""
    (left, left_ctx), (right, right_ctx) = _unpack(F), _unpack(G)
    ctx = _context([left, right], [left_ctx, right_ctx])
    tau = ctx.fresh_name('tau', 'tag')
    ctx_tau = ctx.with_x(tau)
    order_tau = compile_ordering(_block((tau,), inner_ord, ctx), ctx_tau)
    tau_mon = ctx_tau.variable(tau)

    tagged = []
    for f in left:
        tagged.append(f.change_ring(ctx_tau, order_tau).mul_term(tau_mon))
    for g in right:
        lifted = g.change_ring(ctx_tau, order_tau)
        tagged.append(lifted - lifted.mul_term(tau_mon))
    # without_x(tau) restores the original context, names included
    return eliminate(GeneratorSet.of(tagged, order_tau), EliminationSpec((tau,)), inner_ord)


def quotient(F: Generators, f: PolyVector, inner_ord: OrderingSpec) -> GeneratorSet:
    """Standard basis of <F> : <f>.

    Each generator h of <F> ∩ <f> is divided by f with a weak division
    u·h = q·f; q generates the same localised ideal as h/f.
    """
    gens, known = _unpack(F)
    ctx = _context([gens, [f]], [known])
    _require_ideal(ctx, "quotient")
    if f.is_zero():
        raise DivisionError("ideal quotient by zero")
    order = compile_ordering(inner_ord, ctx)
    f = f.reorder(order)
    intersection = intersect(GeneratorSet.of([g.reorder(order) for g in gens], order), [f], inner_ord)
    quotients = []
    for h in intersection.gens:
        division = dwr(h, [f], order)
        if division.r:
            logger.error(f"Intersection generator {h} is not a multiple of {f}")
            raise DivisionError(f"inexact quotient of {h} by {f}")
        quotients.append(division.q[0])
    return std(GeneratorSet.of(quotients, order))


def saturate(F: Generators, f: PolyVector, inner_ord: OrderingSpec) -> GeneratorSet:
    """Standard basis of <F> : <f>^infinity, iterating quotients until stable."""
    gens, known = _unpack(F)
    ctx = _context([gens, [f]], [known])
    _require_ideal(ctx, "saturate")
    order = compile_ordering(inner_ord, ctx)
    current = std(GeneratorSet.of([g.reorder(order) for g in gens], order))
    cap = current_config.get_max_iter()
    for step in range(1, cap + 1):
        following = quotient(current, f, inner_ord)
        if all(membership(g, current) for g in following.gens):
            logger.info(f"Saturation stable after {step} quotient steps")
            return current
        current = following
    logger.error(f"Saturation did not stabilise within {cap} steps")
    raise SaturationError(f"saturation did not stabilise within {cap} steps")
