"""
Homogeneous determinate division with remainder.

Each round assigns every term of the current residual f_v to the first g_i
whose leading monomial divides it (to the remainder otherwise), then continues
with f_{v+1} = -sum(q_{i,v}·tail(g_i)).
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from tstd.config import current_config
from tstd.division.conditions import DivisionResult, check_conditions
from tstd.errors import DivisionError
from tstd.kernel.ordering import CompiledOrdering
from tstd.kernel.polyring import ModuleMonomial, PolyVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Folded:
    """Run to completion."""


@dataclass(frozen=True)
class Truncated:
    """Stop once the residual lies in <t>^prec."""

    prec: int


DivisionMode = Union[Folded, Truncated]


def determinate_division(f: PolyVector, divisors: Sequence[PolyVector],
                         stop: Optional[Callable[[PolyVector], bool]] = None,
                         max_steps: Optional[int] = None
                         ) -> Tuple[List[PolyVector], PolyVector, Optional[PolyVector]]:
    """Core iteration; divisors must be nonzero and sorted under f's ordering.

    Returns:
        (quotients, remainder, residual) with f = sum(q_i·g_i) + r + residual;
        residual is None unless ``stop`` fired.
    """
    ctx, order = f.ctx, f.order
    scalar_ctx, scalar_order = ctx.scalar(), order.scalar()
    field = ctx.field
    leads = [g.lm for g in divisors]
    inverses = [field.inv(g.lead_coeff) for g in divisors]
    tails = [g.terms[1:] for g in divisors]

    q_acc: List[Dict[ModuleMonomial, object]] = [{} for _ in divisors]
    r_acc: Dict[ModuleMonomial, object] = {}
    residual = None
    h = f
    steps = 0
    while h:
        if stop is not None and stop(h):
            residual = h
            break
        if max_steps is not None and steps >= max_steps:
            logger.error(f"Determinate division did not finish within {max_steps} rounds")
            raise DivisionError(f"division did not terminate within {max_steps} rounds; "
                                f"use truncated mode for this input")
        steps += 1
        next_acc: Dict[ModuleMonomial, object] = {}
        for mon, c in h.terms:
            for i, lead in enumerate(leads):
                if lead.divides(mon):
                    qm = mon.quotient(lead)
                    qc = c * inverses[i]
                    q_acc[i][qm] = q_acc[i][qm] + qc if qm in q_acc[i] else qc
                    for tm, tc in tails[i]:
                        prod = tm.times(qm)
                        value = -(qc * tc)
                        next_acc[prod] = next_acc[prod] + value if prod in next_acc else value
                    break
            else:
                r_acc[mon] = r_acc[mon] + c if mon in r_acc else c
        h = PolyVector.from_dict(ctx, order, next_acc)
    logger.debug(f"Determinate division finished after {steps} rounds")

    quotients = [PolyVector.from_dict(scalar_ctx, scalar_order, acc) for acc in q_acc]
    return quotients, PolyVector.from_dict(ctx, order, r_acc), residual


def hddwr(f: PolyVector, G: Sequence[PolyVector], order: CompiledOrdering,
          mode: DivisionMode = Folded()) -> DivisionResult:
    """Homogeneous determinate division f = sum(q_i·g_i) + r with DD1, DD2, DDH.

    Args:
        f: x-homogeneous element.
        G: nonzero x-homogeneous divisors.
        order: t-local ordering.
        mode: Folded() runs to completion; Truncated(prec) stops once the
            residual lies in <t>^prec and returns it separately.

    Raises:
        DivisionError: on non-homogeneous input, a zero divisor, or when a
            Folded run exceeds the configured round limit.
    """
    f = f.reorder(order)
    G = [g.reorder(order) for g in G]
    for i, g in enumerate(G, start=1):
        if g.is_zero():
            raise DivisionError(f"zero divisor g_{i}")
        if not g.is_x_homogeneous():
            raise DivisionError(f"hddwr needs x-homogeneous input; g_{i} = {g} is not")
    if not f.is_x_homogeneous():
        raise DivisionError(f"hddwr needs x-homogeneous input; f = {f} is not")

    if isinstance(mode, Truncated):
        if mode.prec < 0:
            raise DivisionError(f"precision must be >= 0, got {mode.prec}")
        bound = mode.prec * f.ctx.denom

        def stop(h: PolyVector) -> bool:
            return all(mon.deg_t >= bound for mon, _ in h.terms)
        q, r, residual = determinate_division(f, G, stop=stop)
        if residual is None:
            residual = PolyVector.zero(f.ctx, order)
    else:
        q, r, residual = determinate_division(f, G, max_steps=current_config.HDDWR_MAX_STEPS)

    scalar_ctx, scalar_order = f.ctx.scalar(), order.scalar()
    result = DivisionResult(PolyVector.constant(scalar_ctx, scalar_order), q, r, residual)
    if current_config.VERIFY_DIVISIONS:
        result.conditions = check_conditions(f, G, result, order)
    return result
