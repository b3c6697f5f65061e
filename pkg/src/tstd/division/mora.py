"""
Mora's weak division with remainder.

dwr runs with the t-variables folded into the polynomial ring: ecart and
homogenization are taken over the full (t, x) block so every homogeneous
division in between terminates. When some divisor has ecart at most ecart(h)
only the leading term of h is reduced; otherwise x_0^e·h^h is divided by the
leading terms of the g_i^h and h joins the reducers. The recursion is
unrolled into a forward pass that records each step and a backward pass that
assembles u and the q_i.

Homogenized divisors are cached, so repeated divisions against the same
generators (std, membership, the Buchberger check) homogenize each g once.
"""

import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

from tstd.config import current_config
from tstd.division.conditions import DivisionResult, check_conditions
from tstd.division.hddwr import determinate_division
from tstd.division.homogenization import dehomogenize, ecart, homogenize
from tstd.errors import OrderingError
from tstd.kernel.ordering import CompiledOrdering, homogenized, projected
from tstd.kernel.polyring import ModuleMonomial, PolyVector, RingContext

logger = logging.getLogger(__name__)

_APPEND = 'append'
_REDUCE = 'reduce'

DIVISOR_CACHE_SIZE = 4096

WeakDivision = Tuple[PolyVector, List[PolyVector], PolyVector]


def _check_order(order: CompiledOrdering) -> None:
    if not order.is_t_local():
        logger.error(f"Division requested under a non t-local ordering {order!r}")
        raise OrderingError("ordering not t-local")


@lru_cache(maxsize=DIVISOR_CACHE_SIZE)
def _folded_divisor(g: PolyVector, order: CompiledOrdering,
                    order_h: CompiledOrdering) -> Tuple[PolyVector, int]:
    """(g^h, ecart(g)) over the folded block; shared by every division against g."""
    g = g.reorder(order)
    return homogenize(g, order_h, folded=True).base, ecart(g, folded=True)


def _weak_division(f: PolyVector, G: List[PolyVector], order: CompiledOrdering) -> WeakDivision:
    """(u, q, r) with u·f = sum(q_i·g_i) + r; G nonzero and sorted under order."""
    ctx = f.ctx
    scalar_ctx, scalar_order = ctx.scalar(), order.scalar()
    order_h = homogenized(order, folded=True)
    field = ctx.field

    reducers = list(G)
    folded = [_folded_divisor(g, order, order_h) for g in reducers]
    reducers_h = [gh for gh, _ in folded]
    ecarts = [e for _, e in folded]

    steps = []
    h = f
    while h:
        candidates = [i for i, g in enumerate(reducers) if g.lm.divides(h.lm)]
        if not candidates:
            break
        h_ecart = ecart(h, folded=True)
        best = min(candidates, key=lambda i: (ecarts[i], i))
        e = ecarts[best] - h_ecart
        k = len(reducers)
        if e > 0:
            # x_0^e·h^h by the leading terms of the g_i^h; h itself joins the reducers
            x0_power = ModuleMonomial((0,) * ctx.m, (0,) * ctx.n + (e,))
            h_h = homogenize(h, order_h, folded=True).base
            hh = h_h.mul_term(x0_power)
            Q, _, _ = determinate_division(hh, [gh.lead_term() for gh in reducers_h])
            for Qi, gh in zip(Q, reducers_h):
                if Qi:
                    hh = hh - gh.mul_by_poly(Qi)
            steps.append((_APPEND, {i: dehomogenize(Qi, scalar_order) for i, Qi in enumerate(Q) if Qi}, k))
            reducers.append(h)
            reducers_h.append(h_h)
            ecarts.append(h_ecart)
            logger.debug(f"Mora step: ecart gap {e}, reducer {k + 1} appended")
            h = dehomogenize(hh, order)
        else:
            # lt(g^h) divides lt(h^h): reduce the leading term only
            g = reducers[best]
            mon = h.lm.quotient(g.lm)
            c = h.lead_coeff * field.inv(g.lead_coeff)
            steps.append((_REDUCE, {best: PolyVector.monomial(scalar_ctx, scalar_order, mon, c)}, k))
            logger.debug(f"Mora step: leading term reduced by reducer {best + 1}")
            h = h - g.mul_term(mon, c)

    u = PolyVector.constant(scalar_ctx, scalar_order)
    q = [PolyVector.zero(scalar_ctx, scalar_order) for _ in reducers]
    for kind, Qd, k in reversed(steps):
        for i, Qi in Qd.items():
            q[i] = q[i] + u * Qi
        if kind == _APPEND:
            u = u - q[k]
            q = q[:k]
    return u, q, h


def _nonzero_divisors(f: PolyVector, G: Sequence[PolyVector],
                      order: CompiledOrdering) -> Tuple[PolyVector, List[int], List[PolyVector]]:
    f = f.reorder(order)
    kept, divisors = [], []
    for i, g in enumerate(G):
        if g.is_zero():
            logger.warning(f"Dropping zero divisor g_{i + 1}")
            continue
        kept.append(i)
        divisors.append(g.reorder(order))
    return f, kept, divisors


def _assemble(f: PolyVector, G: Sequence[PolyVector], order: CompiledOrdering,
              kept: List[int], division: WeakDivision) -> DivisionResult:
    u, q_kept, r = division
    scalar_ctx, scalar_order = f.ctx.scalar(), order.scalar()
    q = [PolyVector.zero(scalar_ctx, scalar_order) for _ in G]
    for i, qi in zip(kept, q_kept):
        q[i] = qi.reorder(scalar_order)
    result = DivisionResult(u.reorder(scalar_order), q, r.reorder(order))
    if current_config.VERIFY_DIVISIONS:
        result.conditions = check_conditions(f, G, result, order)
    return result


def dwr(f: PolyVector, G: Sequence[PolyVector], order: CompiledOrdering) -> DivisionResult:
    """Weak division u·f = sum(q_i·g_i) + r with ID1, ID2 and lt(u) = 1.

    Zero divisors are dropped with a warning and get q_i = 0.

    Raises:
        OrderingError: if ``order`` is not t-local.
    """
    _check_order(order)
    f, kept, divisors = _nonzero_divisors(f, G, order)
    return _assemble(f, G, order, kept, _weak_division(f, divisors, order))


def _project(p: PolyVector, j: int, order_p: CompiledOrdering) -> PolyVector:
    acc = {mon.with_comp(mon.comp - 1 if mon.comp > j else mon.comp): c
           for mon, c in p.terms if mon.comp != j}
    return PolyVector.from_dict(order_p.ctx, order_p, acc)


def _include(p: PolyVector, j: int, ctx: RingContext, order: CompiledOrdering) -> PolyVector:
    acc = {mon.with_comp(mon.comp + 1 if mon.comp >= j else mon.comp): c for mon, c in p.terms}
    return PolyVector.from_dict(ctx, order, acc)


def _strong_division(f: PolyVector, G: List[PolyVector], order: CompiledOrdering) -> WeakDivision:
    u, q, r = _weak_division(f, G, order)
    if f.ctx.s == 1 or r.is_zero():
        return u, q, r

    # Keep the component carrying lm(r) and divide the others again in rank s - 1.
    j = r.lm.comp
    order_p = projected(order, j)
    keep = [i for i, g in enumerate(G) if g.lm.comp != j]
    u2, q2, r2 = _strong_division(_project(r, j, order_p),
                                  [_project(G[i], j, order_p) for i in keep], order_p)

    new_q = [qi * u2 for qi in q]
    r_j = r.component(j) * u2
    for idx, i in enumerate(keep):
        new_q[i] = new_q[i] + q2[idx]
        r_j = r_j - q2[idx] * G[i].component(j)
    new_r = _include(r2, j, f.ctx, order) + r_j.lift(f.ctx, order, j)
    return u * u2, new_q, new_r


def dwr_strong(f: PolyVector, G: Sequence[PolyVector], order: CompiledOrdering) -> DivisionResult:
    """Weak division satisfying SID2: every nonzero r_j·e_j has an irreducible lead."""
    _check_order(order)
    f, kept, divisors = _nonzero_divisors(f, G, order)
    return _assemble(f, G, order, kept, _strong_division(f, divisors, order))
