"""
Division results and the conditions a division with remainder can satisfy.

For u·f = q_1·g_1 + ... + q_k·g_k + r:

- ID1: lm(f) >= lm(q_i·g_i) for all i
- ID2: no lm(g_i) divides lm(r), unless r = 0
- SID2: no lm(g_i) divides lm(r_j·e_j), for each j with r_j != 0
- DD1: for j < i, no term of q_i·lm(g_i) is divisible by lm(g_j)
- DD2: no term of r is divisible by any lm(g_i)
- DDH: q_i and r are x-homogeneous of degrees deg_x(f) - deg_x(lm(g_i)) and deg_x(f)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Sequence

from tstd.errors import DivisionError
from tstd.kernel.ordering import CompiledOrdering
from tstd.kernel.polyring import ModuleMonomial, PolyVector

logger = logging.getLogger(__name__)


class Condition(str, Enum):
    ID1 = 'ID1'
    ID2 = 'ID2'
    SID2 = 'SID2'
    DD1 = 'DD1'
    DD2 = 'DD2'
    DDH = 'DDH'


@dataclass
class DivisionResult:
    """u·f = sum(q_i·g_i) + r (+ residual for truncated divisions)."""

    u: PolyVector
    q: List[PolyVector]
    r: PolyVector
    residual: Optional[PolyVector] = None
    conditions: FrozenSet[Condition] = frozenset()

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'u': self.u.to_text(),
            'q': [qi.to_text() for qi in self.q],
            'r': self.r.to_text(),
            'conditions': sorted(c.value for c in self.conditions),
        }
        if self.residual is not None:
            data['residual'] = self.residual.to_text()
        return data


def _combination(f: PolyVector, G: Sequence[PolyVector], result: DivisionResult) -> PolyVector:
    """u·f - sum(q_i·g_i) - r - residual; zero for a genuine division."""
    total = f.mul_by_poly(result.u)
    for qi, gi in zip(result.q, G):
        if qi and gi:
            total = total - gi.mul_by_poly(qi)
    total = total - result.r
    if result.residual is not None:
        total = total - result.residual
    return total


def verify_identity(f: PolyVector, G: Sequence[PolyVector], result: DivisionResult) -> None:
    if len(result.q) != len(G):
        raise DivisionError(f"not a division: {len(result.q)} quotients for {len(G)} divisors")
    defect = _combination(f, G, result)
    if defect:
        logger.error(f"Division identity fails for f = {f}: defect {defect}")
        raise DivisionError("not a division")


def _divisible_by_any(mon: ModuleMonomial, leads: Sequence[Optional[ModuleMonomial]]) -> bool:
    return any(lead is not None and lead.divides(mon) for lead in leads)


def check_conditions(f: PolyVector, G: Sequence[PolyVector], result: DivisionResult,
                     order: CompiledOrdering) -> FrozenSet[Condition]:
    """Verify the division identity, then return exactly the satisfied conditions.

    Raises:
        DivisionError: if u·f != sum(q_i·g_i) + r (+ residual).
    """
    verify_identity(f, G, result)
    f = f.reorder(order)
    G = [g.reorder(order) for g in G]
    r = result.r.reorder(order)
    key = order.key
    leads = [g.lm for g in G]
    scalar_order = order.scalar()
    quotients = [qi.reorder(scalar_order) for qi in result.q]
    flags = set()

    id1 = True
    for qi, lead in zip(quotients, leads):
        if not qi or lead is None:
            continue
        product_lead = lead.times(qi.lm)
        if f.is_zero() or key(product_lead) > key(f.lm):
            id1 = False
            break
    if id1:
        flags.add(Condition.ID1)

    if r.is_zero() or not _divisible_by_any(r.lm, leads):
        flags.add(Condition.ID2)

    component_leads = {}
    for mon, _ in r.terms:
        component_leads.setdefault(mon.comp, mon)
    if not any(_divisible_by_any(mon, leads) for mon in component_leads.values()):
        flags.add(Condition.SID2)

    dd1 = True
    for i, (qi, lead) in enumerate(zip(quotients, leads)):
        if lead is None:
            continue
        earlier = leads[:i]
        if any(_divisible_by_any(lead.times(mon), earlier) for mon, _ in qi.terms):
            dd1 = False
            break
    if dd1:
        flags.add(Condition.DD1)

    if not any(_divisible_by_any(mon, leads) for mon, _ in r.terms):
        flags.add(Condition.DD2)

    if f.is_x_homogeneous():
        degree = f.deg_x()
        ddh = r.is_x_homogeneous() and (r.is_zero() or r.deg_x() == degree)
        for qi, lead in zip(quotients, leads):
            if not ddh:
                break
            if qi.is_zero():
                continue
            ddh = qi.is_x_homogeneous() and lead is not None and qi.deg_x() == degree - lead.deg_x
        if ddh:
            flags.add(Condition.DDH)

    return frozenset(flags)
