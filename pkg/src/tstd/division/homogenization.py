"""
Ecart, homogenization and dehomogenization.

With ``folded=True`` the t-variables count as ordinary variables of the
polynomial ring: degrees, ecart and the homogenizing exponent are taken over
the full (t, x) block. This is the setting Mora's division runs in.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from tstd.errors import DivisionError
from tstd.kernel.ordering import CompiledOrdering, Homogenized, homogenized
from tstd.kernel.polyring import ModuleMonomial, PolyVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomogenizedPoly:
    """f^h over the context extended by x_0, with deg of the source element."""

    base: PolyVector
    source_degree: int

    @property
    def order(self) -> CompiledOrdering:
        return self.base.order


def ecart(f: PolyVector, order: Optional[CompiledOrdering] = None, folded: bool = False) -> int:
    """deg(f) - deg(lm(f)); degrees over x, or over (t, x) when folded."""
    if f.is_zero():
        raise DivisionError("ecart of the zero element is undefined")
    if order is not None:
        f = f.reorder(order)
    return f.deg_x(folded) - f.lm.degree(folded)


def homogenize(f: PolyVector, order_h: Optional[CompiledOrdering] = None,
               folded: bool = False) -> HomogenizedPoly:
    """x_0^deg(f)·f(t, x/x_0), sorted under ``order_h`` (default: >_h of f's order)."""
    if order_h is None:
        order_h = homogenized(f.order, folded)
    elif not isinstance(order_h.spec, Homogenized) or order_h.spec.folded != folded:
        raise DivisionError("homogenize needs a homogenized ordering of the matching kind")
    degree = f.deg_x(folded)
    acc = {
        ModuleMonomial(mon.alpha, mon.beta + (degree - mon.degree(folded),), mon.comp): c
        for mon, c in f.terms
    }
    return HomogenizedPoly(PolyVector.from_dict(order_h.ctx, order_h, acc), degree)


def dehomogenize(F: Union[HomogenizedPoly, PolyVector],
                 order: Optional[CompiledOrdering] = None) -> PolyVector:
    """Substitute x_0 = 1 and sort under ``order`` (default: the base of >_h)."""
    base = F.base if isinstance(F, HomogenizedPoly) else F
    if order is None:
        spec = base.order.spec
        if not isinstance(spec, Homogenized):
            raise DivisionError("dehomogenize needs the target ordering")
        order = spec.base
    acc = {}
    for mon, c in base.terms:
        stripped = ModuleMonomial(mon.alpha, mon.beta[:-1], mon.comp)
        acc[stripped] = acc[stripped] + c if stripped in acc else c
    return PolyVector.from_dict(order.ctx, order, acc)
