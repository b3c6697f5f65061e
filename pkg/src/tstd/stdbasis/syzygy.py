"""
Syzygies of a standard basis via Schreyer's construction.

For each pair i < j with leads in the same component, the weak division
u·spoly(g_i, g_j) = sum(q_v·g_v) gives

    s_ij = u·(m_ji/lc(g_i))·eps_i - u·(m_ij/lc(g_j))·eps_j - sum(q_v·eps_v)

where m_ji = lcm/lm(g_i) and m_ij = lcm/lm(g_j). The s_ij form a standard
basis of syz(g_1, ..., g_k) under the Schreyer ordering induced by G.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from joblib import Parallel, delayed

from tstd.config import current_config
from tstd.division.mora import dwr
from tstd.errors import StandardBasisError
from tstd.kernel.ordering import CompiledOrdering, schreyer
from tstd.kernel.polyring import PolyVector
from tstd.stdbasis.standard_basis import GeneratorSet, StdStatus, spoly, std

logger = logging.getLogger(__name__)


@dataclass
class SyzygyVector:
    """A relation vector over the eps-basis of rank k = len(generators)."""

    vector: PolyVector
    generators: List[PolyVector]

    def pairing(self) -> PolyVector:
        """sum(vector_v·g_v)."""
        total = PolyVector.zero(self.generators[0].ctx, self.generators[0].order)
        for v, g in enumerate(self.generators, start=1):
            coefficient = self.vector.component(v)
            if coefficient:
                total = total + g.mul_by_poly(coefficient)
        return total

    def annihilates(self) -> bool:
        return self.pairing().is_zero()

    def to_dict(self) -> Dict[str, Any]:
        return {'vector': self.vector.to_text(vector_form=True)}


def schreyer_ordering(G: GeneratorSet) -> CompiledOrdering:
    return schreyer(G.order, G.leads())


def _syzygy(G: GeneratorSet, order_s: CompiledOrdering, i: int, j: int) -> Optional[PolyVector]:
    gi, gj = G.gens[i], G.gens[j]
    lcm = gi.lm.lcm(gj.lm)
    if lcm is None:
        return None
    division = dwr(spoly(gi, gj, G.order), G.gens, G.order)
    if division.r:
        logger.error(f"s-polynomial of pair ({i + 1}, {j + 1}) has remainder {division.r}")
        raise StandardBasisError("generators are not a standard basis")

    field = G.ctx.field
    ctx_k = order_s.ctx
    u = division.u
    left = u.mul_term(lcm.quotient(gi.lm), field.inv(gi.lead_coeff)).lift(ctx_k, order_s, i + 1)
    right = u.mul_term(lcm.quotient(gj.lm), field.inv(gj.lead_coeff)).lift(ctx_k, order_s, j + 1)
    vector = left - right
    for v, qv in enumerate(division.q, start=1):
        if qv:
            vector = vector - qv.lift(ctx_k, order_s, v)
    return vector


def syz(G: GeneratorSet, must_be_std: bool = True) -> List[SyzygyVector]:
    """Schreyer syzygies s_ij, i < j, in pair order.

    Raises:
        StandardBasisError: if G is marked as a failed standard basis or a
            pair leaves a nonzero remainder.
    """
    if G.is_std == StdStatus.FAILED:
        raise StandardBasisError("syzygies need a standard basis; the generator set failed verification")
    if must_be_std and G.is_std != StdStatus.VERIFIED:
        logger.info("Completing the generators to a standard basis before computing syzygies")
        G = std(G)
    if len(G) < 2:
        return []

    order_s = schreyer_ordering(G)
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    vectors = Parallel(n_jobs=current_config.get_n_jobs(), prefer='threads')(
        delayed(_syzygy)(G, order_s, i, j) for i, j in pairs)
    result = [SyzygyVector(v, list(G.gens)) for v in vectors if v is not None]
    if current_config.VERIFY_DIVISIONS:
        for syzygy in result:
            if not syzygy.annihilates():
                raise StandardBasisError(f"syzygy {syzygy.vector} does not annihilate the generators")
    logger.info(f"Computed {len(result)} syzygies of {len(G)} generators")
    return result
