"""
Standard bases of submodules of K[t][x]^s under t-local orderings.

Pairs are processed first-in first-out; every nonzero weak remainder of an
s-polynomial is appended to the basis and paired with all earlier elements.
Pairs of ideal generators with coprime leads are skipped when the product
criterion applies.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from tstd.config import current_config
from tstd.division.mora import dwr
from tstd.errors import ContextError, StandardBasisError
from tstd.kernel.ordering import CompiledOrdering
from tstd.kernel.polyring import ModuleMonomial, PolyVector, RingContext

logger = logging.getLogger(__name__)


class StdStatus(str, Enum):
    UNKNOWN = 'unknown'
    VERIFIED = 'verified'
    FAILED = 'failed'


@dataclass
class GeneratorSet:
    """Nonzero generators of a submodule, all sorted under ``order``."""

    gens: List[PolyVector]
    order: CompiledOrdering
    is_std: StdStatus = StdStatus.UNKNOWN
    input_count: Optional[int] = None

    def __post_init__(self):
        for g in self.gens:
            if g.is_zero():
                raise ContextError("generator sets hold nonzero elements only")
            if g.ctx != self.order.ctx:
                raise ContextError("generator outside the ordering's ring context")
        self.gens = [g.reorder(self.order) for g in self.gens]
        if self.input_count is None:
            self.input_count = len(self.gens)

    @classmethod
    def of(cls, gens: Sequence[PolyVector], order: CompiledOrdering) -> 'GeneratorSet':
        """Build from arbitrary elements, skipping zeros."""
        return cls([g for g in gens if not g.is_zero()], order)

    @property
    def ctx(self) -> RingContext:
        return self.order.ctx

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def leads(self) -> List[ModuleMonomial]:
        return [g.lm for g in self.gens]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'gens': [g.to_text() for g in self.gens],
            'is_std': self.is_std.value,
            'input_count': self.input_count,
        }


@dataclass
class LeadingModule:
    """Minimal monomial generators of a leading submodule."""

    monomials: List[ModuleMonomial] = field(default_factory=list)

    def contains(self, mon: ModuleMonomial) -> bool:
        return any(lead.divides(mon) for lead in self.monomials)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeadingModule):
            return NotImplemented
        return set(self.monomials) == set(other.monomials)


def _minimal(monomials: Sequence[ModuleMonomial]) -> List[ModuleMonomial]:
    minimal: List[ModuleMonomial] = []
    for mon in monomials:
        if any(kept.divides(mon) for kept in minimal):
            continue
        minimal = [kept for kept in minimal if not mon.divides(kept)]
        minimal.append(mon)
    return minimal


def spoly(f: PolyVector, g: PolyVector, order: Optional[CompiledOrdering] = None) -> PolyVector:
    """(lcm/lt(f))·f - (lcm/lt(g))·g; zero when the leading components differ."""
    order = order or f.order
    if f.is_zero() or g.is_zero():
        raise StandardBasisError("s-polynomial of a zero element")
    f, g = f.reorder(order), g.reorder(order)
    lcm = f.lm.lcm(g.lm)
    if lcm is None:
        return PolyVector.zero(f.ctx, order)
    field_ = f.ctx.field
    left = f.mul_term(lcm.quotient(f.lm), field_.inv(f.lead_coeff))
    right = g.mul_term(lcm.quotient(g.lm), field_.inv(g.lead_coeff))
    return left - right


def _coprime_pair(f: PolyVector, g: PolyVector) -> bool:
    """Product criterion for ideals: spoly(f, g) = (f'·g - g'·f)/(lc(f)·lc(g)).

    With coprime leads this is a standard representation as soon as the two
    products have different leading monomials (or a tail is zero). Under a
    t-local ordering lm(f') may be a multiple of lm(f), so that is checked.
    """
    if f.ctx.s != 1:
        return False
    lf, lg = f.lm, g.lm
    if any(a and b for a, b in zip(lf.alpha + lf.beta, lg.alpha + lg.beta)):
        return False
    f_tail, g_tail = f.tail(), g.tail()
    if not f_tail or not g_tail:
        return True
    return f_tail.lm.times(lg) != g_tail.lm.times(lf)


def std(F: GeneratorSet) -> GeneratorSet:
    """Standard basis of <F>; contains the input generators in their order.

    With ``current_config.PAIR_CRITERIA`` pairs passing the product criterion
    are skipped; they have a standard representation by the pair itself.
    """
    order = F.order
    gens = list(F.gens)
    criteria = current_config.PAIR_CRITERIA
    pairs = deque((i, j) for j in range(len(gens)) for i in range(j))
    reductions = skipped = 0
    while pairs:
        i, j = pairs.popleft()
        if criteria and _coprime_pair(gens[i], gens[j]):
            skipped += 1
            continue
        s = spoly(gens[i], gens[j], order)
        if s.is_zero():
            continue
        reductions += 1
        r = dwr(s, gens, order).r
        if r.is_zero():
            logger.debug(f"Pair ({i + 1}, {j + 1}) reduces to zero")
            continue
        k = len(gens)
        gens.append(r)
        pairs.extend((a, k) for a in range(k))
        logger.debug(f"Pair ({i + 1}, {j + 1}) adds generator {k + 1} with lead {r.lm}")
    logger.info(f"Standard basis finished with {len(gens)} generators after {reductions} reductions, "
                f"{skipped} pairs skipped")
    return GeneratorSet(gens, order, StdStatus.VERIFIED, F.input_count)


def _pair_reduces(gens: List[PolyVector], i: int, j: int, order: CompiledOrdering) -> bool:
    s = spoly(gens[i], gens[j], order)
    return s.is_zero() or dwr(s, gens, order).r.is_zero()


def is_standard_basis(G: GeneratorSet) -> bool:
    """Buchberger check: every s-polynomial has weak remainder zero.

    Pair checks run through joblib with ``current_config.get_n_jobs()`` workers;
    results come back in pair order.
    """
    gens, order = G.gens, G.order
    pairs = [(i, j) for j in range(len(gens)) for i in range(j)]
    if not pairs:
        G.is_std = StdStatus.VERIFIED
        return True
    outcomes = Parallel(n_jobs=current_config.get_n_jobs(), prefer='threads')(
        delayed(_pair_reduces)(gens, i, j, order) for i, j in pairs)
    verified = all(outcomes)
    G.is_std = StdStatus.VERIFIED if verified else StdStatus.FAILED
    if not verified:
        failing = [pair for pair, ok in zip(pairs, outcomes) if not ok]
        logger.info(f"Buchberger check failed on {len(failing)} pairs, first {failing[0]}")
    return verified


def leading_module(G: GeneratorSet) -> LeadingModule:
    return LeadingModule(_minimal(G.leads()))


def membership(f: PolyVector, F: GeneratorSet) -> bool:
    """Whether f lies in <F> over the localisation: weak remainder by std(F) is zero."""
    if f.is_zero():
        return True
    basis = F if F.is_std == StdStatus.VERIFIED else std(F)
    return dwr(f, basis.gens, basis.order).r.is_zero()


def minimalize(G: GeneratorSet) -> GeneratorSet:
    """Keep generators with minimal leads; equal leads keep the earliest.

    The leading module is unchanged, so a standard basis stays one.
    """
    leads = G.leads()
    kept = [
        g for i, g in enumerate(G.gens)
        if not any(j != i and lead.divides(leads[i]) and (lead != leads[i] or j < i)
                   for j, lead in enumerate(leads))
    ]
    return GeneratorSet(kept, G.order, G.is_std, G.input_count)
