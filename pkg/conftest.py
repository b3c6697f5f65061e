"""
Shared fixtures for the tstd test suite.
"""

import os
import sys
from typing import Optional

os.environ.setdefault('TSTD_ENV', 'testing')
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import numpy as np
import pytest

from tstd.cli.session import Session
from tstd.kernel.polyring import ModuleMonomial, PolyVector

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


def case_count(reduced: int, full: int) -> int:
    """Randomized suites run at full size only with TSTD_FULL_SUITE=1."""
    return full if os.getenv('TSTD_FULL_SUITE') == '1' else reduced


@pytest.fixture
def ring():
    """Factory for a session-backed ring: ring(tvars, xvars, order, ...).poly(text)."""
    def build(tvars=('t',), xvars=('x', 'y'), order='lex', field='QQ', rank=1, denom=1):
        return Session.from_dict({
            'ring': {'field': field, 'tvars': list(tvars), 'xvars': list(xvars),
                     'rank': rank, 'denom': denom},
            'order': order,
            'ideals': {'I': []},
        })
    return build


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_poly(rng, session: Session, terms: int = 3, max_deg: int = 3,
                comp: int = 0, coeff_bound: int = 5) -> PolyVector:
    """Random element with small integer coefficients; comp=0 picks components at random."""
    ctx = session.ctx
    pairs = []
    for _ in range(terms):
        alpha = tuple(int(a) * ctx.denom for a in rng.integers(0, max_deg + 1, ctx.m))
        beta = tuple(int(b) for b in rng.integers(0, max_deg + 1, ctx.n))
        c = int(rng.integers(-coeff_bound, coeff_bound + 1))
        j = comp or int(rng.integers(1, ctx.s + 1))
        pairs.append((ModuleMonomial(alpha, beta, j), c))
    return PolyVector.from_terms(ctx, session.order, pairs)


def nonzero_random_poly(rng, session: Session, **kwargs) -> PolyVector:
    while True:
        p = random_poly(rng, session, **kwargs)
        if p:
            return p


def _composition(rng, total: int, parts: int) -> tuple:
    cuts = sorted(int(c) for c in rng.integers(0, total + 1, parts - 1))
    bounds = [0] + cuts + [total]
    return tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def random_homogeneous(rng, session: Session, degree: int, terms: int = 3,
                       max_t: int = 2, comp: int = 1, t_degree: Optional[int] = None) -> PolyVector:
    """x-homogeneous element of the given x-degree; with t_degree also homogeneous in t."""
    ctx = session.ctx
    pairs = []
    for _ in range(terms):
        beta = _composition(rng, degree, ctx.n)
        if t_degree is None:
            alpha = tuple(int(a) for a in rng.integers(0, max_t + 1, ctx.m))
        else:
            alpha = _composition(rng, t_degree, ctx.m)
        pairs.append((ModuleMonomial(alpha, beta, comp), int(rng.integers(-4, 5))))
    return PolyVector.from_terms(ctx, session.order, pairs)
