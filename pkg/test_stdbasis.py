"""
Standard bases, leading modules and membership.
"""

import pytest
from sympy import Poly, groebner, symbols, sympify

from conftest import case_count, nonzero_random_poly
from tstd.config import current_config
from tstd.errors import ContextError, StandardBasisError
from tstd.kernel.polyring import PolyVector
from tstd.stdbasis.standard_basis import (GeneratorSet, LeadingModule, StdStatus, _coprime_pair, is_standard_basis,
                                          leading_module, membership, minimalize, spoly, std)


def _gens(S, *texts):
    return GeneratorSet.of([S.poly(text) for text in texts], S.order)


def test_generator_sets_reject_zero(ring):
    S = ring()
    with pytest.raises(ContextError):
        GeneratorSet([PolyVector.zero(S.ctx, S.order)], S.order)
    F = GeneratorSet.of([S.poly('x'), S.poly('0')], S.order)
    assert len(F) == 1
    assert F.input_count == 1


def test_spoly(ring):
    S = ring()
    assert spoly(S.poly('x*y'), S.poly('x^2 - t*y')).to_text() == 't*y^2'
    assert spoly(S.poly('x - t'), S.poly('y - t')).to_text() == 't*x - t*y'
    with pytest.raises(StandardBasisError):
        spoly(S.poly('x'), PolyVector.zero(S.ctx, S.order))


def test_spoly_of_different_components_is_zero(ring):
    S = ring(rank=2, order='module(lex, c)')
    assert spoly(S.poly('x*gen(1)'), S.poly('x*gen(2)')).is_zero()


def test_std_fixture(ring):
    S = ring()
    F = _gens(S, 'x*y', 'x^2 - t*y')
    assert not is_standard_basis(F)
    assert F.is_std == StdStatus.FAILED
    G = std(F)
    assert [g.to_text() for g in G] == ['x*y', 'x^2 - t*y', 't*y^2']
    assert G.is_std == StdStatus.VERIFIED
    assert G.input_count == 2
    assert is_standard_basis(G)


def test_std_keeps_an_existing_basis(ring):
    S = ring()
    F = _gens(S, 'x - t', 'y - t')
    assert is_standard_basis(F)
    assert [g.to_text() for g in std(F)] == ['x - t', 'y - t']


def test_leading_module(ring):
    S = ring()
    L = leading_module(std(_gens(S, 'x*y', 'x^2 - t*y')))
    assert L == LeadingModule([S.poly(m).lm for m in ('x*y', 'x^2', 't*y^2')])
    assert L.contains(S.poly('x^2*y').lm)
    assert not L.contains(S.poly('y^5').lm)


def test_membership(ring):
    S = ring()
    F = _gens(S, 'x*y', 'x^2 - t*y')
    assert membership(S.poly('t*y^2'), F)
    assert membership(S.poly('x^3'), F)
    assert not membership(S.poly('y'), F)
    assert membership(S.poly('0'), F)


def test_membership_in_the_localisation(ring):
    S = ring(xvars=('x',))
    # 1 - t is a unit, x - t*x = (1 - t)·x
    assert membership(S.poly('1'), _gens(S, '1 - t'))
    assert membership(S.poly('x'), _gens(S, 'x - t*x'))
    assert not membership(S.poly('1'), _gens(S, 't'))


def test_minimalize_keeps_earliest_minimal_lead(ring):
    S = ring()
    G = _gens(S, 'x', 'x*y + t', 'x - t*x')
    assert [g.to_text() for g in minimalize(G)] == ['x']


def test_std_of_vectors(ring):
    S = ring(rank=2, order='module(lex, c)')
    F = _gens(S, '[x, y]', '[y, 0]')
    G = std(F)
    assert is_standard_basis(G)
    assert membership(S.poly('[x*y, y^2]'), G)
    assert membership(S.poly('[0, y^2]'), G)
    assert not membership(S.poly('[0, y]'), G)


def test_std_under_weight_ordering(ring):
    S = ring(order='ws(-1, 1, 1) degrevlex')
    G = std(_gens(S, 'x^2 + t*y', 'x*y'))
    assert is_standard_basis(G)
    assert membership(S.poly('t*y^2'), G)


def _sympy_leads(gens, names, order):
    xs = symbols(names)
    basis = groebner([sympify(g.to_text().replace('^', '**')) for g in gens], *xs, order=order)
    return {Poly(g, *xs).monoms(order=order)[0] for g in basis.exprs}


@pytest.mark.slow
@pytest.mark.parametrize('order, sympy_order', [('degrevlex', 'grevlex'), ('lex', 'lex')])
def test_global_orderings_match_groebner_bases(ring, rng, order, sympy_order):
    S = ring(tvars=(), xvars=('x', 'y', 'z'), order=order)
    max_deg = case_count(2, 4)
    for _ in range(case_count(6, 60)):
        k = int(rng.integers(2, case_count(3, 5)))
        gens = [nonzero_random_poly(rng, S, terms=2, max_deg=max_deg) for _ in range(k)]
        ours = {lead.beta for lead in leading_module(std(GeneratorSet.of(gens, S.order))).monomials}
        assert ours == _sympy_leads(gens, 'x y z', sympy_order)


@pytest.mark.slow
@pytest.mark.parametrize('setup', [
    dict(order='ws(-1, 1, 1) lex'),
    dict(order='lex'),
    dict(order='degrevlex'),
    dict(order='module(lex, c)', rank=2),
])
def test_random_standard_bases_are_closed(ring, rng, setup):
    S = ring(**setup)
    for _ in range(case_count(5, 200)):
        F = GeneratorSet.of([nonzero_random_poly(rng, S, terms=2, max_deg=2) for _ in range(2)], S.order)
        G = std(F)
        assert is_standard_basis(G)
        assert all(membership(f, G) for f in F)


@pytest.mark.parametrize('f, g, skip', [
    ('x - t', 'y - t', True),
    ('x', 'y - t', True),
    ('x + t*x', 'y + t*y', False),
    ('x*y', 'x^2 - t*y', False),
])
def test_product_criterion(ring, f, g, skip):
    S = ring()
    assert _coprime_pair(S.poly(f), S.poly(g)) is skip


def test_product_criterion_is_off_for_vectors(ring):
    S = ring(rank=2, order='module(lex, c)')
    assert not _coprime_pair(S.poly('x*gen(1)'), S.poly('y*gen(1)'))


def test_skipped_pairs_are_logged(ring, caplog):
    S = ring()
    with caplog.at_level('INFO'):
        std(_gens(S, 'x - t', 'y - t'))
    assert '1 pairs skipped' in caplog.text


@pytest.mark.slow
def test_product_criterion_keeps_the_leading_ideal(ring, rng, monkeypatch):
    S = ring()
    for _ in range(case_count(3, 40)):
        F = GeneratorSet.of([nonzero_random_poly(rng, S, terms=2, max_deg=2) for _ in range(3)], S.order)
        monkeypatch.setattr(current_config, 'PAIR_CRITERIA', True)
        with_criterion = std(F)
        monkeypatch.setattr(current_config, 'PAIR_CRITERIA', False)
        without = std(F)
        assert leading_module(with_criterion) == leading_module(without)
        assert is_standard_basis(with_criterion)


@pytest.mark.slow
def test_three_cubics_finish(ring, rng):
    S = ring()
    for _ in range(case_count(1, 10)):
        F = GeneratorSet.of([nonzero_random_poly(rng, S, terms=3, max_deg=3) for _ in range(3)], S.order)
        G = std(F)
        assert is_standard_basis(G)
        assert all(membership(f, G) for f in F)
