from __future__ import annotations

import oracles
import pytest
from conftest import forest_with_rel
from hypothesis import given

from forestmodal.algebra import boolean_elements, is_cofilter, is_filter, prime_filters
from forestmodal.documents import load
from forestmodal.duality import spectrum
from forestmodal.errors import NotGodelError, PreconditionError
from forestmodal.frames import TwoRelFrame
from forestmodal.modal import (
    GAO,
    beta,
    classify,
    complex_gao,
    condition_A,
    condition_M,
    delta,
    gao_iso,
    induced_relations,
    require_gao,
    validate_gao,
    verify_representation,
)
from forestmodal.order import Forest, Rel, compose


def _gao_from(f, r1, r2):
    fr = TwoRelFrame(f, compose(f.ge_rel, r1), compose(f.le_rel, r2))
    return complex_gao(fr)


def gaos():
    return forest_with_rel(1, 3, count=2).map(lambda t: _gao_from(*t))


@given(gaos())
def test_d2_iff_fs1(g):
    fl = classify(g)
    assert fl.D2.holds == fl.FS1.holds


@given(gaos())
def test_representation(g):
    assert verify_representation(g).ok


@given(gaos())
def test_induced_relations_have_monotonicity(g):
    f = spectrum(g.algebra)
    rb, rd, _ = induced_relations(g)
    assert condition_M(f, rb) == [] and condition_A(f, rd) == []


@given(gaos())
def test_axioms_match_relation_identities(g):
    f = spectrum(g.algebra)
    rb, rd, ra = induced_relations(g)
    fl = classify(g)
    assert fl.D1.holds == (rb == compose(ra, f.ge_rel))
    assert fl.D2.holds == (rd == compose(ra, f.le_rel))
    assert fl.FS2.holds == (rb == compose(f.ge_rel, ra))


@given(gaos())
def test_preimages_of_prime_filters(g):
    a = g.algebra
    for _, s in prime_filters(a):
        assert is_filter(a, [x for x in range(a.size) if g.box[x] in s])
        pre = [x for x in range(a.size) if g.diamond[x] in s]
        # is_cofilter wants a nonempty set; the preimage may be empty when diamond is constant bottom
        assert not pre or is_cofilter(a, pre)


@given(gaos())
def test_wgao_outputs_boolean(g):
    if classify(g).WGAO.holds:
        b = boolean_elements(g.algebra)
        assert all(g.box[x] in b and g.diamond[x] in b for x in range(g.algebra.size))


@given(gaos())
def test_induced_relations_match_raw_definitions(g):
    a = g.algebra
    filters = [s for _, s in prime_filters(a)]
    rb, rd, _ = induced_relations(g)
    assert set(rb.pairs) == oracles.raw_box_relation(a, g.box, filters)
    assert set(rd.pairs) == oracles.raw_diamond_relation(a, g.diamond, filters)


@given(gaos())
def test_gao_iso_reflexive(g):
    assert gao_iso(g, g) is not None


def test_dnotfs_flags():
    fl = classify(load("fig_dnotfs_gao"))
    assert fl.D1.holds and fl.D2.holds and fl.FS1.holds
    assert not fl.FS2.holds
    assert fl.FS2.witness == ("x", "⊥")
    assert fl.WGAO.holds and not fl.FSGAO.holds


def test_fsnotd_flags():
    fl = classify(load("fig_fsnotd_gao"))
    assert fl.FS1.holds and fl.FS2.holds
    assert not fl.D1.holds
    assert fl.D1.witness == ("⊥", "d")
    assert ("a", "d") in fl.D1.witnesses


def test_chain_gao_flags():
    fl = classify(load("propfinal_v_chain_gao"))
    assert fl.WGAO.holds and fl.FSGAO.holds and not fl.BAO.holds


@pytest.mark.parametrize("name", ["bao_bool2_identity_gao", "bao_kripke2_gao"])
def test_bao_fixtures_in_every_subvariety(name):
    fl = classify(load(name))
    for flag in ("GAO", "DGAO", "FSGAO", "FSDGAO", "WGAO", "BAO"):
        assert getattr(fl, flag).holds, flag


def test_rejects_box_that_misses_top():
    a = load("chain3")
    g = GAO(a, (0, 0, 0), (0, 1, 2))
    assert validate_gao(g) is not None
    with pytest.raises(NotGodelError):
        require_gao(g)


def test_beta_refuses_non_downset():
    f = Forest.from_parents([None, 0])
    r = Rel.from_pairs(2, [(0, 1)])  # not inherited upward, so beta can leave a hole
    with pytest.raises(PreconditionError):
        beta(f, r, frozenset())
    assert delta(f, Rel.from_pairs(2, [(0, 0), (1, 0)]), {0}) == frozenset({0, 1})
