from __future__ import annotations

import oracles
from conftest import algebras, forests, permuted_algebra
from hypothesis import given
from hypothesis import strategies as st

from forestmodal.algebra import prime_filters
from forestmodal.documents import load
from forestmodal.duality import (
    algebra_iso,
    downset_algebra,
    downset_elements,
    forest_automorphisms,
    frame_iso,
    point_map,
    spectrum,
    stone_map,
)
from forestmodal.order import Forest, Rel


def _is_iso(a, b, h):
    return sorted(h) == list(range(a.size)) and all(
        h[a.meet[x][y]] == b.meet[h[x]][h[y]] and h[a.join[x][y]] == b.join[h[x]][h[y]]
        for x in range(a.size)
        for y in range(a.size)
    )


@given(algebras())
def test_stone_map_is_isomorphism(alg):
    f = spectrum(alg)
    target = downset_algebra(f)
    masks = downset_elements(f)
    h = [masks.index(m) for m in stone_map(alg)]
    assert _is_iso(alg, target, h)


@given(forests())
def test_point_map_is_order_isomorphism(f):
    alg = downset_algebra(f)
    g = spectrum(alg)
    assert g.n == f.n
    # point_map gives each node's prime filter as an element mask; locate it in the spectrum
    filters = [sum(1 << x for x in s) for _, s in prime_filters(alg)]
    p = [filters.index(m) for m in point_map(f)]
    assert sorted(p) == list(range(f.n))
    for x in range(f.n):
        for y in range(f.n):
            assert f.le(x, y) == g.le(p[x], p[y])


@given(algebras(max_nodes=3))
def test_spectrum_order_is_reverse_inclusion(alg):
    f = spectrum(alg)
    sets = [s for _, s in prime_filters(alg)]
    for i in range(f.n):
        for k in range(f.n):
            assert f.le(i, k) == (sets[i] >= sets[k])


@given(algebras(), st.data())
def test_algebra_iso_finds_presentation_change(alg, data):
    perm = data.draw(st.permutations(range(alg.size)))
    other = permuted_algebra(alg, perm)
    h = algebra_iso(alg, other)
    assert h is not None and _is_iso(alg, other, h)


def test_non_isomorphic_algebras():
    two_chain = Forest.from_parents([None, 0])
    two_points = Forest.from_parents([None, None])
    assert algebra_iso(downset_algebra(two_chain), downset_algebra(two_points)) is None


def test_free_one_generator_spectrum():
    f = spectrum(load("free1"))
    assert f.n == 3
    assert f.covers == ((0, 2),)
    assert f.labels == ("x", "¬x", "¬¬x")


def test_automorphisms_of_antichain():
    f = Forest.from_parents([None, None, None])
    assert len(forest_automorphisms(f)) == 6
    assert len(forest_automorphisms(Forest.from_parents([None, 0, 0]))) == 2


def test_frame_iso_respects_relations():
    f = Forest.from_parents([None, None])
    r1 = Rel.from_pairs(2, [(0, 1)])
    r2 = Rel.from_pairs(2, [(1, 0)])
    r3 = Rel.from_pairs(2, [(0, 0)])
    assert frame_iso(f, [r1], f, [r2]) == (1, 0)
    assert frame_iso(f, [r1], f, [r3]) is None


def test_raw_filter_count_matches_forest_size():
    for name in ("free1", "chain3", "bool2", "fig_fsnotd_algebra"):
        alg = load(name)
        assert len(oracles.raw_prime_filters(alg)) == spectrum(alg).n
