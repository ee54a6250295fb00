from __future__ import annotations

import oracles
import pytest
from conftest import algebras
from hypothesis import given

from forestmodal.algebra import (
    GodelAlgebra,
    boolean_algebra,
    boolean_elements,
    chain_algebra,
    filter_generated,
    is_cofilter,
    is_filter,
    is_ideal,
    is_prime_filter,
    join_irreducibles,
    prime_filters,
    require_godel,
    validate_godel,
)
from forestmodal.documents import load
from forestmodal.errors import NotGodelError, StructureError
from forestmodal.order import Poset, downset_masks


@given(algebras())
def test_constructed_algebras_validate(alg):
    assert validate_godel(alg) is None


@given(algebras())
def test_implication_and_triple_negation(alg):
    for x in range(alg.size):
        assert alg.neg(alg.neg(alg.neg(x))) == alg.neg(x)
        for y in range(alg.size):
            assert (alg.impl[x][y] == alg.top) == alg.le(x, y)


@given(algebras(max_nodes=3))
def test_prime_filters_match_exhaustive_scan(alg):
    listed = [s for _, s in prime_filters(alg)]
    assert all(is_prime_filter(alg, s) for s in listed)
    assert sorted(map(sorted, listed)) == sorted(map(sorted, oracles.raw_prime_filters(alg)))
    assert all(oracles.raw_is_prime_filter(alg, s) == is_prime_filter(alg, s) for s in oracles.subsets(alg))


@given(algebras(max_nodes=3))
def test_complement_of_proper_cofilter_is_ideal(alg):
    full = frozenset(range(alg.size))
    for s in oracles.subsets(alg):
        if s != full and is_cofilter(alg, s):
            assert is_ideal(alg, full - s)


@given(algebras())
def test_join_irreducibles_by_definition(alg):
    assert sorted(join_irreducibles(alg)) == sorted(oracles.raw_join_irreducibles(alg))


@given(algebras())
def test_boolean_elements_closed(alg):
    b = boolean_elements(alg)
    for x in b:
        assert alg.neg(x) in b
        for y in b:
            assert alg.meet[x][y] in b and alg.join[x][y] in b


def test_free_one_generator_boolean_elements():
    a = load("free1")
    assert {a.names[x] for x in boolean_elements(a)} == {"⊥", "¬x", "¬¬x", "⊤"}


def test_top_alone_is_not_prime_in_free_one_generator():
    a = load("free1")
    assert is_filter(a, [a.top])
    assert not is_prime_filter(a, [a.top])  # x or not-x is top, yet neither is


def test_free_one_generator_prime_filters():
    a = load("free1")
    got = [(a.names[j], sorted(a.names[x] for x in s)) for j, s in prime_filters(a)]
    assert got == [
        ("x", sorted(["x", "¬¬x", "x∨¬x", "⊤"])),
        ("¬x", sorted(["¬x", "x∨¬x", "⊤"])),
        ("¬¬x", sorted(["¬¬x", "⊤"])),
    ]


def test_filter_generated():
    a = chain_algebra(4)
    assert filter_generated(a, [1]) == frozenset({1, 2, 3})
    assert filter_generated(a, []) == frozenset({a.top})


def test_one_element_algebra():
    a = GodelAlgebra(("0",), ((0,),), ((0,),), ((0,),), 0, 0)
    assert validate_godel(a) is None
    assert prime_filters(a) == []


def test_boolean_algebra_is_all_boolean():
    a = boolean_algebra(3)
    assert a.size == 8
    assert len(boolean_elements(a)) == 8


def test_rejects_non_prelinear():
    p = Poset.from_covers(3, [(0, 2), (1, 2)])
    ms = downset_masks(p)
    a = GodelAlgebra.from_order(
        [str(m) for m in ms], [(i, j) for i, x in enumerate(ms) for j, y in enumerate(ms) if x & ~y == 0]
    )
    rep = validate_godel(a)
    assert rep is not None and rep.kind == "prelinearity"
    with pytest.raises(NotGodelError):
        require_godel(a)


def test_rejects_bad_residuation():
    a = GodelAlgebra(("0", "1"), ((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 1)), 0, 1)
    rep = validate_godel(a)
    assert rep is not None and rep.kind == "residuation"


def test_non_heyting_order_is_structure_error():
    le = [(0, i) for i in range(5)] + [(i, 4) for i in range(5)] + [(i, i) for i in range(5)] + [(1, 2)]
    with pytest.raises(StructureError):
        GodelAlgebra.from_order(list("0abc1"), le)


def test_malformed_tables():
    with pytest.raises(StructureError):
        GodelAlgebra(("0", "1"), ((0,),), ((0, 1), (1, 1)), ((1, 1), (0, 1)), 0, 1)
    with pytest.raises(StructureError):
        GodelAlgebra(("0", "0"), ((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (0, 1)), 0, 1)
