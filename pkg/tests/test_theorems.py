"""Every catalogued statement checked exhaustively on forests of at most three nodes.

Instance and failure counts are frozen from a full run; a change in either
means enumeration or a checker changed behaviour.
"""

from __future__ import annotations

import pytest

from forestmodal.frames import OneRelFrame, classify_one_rel, complex_one_rel, one_rel_transform_checks
from forestmodal.modal import induced_relations
from forestmodal.order import Forest, Rel, compose
from forestmodal.search import theorem_names, verify_theorem

# name -> (instances, failures) at n <= 3
EXPECTED = {
    "representation": (57764, 0),
    "single-relation-representation": (336, 0),
    "fs-representation": (411, 0),
    "axioms-vs-relations": (57764, 0),
    "frame-side-axioms": (57764, 0),
    "d2-iff-fs1": (57764, 0),
    "preimage-filters": (57764, 0),
    "induced-relation-closure": (57764, 0),
    "wgao-gives-w-frame": (197, 0),
    "dunn-preserves-boolean": (336, 0),
    "prime-transform-same-operators": (1888, 0),
    "prime-transform-or-frame": (1888, 0),
    "second-transform": (2472, 0),
    "forest-frames-are-p-frames": (1888, 0),
    "point-map-transfer": (1888, 0),
    "stone-isomorphism": (7, 0),
    "point-map-bijection": (7, 0),
    "fs1-reformulation": (2082, 0),
    "cj-reformulation": (2082, 0),
    "fs-roundtrip": (1076, 177),
    "fs-transform": (1076, 0),
    "cj-roundtrip": (818, 0),
    "cj-transform": (818, 56),
    "fsd-roundtrip": (746, 13),
    "fsd-transform": (746, 0),
    "w-frames-give-wgao": (614, 0),
    "w-prime-transform": (614, 0),
}


def test_catalog_complete():
    assert sorted(theorem_names()) == sorted(EXPECTED)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_statement_at_three_nodes(name):
    rep = verify_theorem(name, 3)
    instances, failures = EXPECTED[name]
    assert (rep["instances"], rep["failures"]) == (instances, failures)
    assert rep["passed"] == (failures == 0)
    assert (rep["counterexample"] is None) == (failures == 0)


def _two_chain():
    return Forest.from_parents([None, 0])


def test_fs_roundtrip_counterexample_by_hand():
    f = _two_chain()
    r = Rel.from_pairs(2, [(0, 0), (0, 1), (1, 0)])
    fr = OneRelFrame(f, r)
    assert classify_one_rel(fr).classes["FS"].holds
    g = complex_one_rel(fr, "FS")
    rb, rd, ra = induced_relations(g)
    # box runs along >= o R and diamond along R, and both close up to the full relation,
    # so their meet cannot give the three-pair R back
    assert len(compose(f.ge_rel, r)) == len(compose(r, f.le_rel)) == 4
    assert len(rb) == len(rd) == len(ra) == 4
    assert len(r) == 3


def test_cj_transform_counterexample_by_hand():
    f = _two_chain()
    r = Rel.from_pairs(2, [(0, 1), (1, 1)])
    fr = OneRelFrame(f, r)
    assert classify_one_rel(fr).classes["CJ"].holds
    new, checks = one_rel_transform_checks(fr, "CJ")
    assert new.r == r
    assert (0, 0) in compose(r, f.ge_rel)
    assert (0, 0) not in compose(f.ge_rel, r)
    assert not all(checks.values())


def test_fsd_roundtrip_counterexample_by_hand():
    f = Forest.from_parents([None, 0, 1])
    r = Rel.from_pairs(3, [(0, 0), (1, 0), (1, 1), (2, 0), (2, 2)])
    fr = OneRelFrame(f, r)
    assert classify_one_rel(fr).classes["FSD"].holds
    _, _, ra = induced_relations(complex_one_rel(fr, "FSD"))
    assert len(ra) != len(r)
