from __future__ import annotations

import json

import pytest
from conftest import algebras, forest_with_rel, forests
from hypothesis import given

from forestmodal.documents import (
    ParseError,
    dumps,
    emit,
    export_dot,
    fixture_names,
    load,
    parse_document,
    parse_text,
)
from forestmodal.errors import ForestModalError
from forestmodal.frames import OneRelFrame, TwoRelFrame
from forestmodal.modal import complex_gao
from forestmodal.order import compose


def _roundtrip(x):
    return parse_text(dumps(emit(x)))


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_roundtrip(name):
    x = load(name)
    assert _roundtrip(x) == x


def test_fixture_catalog():
    assert len(fixture_names()) == 15


@given(forests())
def test_forest_roundtrip(f):
    assert _roundtrip(f) == f


@given(algebras())
def test_algebra_roundtrip(a):
    assert _roundtrip(a) == a


@given(forest_with_rel(1, 4, count=2))
def test_frame_roundtrip(t):
    f, r1, r2 = t
    fr = TwoRelFrame(f, compose(f.ge_rel, r1), compose(f.le_rel, r2))
    assert _roundtrip(fr) == fr
    one = OneRelFrame(f, r1)
    assert _roundtrip(one) == one
    g = complex_gao(fr)
    assert _roundtrip(g) == g


def test_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        parse_text('{"type": "forest",\n  "nodes": }')
    assert err.value.line == 2


@pytest.mark.parametrize(
    "doc",
    [
        {"type": "mystery"},
        {"nodes": 2},
        {"type": "forest", "nodes": 2, "covers": [[0, 5]]},
        {"type": "forest", "nodes": 3, "covers": [[0, 2], [1, 2]]},
    ],
)
def test_bad_documents(doc):
    with pytest.raises(ForestModalError):
        parse_document(doc)


def test_missing_file():
    with pytest.raises(ParseError):
        load("/nonexistent/file.json")


def test_dot_export():
    dot = export_dot(load("ex_pforest_frame"))
    lines = dot.splitlines()
    assert lines[0] == "digraph frame {"
    assert lines[-1] == "}"
    assert '  "x" -> "y" [dir=none];' in lines
    assert '  "x" -> "y" [style=dashed, label="box"];' in lines
    assert '  "x" -> "x" [style=dashed, label="dia"];' in lines


def test_emit_is_json():
    for name in fixture_names():
        json.loads(dumps(emit(load(name))))
