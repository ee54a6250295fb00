"""JSON documents for every structure, and DOT export.

Every document is a JSON object with a ``type`` field: ``forest``,
``algebra``, ``gao``, ``two_rel_frame`` or ``one_rel_frame``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .algebra import GodelAlgebra
from .errors import StructureError
from .frames import OneRelFrame, TwoRelFrame
from .modal import GAO
from .order import Forest, Rel

__all__ = [
    "ParseError",
    "parse_document",
    "parse_text",
    "load",
    "emit",
    "dumps",
    "export_dot",
    "fixture_path",
    "fixture_names",
]


class ParseError(StructureError):
    """Malformed document; ``line`` and ``column`` are set for JSON syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


def _need(doc: dict, key: str):
    if key not in doc:
        raise ParseError(f"{doc.get('type', 'document')} document lacks field {key!r}")
    return doc[key]


def _node(f: Forest, ref) -> int:
    if isinstance(ref, bool) or not isinstance(ref, (int, str)):
        raise ParseError(f"bad node reference {ref!r}")
    return f.node(ref)


def _forest(doc: dict) -> Forest:
    n = _need(doc, "nodes")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError("forest 'nodes' must be a non-negative integer")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ParseError("forest 'labels' must list one label per node")
    stub = Forest(n, frozenset((i, i) for i in range(n)), labels)
    covers = []
    for pair in _need(doc, "covers"):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"cover {pair!r} is not a pair")
        covers.append((_node(stub, pair[0]), _node(stub, pair[1])))
    return Forest.from_covers(n, covers, labels)


def _element(names: list, ref) -> int:
    if isinstance(ref, bool):
        raise ParseError(f"bad element reference {ref!r}")
    if isinstance(ref, int):
        if 0 <= ref < len(names):
            return ref
    elif isinstance(ref, str) and ref in names:
        return names.index(ref)
    raise ParseError(f"unknown element {ref!r}")


def _algebra(doc: dict) -> GodelAlgebra:
    names = _need(doc, "elements")
    if not isinstance(names, list) or not names:
        raise ParseError("algebra 'elements' must be a non-empty list of names")
    names = [str(x) for x in names]
    if "covers" in doc and "meet" not in doc:
        covers = [(_element(names, a), _element(names, b)) for a, b in doc["covers"]]
        alg = GodelAlgebra.from_covers(names, covers)
        for key in ("bot", "top"):
            if key in doc and _element(names, doc[key]) != getattr(alg, key):
                raise ParseError(f"declared {key} disagrees with the covers")
        return alg
    tables = {}
    for key in ("meet", "join", "impl"):
        raw = _need(doc, key)
        if not isinstance(raw, list):
            raise ParseError(f"{key} table must be a list of rows")
        rows = []
        for row in raw:
            if not isinstance(row, list):
                raise ParseError(f"{key} table row {row!r} is not a list")
            rows.append([_element(names, v) for v in row])
        tables[key] = rows
    bot = _element(names, _need(doc, "bot"))
    top = _element(names, _need(doc, "top"))
    return GodelAlgebra(names, tables["meet"], tables["join"], tables["impl"], bot, top)


def _gao(doc: dict) -> GAO:
    alg = _algebra(_need(doc, "algebra"))
    names = list(alg.names)

    def table(key):
        raw = _need(doc, key)
        if isinstance(raw, dict):
            missing = [x for x in names if x not in raw]
            if missing:
                raise ParseError(f"{key} table misses {missing[0]!r}")
            return [_element(names, raw[x]) for x in names]
        if not isinstance(raw, list):
            raise ParseError(f"{key} must be a list or an object")
        return [_element(names, v) for v in raw]

    return GAO(alg, table("box"), table("diamond"))


def _pairs(f: Forest, raw, key: str) -> Rel:
    if not isinstance(raw, list):
        raise ParseError(f"{key} must be a list of pairs")
    pairs = []
    for p in raw:
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError(f"{key} entry {p!r} is not a pair")
        pairs.append((_node(f, p[0]), _node(f, p[1])))
    return Rel.from_pairs(f.n, pairs)


def _sub_forest(doc: dict) -> Forest:
    fdoc = _need(doc, "forest")
    if not isinstance(fdoc, dict):
        raise ParseError("'forest' must be an object")
    return _forest(fdoc)


PARSERS = {
    "forest": _forest,
    "algebra": _algebra,
    "gao": _gao,
    "two_rel_frame": lambda d: TwoRelFrame(
        f := _sub_forest(d), _pairs(f, _need(d, "box"), "box"), _pairs(f, _need(d, "dia"), "dia")
    ),
    "one_rel_frame": lambda d: OneRelFrame(f := _sub_forest(d), _pairs(f, _need(d, "r"), "r")),
}


def parse_document(doc) -> Forest | GodelAlgebra | GAO | TwoRelFrame | OneRelFrame:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    kind = doc.get("type")
    if kind not in PARSERS:
        raise ParseError(f"unknown document type {kind!r}")
    try:
        return PARSERS[kind](doc)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, StructureError):
            raise
        raise ParseError(f"malformed {kind} document: {exc}") from None


def parse_text(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return parse_document(doc)


FIXTURES = resources.files("forestmodal") / "fixtures"


def fixture_names() -> list[str]:
    return sorted(p.name[:-5] for p in FIXTURES.iterdir() if p.name.endswith(".json"))


def fixture_path(name: str):
    stem = name[:-5] if name.endswith(".json") else name
    p = FIXTURES / f"{stem}.json"
    if not p.is_file():
        raise FileNotFoundError(name)
    return p


def load(source: str):
    """Parse a document from a path, ``-`` (stdin), or a shipped fixture name."""
    import sys

    if source == "-":
        return parse_text(sys.stdin.read())
    path = Path(source)
    if path.is_file():
        return parse_text(path.read_text(encoding="utf-8"))
    try:
        return parse_text(fixture_path(path.name).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParseError(f"no such file or fixture: {source}") from None


def _emit_forest(f: Forest) -> dict:
    return {
        "type": "forest",
        "nodes": f.n,
        "covers": [list(c) for c in f.covers],
        "labels": list(f.labels),
    }


def _emit_algebra(a: GodelAlgebra) -> dict:
    return {
        "type": "algebra",
        "elements": list(a.names),
        "meet": [list(r) for r in a.meet],
        "join": [list(r) for r in a.join],
        "impl": [list(r) for r in a.impl],
        "bot": a.names[a.bot],
        "top": a.names[a.top],
    }


def _emit_pairs(f: Forest, r: Rel) -> list:
    return [[f.labels[a], f.labels[b]] for a, b in r.sorted_pairs()]


def emit(obj) -> dict:
    if isinstance(obj, Forest):
        return _emit_forest(obj)
    if isinstance(obj, GodelAlgebra):
        return _emit_algebra(obj)
    if isinstance(obj, GAO):
        names = obj.algebra.names
        return {
            "type": "gao",
            "algebra": _emit_algebra(obj.algebra),
            "box": [names[v] for v in obj.box],
            "diamond": [names[v] for v in obj.diamond],
        }
    if isinstance(obj, TwoRelFrame):
        return {
            "type": "two_rel_frame",
            "forest": _emit_forest(obj.forest),
            "box": _emit_pairs(obj.forest, obj.rbox),
            "dia": _emit_pairs(obj.forest, obj.rdia),
        }
    if isinstance(obj, OneRelFrame):
        return {
            "type": "one_rel_frame",
            "forest": _emit_forest(obj.forest),
            "r": _emit_pairs(obj.forest, obj.r),
        }
    raise TypeError(f"cannot emit {type(obj).__name__}")


def dumps(doc, indent: int | None = 2) -> str:
    return json.dumps(doc, indent=indent, ensure_ascii=False)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(obj) -> str:
    """DOT digraph: covers undirected (``dir=none``), relations dashed and labelled."""
    if isinstance(obj, (TwoRelFrame, OneRelFrame)):
        f = obj.forest
        name = "frame"
    elif isinstance(obj, Forest):
        f = obj
        name = "forest"
    elif isinstance(obj, GodelAlgebra):
        f = obj.order()
        name = "algebra"
    elif isinstance(obj, GAO):
        return export_dot(obj.algebra)
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    lines = [f"digraph {name} {{"]
    for lab in f.labels:
        lines.append(f"  {_q(lab)};")
    for a, b in f.covers:
        lines.append(f"  {_q(f.labels[a])} -> {_q(f.labels[b])} [dir=none];")
    rels = []
    if isinstance(obj, TwoRelFrame):
        rels = [("box", obj.rbox), ("dia", obj.rdia)]
    elif isinstance(obj, OneRelFrame):
        rels = [("R", obj.r)]
    for label, r in rels:
        for a, b in r.sorted_pairs():
            lines.append(f"  {_q(f.labels[a])} -> {_q(f.labels[b])} [style=dashed, label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
