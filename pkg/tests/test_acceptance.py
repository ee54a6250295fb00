"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (with its wall-clock time and limit) that is
printed immediately and repeated in the terminal summary.
"""

from __future__ import annotations

import contextlib
import io
import json
import time

import oracles
import pytest

from forestmodal.cli import main
from forestmodal.documents import fixture_path, load, parse_document
from forestmodal.duality import frame_iso, spectrum
from forestmodal.modal import induced_relations
from forestmodal.search import enum_forests

RESULTS: dict[int, str] = {}

# wall-clock limits in seconds, per criterion
LIMITS = {1: 1.0, 2: 1.0, 3: 1.0, 4: 1.0, 5: 1.0, 6: 5.0, 7: 300.0, 8: 60.0, 9: 120.0, 10: 60.0}


def cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main([str(a) for a in argv])
    text = out.getvalue()
    return code, text, err.getvalue()


def doc(*argv):
    code, text, _ = cli(*argv)
    return code, json.loads(text)


def fx(name):
    return fixture_path(name)


def record(num: int, title: str, start: float, problems: list[str]):
    elapsed = time.perf_counter() - start
    limit = LIMITS[num]
    if elapsed > limit:
        problems.append(f"took {elapsed:.2f}s, limit {limit:.0f}s")
    verdict = "PASS" if not problems else "FAIL"
    line = f"criterion {num:2d} {verdict}  {title}  ({elapsed:.2f}s / {limit:.0f}s)"
    if problems:
        line += "  :: " + "; ".join(problems)
    RESULTS[num] = line
    print(line)
    assert not problems, line


def expect(problems: list[str], cond: bool, what: str):
    if not cond:
        problems.append(what)


def _pairs(raw):
    return {tuple(p) for p in raw}


def _flag(d, name):
    return d[name]["holds"]


def test_criterion_01_free_algebra_duality(tmp_path):
    t0 = time.perf_counter()
    p: list[str] = []
    code, forest = doc("dual", fx("free1"))
    expect(p, code == 0, "dual exit status")
    expect(p, forest["nodes"] == 3, "three nodes")
    expect(p, len(forest["covers"]) == 1, "one cover")
    got = parse_document(forest)
    ref = load("fig1_forest")
    expect(p, frame_iso(got, [], ref, []) is not None, "one chain of two plus an isolated node")
    isolated = [i for i in range(got.n) if got.up[i] == 1 << i and got.down[i] == 1 << i]
    expect(p, len(isolated) == 1, "exactly one isolated node")
    back = tmp_path / "forest.json"
    back.write_text(json.dumps(forest))
    code, alg = doc("dual", back)
    expect(p, code == 0 and len(alg["elements"]) == 6, "six-element algebra back")
    code, rep = doc("represent", "--verify", fx("free1"))
    expect(p, code == 0 and rep["verified"]["ok"], "represent --verify")
    record(1, "Free1 dual/back/represent", t0, p)


def test_criterion_02_dunn_not_fischer_servi():
    t0 = time.perf_counter()
    p: list[str] = []
    code, d = doc("classify", fx("fig_dnotfs_gao"))
    expect(p, code == 0, "exit status 0")
    expect(p, _flag(d, "D1") and _flag(d, "D2") and _flag(d, "FS1"), "D1, D2, FS1 hold")
    expect(p, not _flag(d, "FS2"), "FS2 fails")
    expect(p, d["FS2"]["witness"] == ["x", "⊥"], "FS2 witness (x, bottom)")
    g = load(fx("fig_dnotfs_gao"))
    a = g.algebra
    x, bot = a.index("x"), a.bot
    lhs = a.impl[g.diamond[x]][g.box[bot]]
    rhs = g.box[a.impl[x][bot]]
    expect(p, lhs == a.top and not a.le(lhs, rhs), "dia x -> box bot is top, not below box not-x")
    expect(p, a.names[rhs] == "¬¬x", "box not-x is not-not-x")
    record(2, "Dunn but not Fischer Servi", t0, p)


# expected sets are written over node names x, y, z, k for the generators a, b, d, c
FSNOTD_NAMES = {"a": "x", "b": "y", "d": "z", "c": "k"}
FSNOTD_BOX = {
    ("x", "x"), ("x", "y"), ("y", "x"), ("y", "y"), ("y", "z"), ("z", "x"),
    ("z", "y"), ("z", "z"), ("k", "x"), ("k", "y"), ("k", "z"),
}
FSNOTD_DIA = {
    ("x", "x"), ("x", "y"), ("x", "z"), ("x", "k"), ("y", "x"), ("y", "y"),
    ("y", "z"), ("y", "k"), ("k", "x"), ("k", "y"), ("k", "z"), ("k", "k"),
}
FSNOTD_RA = {("x", "x"), ("x", "y"), ("y", "x"), ("y", "y"), ("y", "z"), ("k", "x"), ("k", "y"), ("k", "z")}


def test_criterion_03_fischer_servi_not_dunn():
    t0 = time.perf_counter()
    p: list[str] = []
    code, d = doc("classify", fx("fig_fsnotd_gao"))
    expect(p, code == 0, "exit status 0")
    expect(p, _flag(d, "FS1") and _flag(d, "FS2"), "FS1, FS2 hold")
    expect(p, not _flag(d, "D1"), "D1 fails")
    expect(p, ["a", "d"] in d["D1"]["witnesses"], "(a, d) witnesses D1 failure")
    g = load(fx("fig_fsnotd_gao"))
    f = spectrum(g.algebra)
    names = [FSNOTD_NAMES[lab] for lab in f.labels]
    rb, rd, ra = induced_relations(g)

    def named(r):
        return {(names[i], names[k]) for i, k in r.pairs}

    expect(p, named(rb) == FSNOTD_BOX, "box relation")
    expect(p, named(rd) == FSNOTD_DIA, "diamond relation")
    expect(p, named(ra) == FSNOTD_RA, "intersection relation")
    record(3, "Fischer Servi but not Dunn; induced relations", t0, p)


def test_criterion_04_or_vs_forest():
    t0 = time.perf_counter()
    p: list[str] = []
    code, tr = doc("transform", "--prime", fx("ex_orforest_frame"))
    expect(p, code == 0, "transform exit status")
    expect(p, _pairs(tr["box"]) == {
        ("f1", "f1"), ("f2", "f3"), ("f2", "f2"), ("f2", "f1"), ("f3", "f1"), ("f3", "f3"),
    }, "primed box relation")
    expect(p, _pairs(tr["dia"]) == {
        ("f1", "f2"), ("f1", "f3"), ("f2", "f2"), ("f2", "f1"), ("f2", "f3"), ("f3", "f3"),
    }, "primed diamond relation")
    code, fc = doc("frame-class", fx("ex_orforest_frame"))
    expect(p, code == 0 and fc["classes"]["forest"]["holds"], "forest frame")
    expect(p, not fc["classes"]["OR"]["holds"], "not OR")
    record(4, "forest frame that is not OR; prime transform", t0, p)


def test_criterion_05_p_vs_forest(tmp_path):
    t0 = time.perf_counter()
    p: list[str] = []
    code, fc = doc("frame-class", fx("ex_pforest_frame"))
    expect(p, code == 0 and fc["classes"]["P"]["holds"], "P frame")
    expect(p, not fc["classes"]["forest"]["holds"], "not a forest frame")
    code, text, _ = cli("transform", "--second", fx("ex_pforest_frame"))
    expect(p, code == 0, "second transform exit status")
    second = tmp_path / "second.json"
    second.write_text(text)
    code, fc2 = doc("frame-class", second)
    expect(p, fc2["classes"]["forest"]["holds"], "transformed frame is a forest frame")
    _, g_orig = doc("complex", "--class", "P", fx("ex_pforest_frame"))
    _, g_new = doc("complex", second)
    same = all(g_orig[k] == g_new[k] for k in ("algebra", "box", "diamond"))
    expect(p, same, "same operator tables")
    record(5, "P frame not forest; second transform", t0, p)


def test_criterion_06_separating_examples(tmp_path):
    def saved(d):
        path = tmp_path / f"doc{len(list(tmp_path.iterdir()))}.json"
        path.write_text(json.dumps(d))
        return path

    t0 = time.perf_counter()
    p: list[str] = []
    code, g = doc("complex", "--class", "CJ", fx("propfinal_i_cj_frame"))
    _, fl = doc("classify", saved(g))
    expect(p, _flag(fl, "DGAO") and not _flag(fl, "WGAO"), "(i) DGAO and not WGAO")
    expect(p, g["box"][g["algebra"]["elements"].index("{x,y}")] == "{x,y}", "(i) beta {x,y} = {x,y}")

    code, g = doc("complex", "--class", "FSD", fx("propfinal_iii_fsd_frame"))
    _, fl = doc("classify", saved(g))
    expect(p, _flag(fl, "FSDGAO") and not _flag(fl, "WGAO"), "(iii) FSDGAO and not WGAO")
    expect(p, g["box"][g["algebra"]["elements"].index("{x,y}")] == "{x}", "(iii) beta {x,y} = {x}")

    _, fl = doc("classify", fx("fig_dnotfs_gao"))
    expect(p, _flag(fl, "WGAO") and not _flag(fl, "FSGAO"), "(iv) WGAO and not FSGAO")

    _, fl = doc("classify", fx("propfinal_v_chain_gao"))
    expect(p, _flag(fl, "WGAO") and _flag(fl, "FSGAO") and not _flag(fl, "BAO"), "(v) WGAO, FSGAO, not BAO")

    for name in ("bao_bool2_identity_gao", "bao_kripke2_gao"):
        _, fl = doc("classify", fx(name))
        for flag in ("GAO", "DGAO", "FSGAO", "FSDGAO", "WGAO", "BAO"):
            expect(p, _flag(fl, flag), f"(ii) {name} {flag}")
    record(6, "separating examples (five parts)", t0, p)


THEOREM_SUITE = [
    "representation",
    "single-relation-representation",
    "fs-representation",
    "axioms-vs-relations",
    "frame-side-axioms",
    "d2-iff-fs1",
    "prime-transform-same-operators",
    "preimage-filters",
    "fs-roundtrip",
    "fs-transform",
    "cj-roundtrip",
    "cj-transform",
    "fsd-roundtrip",
    "fsd-transform",
    "w-frames-give-wgao",
    "wgao-gives-w-frame",
]


@pytest.mark.xfail(
    strict=True,
    reason="three statements have counterexamples at three nodes (fs-roundtrip, cj-transform, fsd-roundtrip)",
)
def test_criterion_07_theorem_suite():
    t0 = time.perf_counter()
    p: list[str] = []
    for tag in THEOREM_SUITE:
        code, rep = doc("verify", "--theorem", tag, "-n", 3)
        if code != 0 or not rep["passed"]:
            p.append(f"{tag} {rep['failures']}/{rep['instances']} fail")
    record(7, f"theorem suite at n<=3 ({len(THEOREM_SUITE)} statements)", t0, p)


def test_criterion_08_forest_counts():
    t0 = time.perf_counter()
    p: list[str] = []
    for n, want in zip(range(1, 5), (1, 2, 4, 9)):
        got = len(enum_forests(n))
        brute = oracles.brute_forest_count(n)
        expect(p, got == want == brute, f"n={n}: {got} enumerated, {brute} brute force")
        code, text, _ = cli("enumerate", "--forests", "-n", n)
        expect(p, code == 0 and len(text.splitlines()) == want, f"n={n} CLI lines")
    record(8, "forest counts 1, 2, 4, 9", t0, p)


HUNTS = [("DGAO ⟹ FSGAO", 3), ("FSGAO ⟹ DGAO", 3), ("forest-frame ⟹ OR", 3), ("P ⟹ forest-frame", 4), ("FSDGAO ⟹ WGAO", 4)]


def test_criterion_09_hunts():
    t0 = time.perf_counter()
    p: list[str] = []
    for prop, bound in HUNTS:
        code, rep = doc("hunt", "--property", prop, "-n", bound)
        ok = code == 1 and rep["found"] and rep["nodes"] <= bound and "witness" in rep
        expect(p, ok, f"{prop} within {bound} nodes")
    record(9, "counterexample hunts", t0, p)


def test_criterion_10_boolean_preservation_verdict():
    t0 = time.perf_counter()
    p: list[str] = []
    runs = []
    for _ in range(2):
        code, rep = doc("verify", "--theorem", "dunn-preserves-boolean", "-n", 3)
        rep.pop("seconds", None)
        runs.append((code, rep))
    (code, rep), (code2, rep2) = runs
    expect(p, code in (0, 1), "verdict produced")
    expect(p, (code, rep) == (code2, rep2), "reproducible")
    expect(p, rep["passed"] == (rep["counterexample"] is None), "counterexample present iff failing")
    verdict = "holds" if rep["passed"] else "refuted"
    record(10, f"boolean-preservation verdict: {verdict} on {rep['instances']} instances", t0, p)
