"""Forest frames with one or two relations: class conditions, transforms,
complex algebras and the frame/algebra cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .duality import _downset_data, downset_algebra, frame_iso, point_map, spectrum
from .errors import PreconditionError, StructureError, TheoremViolation
from .modal import GAO, Flag, beta_table, classify, complex_gao, delta_table, induced_relations
from .order import Forest, Rel, compose

__all__ = [
    "TwoRelFrame",
    "OneRelFrame",
    "FrameFlags",
    "classify_two_rel",
    "classify_one_rel",
    "prime_transform",
    "second_transform",
    "one_rel_transform",
    "one_rel_transform_checks",
    "complex_one_rel",
    "complex_one_rel_checks",
    "dual_one_rel_roundtrip",
    "frame_side_axiom_check",
    "ONE_REL_CLASSES",
]

ONE_REL_CLASSES = ("CJ", "FS", "FSD", "W", "basic")


def _check_rel(f: Forest, r: Rel, label: str):
    if not isinstance(r, Rel) or r.n != f.n:
        raise StructureError(f"{label} relation does not live on the forest carrier")


@dataclass(frozen=True)
class TwoRelFrame:
    forest: Forest
    rbox: Rel
    rdia: Rel

    def __post_init__(self):
        _check_rel(self.forest, self.rbox, "box")
        _check_rel(self.forest, self.rdia, "diamond")


@dataclass(frozen=True)
class OneRelFrame:
    forest: Forest
    r: Rel

    def __post_init__(self):
        _check_rel(self.forest, self.r, "frame")


@dataclass(frozen=True)
class FrameFlags:
    """Named inclusion flags plus the derived frame classes."""

    flags: dict = field(default_factory=dict)
    classes: dict = field(default_factory=dict)

    def __getitem__(self, key: str) -> Flag:
        if key in self.flags:
            return self.flags[key]
        return self.classes[key]

    def to_json(self) -> dict:
        return {
            "flags": {k: v.to_json() for k, v in self.flags.items()},
            "classes": {k: v.to_json() for k, v in self.classes.items()},
        }


def _incl(f: Forest, lhs: Rel, rhs: Rel) -> Flag:
    bad = (lhs - rhs).sorted_pairs()
    if not bad:
        return Flag(True)
    ws = tuple((f.labels[a], f.labels[b]) for a, b in bad)
    return Flag(False, ws[0], ws)


def _eq(f: Forest, lhs: Rel, rhs: Rel) -> Flag:
    bad = sorted(set((lhs - rhs).sorted_pairs()) | set((rhs - lhs).sorted_pairs()))
    if not bad:
        return Flag(True)
    ws = tuple((f.labels[a], f.labels[b]) for a, b in bad)
    return Flag(False, ws[0], ws)


def _both(flags: dict, *names: str) -> Flag:
    for k in names:
        fl = flags[k]
        if not fl.holds:
            return Flag(False, fl.witness, fl.witnesses, k)
    return Flag(True)


def classify_two_rel(fr: TwoRelFrame) -> FrameFlags:
    f = fr.forest
    ge, le = f.ge_rel, f.le_rel
    rb, rd = fr.rbox, fr.rdia
    fl = {
        "M": _incl(f, compose(ge, rb), rb),
        "A": _incl(f, compose(le, rd), rd),
        "OR1": _incl(f, compose(compose(ge, rb), ge), rb),
        "OR2": _incl(f, compose(compose(le, rd), le), rd),
        "P1": _incl(f, compose(ge, rb), compose(rb, ge)),
        "P2": _incl(f, compose(le, rd), compose(rd, le)),
    }
    classes = {
        "forest": _both(fl, "M", "A"),
        "OR": _both(fl, "OR1", "OR2"),
        "P": _both(fl, "P1", "P2"),
    }
    return FrameFlags(fl, classes)


def classify_one_rel(fr: OneRelFrame) -> FrameFlags:
    f = fr.forest
    ge, le, r = f.ge_rel, f.le_rel, fr.r
    le_r, ge_r = compose(le, r), compose(ge, r)
    r_le, r_ge = compose(r, le), compose(r, ge)
    fl = {
        "CJ1": _incl(f, le_r, r_le),
        "CJ2": _incl(f, ge_r, r_ge),
        "FS1f": _incl(f, le_r, r_le),
        "FS2f": _incl(f, r_ge, ge_r),
        "FSCJ2": _eq(f, r_ge, ge_r),
        "W1": _incl(f, le_r, r),
        "W2": _incl(f, ge_r, r),
        "basic": _eq(f, r, ge_r & le_r),
    }
    classes = {
        "CJ": _both(fl, "CJ1", "CJ2"),
        "FS": _both(fl, "FS1f", "FS2f"),
        "FSD": _both(fl, "FS1f", "FS2f", "CJ2"),
        "W": _both(fl, "W1", "W2"),
        "basic": fl["basic"],
    }
    return FrameFlags(fl, classes)


def _require(flags: FrameFlags, cls: str, what: str):
    fl = flags.classes[cls]
    if not fl.holds:
        raise PreconditionError(
            f"{what} requires a {cls} frame; {fl.cause} fails at {fl.witness}", witness=fl.witness
        )


def prime_transform(fr: TwoRelFrame) -> TwoRelFrame:
    """``(F, Rbox o >=, Rdia o <=)``; the result is an OR-frame."""
    _require(classify_two_rel(fr), "forest", "the prime transform")
    f = fr.forest
    out = TwoRelFrame(f, compose(fr.rbox, f.ge_rel), compose(fr.rdia, f.le_rel))
    if not classify_two_rel(out).classes["OR"].holds:
        raise TheoremViolation("prime transform of a forest frame is an OR-frame", out)
    return out


def second_transform(fr: TwoRelFrame) -> TwoRelFrame:
    """``(F, >= o Rbox, <= o Rdia)``; the result is a forest frame."""
    _require(classify_two_rel(fr), "P", "the second transform")
    f = fr.forest
    out = TwoRelFrame(f, compose(f.ge_rel, fr.rbox), compose(f.le_rel, fr.rdia))
    if not classify_two_rel(out).classes["forest"].holds:
        raise TheoremViolation("second transform of a P-frame is a forest frame", out)
    return out


def _transformed(f: Forest, r: Rel, cls: str) -> Rel:
    ge, le = f.ge_rel, f.le_rel
    if cls == "CJ":
        return compose(r, ge) & compose(r, le)
    if cls in ("FS", "FSD"):
        return compose(ge, r) & compose(r, le)
    if cls == "W":
        return compose(r, ge)
    raise ValueError(f"no transform for class {cls!r}")


def _box_rel(f: Forest, r: Rel, cls: str) -> Rel:
    return compose(f.ge_rel, r) if cls == "FS" else r


def one_rel_transform_checks(fr: OneRelFrame, cls: str) -> tuple[OneRelFrame, dict]:
    """Transformed frame and the truth value of every property it should have."""
    if cls not in ("CJ", "FS", "FSD", "W"):
        raise ValueError(f"no transform for class {cls!r}")
    _require(classify_one_rel(fr), cls, f"the {cls} transform")
    f, r = fr.forest, fr.r
    ge, le = f.ge_rel, f.le_rel
    rp = _transformed(f, r, cls)
    out = OneRelFrame(f, rp)
    fl = classify_one_rel(out)
    c = {}
    if cls == "CJ":
        c["CJ1 and CJ2 on R'"] = fl.classes["CJ"].holds
        c["R' o >= = R o >="] = compose(rp, ge) == compose(r, ge)
        c["R' o <= = R o <="] = compose(rp, le) == compose(r, le)
        c["FS2 on R'"] = fl.flags["FS2f"].holds
        c[">= o (R o >=) = R o >="] = compose(ge, compose(r, ge)) == compose(r, ge)
        c["<= o (R o <=) = R o <="] = compose(le, compose(r, le)) == compose(r, le)
        c["R' = (R' o >=) & (R' o <=)"] = rp == (compose(rp, ge) & compose(rp, le))
        c["same box"] = beta_table(f, rp) == beta_table(f, r)
        c["same diamond"] = delta_table(f, rp) == delta_table(f, r)
    elif cls in ("FS", "FSD"):
        c["FS1 and FS2 on R'"] = fl.classes["FS"].holds
        c[">= o R' = >= o R"] = compose(ge, rp) == compose(ge, r)
        c["R' o <= = R o <="] = compose(rp, le) == compose(r, le)
        c["R' = (>= o R') & (R' o <=)"] = rp == (compose(ge, rp) & compose(rp, le))
        c["same box"] = beta_table(f, compose(ge, rp)) == beta_table(f, compose(ge, r))
        c["same diamond"] = delta_table(f, rp) == delta_table(f, r)
        if cls == "FSD":
            c["CJ2 on R'"] = fl.flags["CJ2"].holds
            c["R' = (R' o >=) & (R' o <=)"] = rp == (compose(rp, ge) & compose(rp, le))
            c["box over R equals box over >= o R"] = beta_table(f, r) == beta_table(f, compose(ge, r))
    else:
        c["W on R'"] = fl.classes["W"].holds
        c["FS on R'"] = fl.classes["FS"].holds
    return out, c


def one_rel_transform(fr: OneRelFrame, cls: str) -> OneRelFrame:
    out, checks = one_rel_transform_checks(fr, cls)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise TheoremViolation(f"{cls} transform property fails", failed)
    return out


def _complex_tables(fr: OneRelFrame, cls: str) -> GAO:
    f = fr.forest
    return GAO(downset_algebra(f), beta_table(f, _box_rel(f, fr.r, cls)), delta_table(f, fr.r))


EXPECTED_VARIETIES = {
    "CJ": ("DGAO",),
    "FS": ("FSGAO",),
    "FSD": ("DGAO", "FSGAO"),
    "W": ("DGAO", "WGAO"),
}


def complex_one_rel_checks(fr: OneRelFrame, cls: str) -> tuple[GAO | None, dict]:
    if cls not in EXPECTED_VARIETIES:
        raise ValueError(f"no complex algebra for class {cls!r}")
    _require(classify_one_rel(fr), cls, f"the {cls} complex algebra")
    try:
        g = _complex_tables(fr, cls)
    except PreconditionError as exc:
        return None, {"operators close on downsets": False, "detail": str(exc)}
    flags = classify(g)
    checks = {"operators close on downsets": True}
    for v in EXPECTED_VARIETIES[cls]:
        checks[v] = getattr(flags, v).holds
    return g, checks


def complex_one_rel(fr: OneRelFrame, cls: str) -> GAO:
    """Complex GAO of a one-relation frame of class ``cls``.

    Box is the universal image along ``R`` (along ``>= o R`` for FS frames),
    diamond the existential preimage along ``R``.
    """
    g, checks = complex_one_rel_checks(fr, cls)
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        raise TheoremViolation(f"complex algebra of a {cls} frame", failed)
    return g


def _node_to_spectrum(f: Forest, alg) -> list[int]:
    """Spectrum node of ``point_map(f)[x]``: the filter generated by the principal downset of x."""
    _, pos = _downset_data(f)
    js = list(alg.joinirr)
    return [js.index(pos[f.down[x]]) for x in range(f.n)]


@dataclass
class RoundtripReport:
    ok: bool
    cls: str
    target: list
    recovered: list
    iso: tuple | None
    via_point_map: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "class": self.cls,
            "target": [list(p) for p in self.target],
            "recovered": [list(p) for p in self.recovered],
            "iso": None if self.iso is None else list(self.iso),
            "via_point_map": self.via_point_map,
            "detail": self.detail,
        }


def dual_one_rel_roundtrip(fr: OneRelFrame, cls: str) -> RoundtripReport:
    """Rebuild a one-relation frame from its complex GAO and compare.

    FS and FSD frames should come back as ``(X, R)``; CJ frames as ``(X, R')``
    with ``R'`` the CJ transform.
    """
    if cls not in ("CJ", "FS", "FSD"):
        raise ValueError(f"no round trip for class {cls!r}")
    _require(classify_one_rel(fr), cls, f"the {cls} round trip")
    f = fr.forest
    target = _transformed(f, fr.r, "CJ") if cls == "CJ" else fr.r
    g = _complex_tables(fr, cls)
    _, _, ra = induced_relations(g)
    sf = spectrum(g.algebra)
    iso = frame_iso(f, [target], sf, [ra])
    k = _node_to_spectrum(f, g.algebra)
    via_k = all(
        ((x, y) in target) == ((k[x], k[y]) in ra) for x in range(f.n) for y in range(f.n)
    )
    labels = sf.labels
    recovered = [(labels[a], labels[b]) for a, b in ra.sorted_pairs()]
    pulled = sorted((x, y) for x in range(f.n) for y in range(f.n) if (k[x], k[y]) in ra)
    return RoundtripReport(
        ok=iso is not None,
        cls=cls,
        target=[(f.labels[a], f.labels[b]) for a, b in target.sorted_pairs()],
        recovered=recovered,
        iso=iso,
        via_point_map=via_k,
        detail={"recovered_via_point_map": [[f.labels[a], f.labels[b]] for a, b in pulled]},
    )


@dataclass
class AxiomCheckReport:
    ok: bool
    frame_side: dict
    algebra_side: dict
    transfer: dict

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "frame_side": self.frame_side,
            "algebra_side": self.algebra_side,
            "transfer": self.transfer,
        }


def frame_side_axiom_check(fr: TwoRelFrame, raise_on_mismatch: bool = False) -> AxiomCheckReport:
    """Compare relation equalities on the prime transform with the complex GAO's flags.

    With ``Rb' = Rbox o >=``, ``Rd' = Rdia o <=`` and ``R' = Rb' & Rd'``:
    D1 iff ``Rb' = R' o >=``; D2 iff ``Rd' = R' o <=``; FS2 iff ``Rb' = >= o R'``.
    Also checks that the point map carries every box and diamond pair of the
    frame to a pair of the induced relations of the complex GAO.
    """
    _require(classify_two_rel(fr), "forest", "the frame-side axiom check")
    f = fr.forest
    ge, le = f.ge_rel, f.le_rel
    rb = compose(fr.rbox, ge)
    rd = compose(fr.rdia, le)
    rp = rb & rd
    frame_side = {
        "D1": rb == compose(rp, ge),
        "D2": rd == compose(rp, le),
        "FS2": rb == compose(ge, rp),
    }
    g = complex_gao(fr)
    flags = classify(g)
    algebra_side = {k: getattr(flags, k).holds for k in frame_side}
    gb, gd, _ = induced_relations(g)
    k = _node_to_spectrum(f, g.algebra)
    transfer = {
        "box": all((k[x], k[y]) in gb for x, y in fr.rbox.sorted_pairs()),
        "diamond": all((k[x], k[y]) in gd for x, y in fr.rdia.sorted_pairs()),
    }
    ok = frame_side == algebra_side and all(transfer.values())
    rep = AxiomCheckReport(ok, frame_side, algebra_side, transfer)
    if raise_on_mismatch and not ok:
        raise TheoremViolation("frame-side and algebra-side axiom verdicts disagree", rep.to_json())
    return rep
