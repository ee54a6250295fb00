"""Gödel algebras with operators: validation, induced relations, complex
operators, representation checks and variety flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .algebra import GodelAlgebra, ViolationReport, boolean_elements, is_cofilter, is_filter
from .duality import (
    _downset_data,
    algebra_isos,
    _preserves,
    downset_algebra,
    spectrum,
    stone_indices,
    stone_map,
)
from .errors import InvariantError, PreconditionError, StructureError
from .order import Forest, Rel, bits, compose

__all__ = [
    "GAO",
    "Flag",
    "VarietyFlags",
    "RepresentationReport",
    "validate_gao",
    "require_gao",
    "induced_relations",
    "beta",
    "delta",
    "beta_table",
    "delta_table",
    "complex_gao",
    "verify_representation",
    "classify",
    "boolean_image_check",
    "condition_M",
    "condition_A",
    "induced_box",
    "induced_diamond",
    "axiom_batch",
    "gao_iso",
]


@dataclass(frozen=True)
class GAO:
    algebra: GodelAlgebra
    box: tuple
    diamond: tuple

    def __post_init__(self):
        m = self.algebra.size
        for label in ("box", "diamond"):
            raw = getattr(self, label)
            try:
                table = tuple(int(v) for v in raw)
            except (TypeError, ValueError):
                raise StructureError(f"{label} table is not a list of element indices") from None
            if len(table) != m:
                raise StructureError(f"{label} table is not total over {m} elements")
            if any(not 0 <= v < m for v in table):
                raise StructureError(f"{label} table leaves the carrier")
            object.__setattr__(self, label, table)

    def named(self, label: str) -> dict[str, str]:
        names = self.algebra.names
        return {names[x]: names[v] for x, v in enumerate(getattr(self, label))}


def validate_gao(g: GAO) -> ViolationReport | None:
    """None if the four operator axioms hold, else the first violation.

    Check order: box top, box meet, diamond bottom, diamond join.
    """
    a = g.algebra
    names = a.names
    B, D = g.box, g.diamond
    if B[a.top] != a.top:
        return ViolationReport("box-top", "box(top) = top", (names[a.top],))
    for x in range(a.size):
        for y in range(a.size):
            if B[a.meet[x][y]] != a.meet[B[x]][B[y]]:
                return ViolationReport("box-meet", "box(x&y) = box(x)&box(y)", (names[x], names[y]))
    if D[a.bot] != a.bot:
        return ViolationReport("diamond-bottom", "diamond(bot) = bot", (names[a.bot],))
    for x in range(a.size):
        for y in range(a.size):
            if D[a.join[x][y]] != a.join[D[x]][D[y]]:
                return ViolationReport("diamond-join", "diamond(x|y) = diamond(x)|diamond(y)", (names[x], names[y]))
    for x in range(a.size):
        for y in range(a.size):
            if a.le(x, y) and not (a.le(B[x], B[y]) and a.le(D[x], D[y])):
                raise InvariantError("operators satisfy the axioms but are not monotone")
    return None


def require_gao(g: GAO) -> GAO:
    from .errors import NotGodelError

    rep = validate_gao(g)
    if rep is not None:
        raise NotGodelError(rep)
    return g


def induced_relations(g: GAO) -> tuple[Rel, Rel, Rel]:
    """``(R_box, R_dia, R_box & R_dia)`` on ``spectrum(g.algebra)``.

    ``i R_box k`` iff the generator of ``k`` lies below the meet of every ``a``
    whose box lies above the generator of ``i``; ``i R_dia k`` iff the
    generator of ``i`` lies below the diamond of the generator of ``k``.
    """
    return _induced(g)


@lru_cache(maxsize=65536)
def _induced(g: GAO) -> tuple[Rel, Rel, Rel]:
    rb = induced_box(g.algebra, g.box)
    rd = induced_diamond(g.algebra, g.diamond)
    return rb, rd, rb & rd


def induced_box(a: GodelAlgebra, box) -> Rel:
    """Box relation on the spectrum; depends on the box table only."""
    js = a.joinirr
    rows = []
    for ji in js:
        m = a.meet_all(x for x in range(a.size) if a.le(ji, box[x]))
        rows.append(sum(1 << k for k, jk in enumerate(js) if a.le(jk, m)))
    return Rel(len(js), tuple(rows))


def induced_diamond(a: GodelAlgebra, diamond) -> Rel:
    js = a.joinirr
    rows = [sum(1 << k for k, jk in enumerate(js) if a.le(ji, diamond[jk])) for ji in js]
    return Rel(len(js), tuple(rows))


def condition_M(f: Forest, r: Rel) -> list[tuple[int, int]]:
    """Pairs of ``(>= o R) - R``; empty iff R is inherited upward in its first argument."""
    return (compose(f.ge_rel, r) - r).sorted_pairs()


def condition_A(f: Forest, r: Rel) -> list[tuple[int, int]]:
    """Pairs of ``(<= o R) - R``; empty iff R is inherited downward in its first argument."""
    return (compose(f.le_rel, r) - r).sorted_pairs()


def beta_raw(r: Rel, a: int) -> int:
    return sum(1 << y for y, row in enumerate(r.rows) if row & ~a == 0)


def delta_raw(r: Rel, a: int) -> int:
    return sum(1 << y for y, row in enumerate(r.rows) if row & a)


def _downset_failure(f: Forest, mask: int):
    for y in bits(mask):
        missing = f.down[y] & ~mask
        if missing:
            return bits(missing)[0], y
    return None


def _checked(f: Forest, mask: int, op: str, a: int) -> int:
    bad = _downset_failure(f, mask)
    if bad is not None:
        z, y = bad
        raise PreconditionError(
            f"{op}({f.format_set(a)}) is not a downset: contains {f.labels[y]} but not {f.labels[z]}",
            witness=(f.labels[z], f.labels[y]),
        )
    return mask


def beta(f: Forest, r: Rel, a) -> frozenset[int]:
    """Nodes all of whose successors lie in ``a``; must be a downset."""
    mask = _node_mask(f, r, a)
    return frozenset(bits(_checked(f, beta_raw(r, mask), "beta", mask)))


def delta(f: Forest, r: Rel, a) -> frozenset[int]:
    """Nodes with some successor in ``a``; must be a downset."""
    mask = _node_mask(f, r, a)
    return frozenset(bits(_checked(f, delta_raw(r, mask), "delta", mask)))


def _node_mask(f: Forest, r: Rel, a) -> int:
    if r.n != f.n:
        raise StructureError("relation does not live on the forest")
    mask = a if isinstance(a, int) else sum(1 << f.node(x) for x in a)
    if mask >> f.n:
        raise StructureError("set mentions nodes outside the forest")
    return mask


def beta_table(f: Forest, r: Rel) -> tuple[int, ...]:
    """Box table of the complex algebra on ``downset_algebra(f)`` (element indices)."""
    return _op_table(f, r, True)


def delta_table(f: Forest, r: Rel) -> tuple[int, ...]:
    return _op_table(f, r, False)


@lru_cache(maxsize=65536)
def _op_table(f: Forest, r: Rel, is_box: bool) -> tuple[int, ...]:
    if r.n != f.n:
        raise StructureError("relation does not live on the forest")
    masks, pos = _downset_data(f)
    out = []
    raw = beta_raw if is_box else delta_raw
    for a in masks:
        v = raw(r, a)
        if v not in pos:
            _checked(f, v, "beta" if is_box else "delta", a)
        out.append(pos[v])
    return tuple(out)


def complex_gao(fr, require: str = "forest") -> GAO:
    """Complex algebra ``(G(F), beta_Rbox, delta_Rdia)`` of a two-relation frame.

    ``require`` selects the accepted frame class: ``"forest"`` (box relation
    inherited upward, diamond relation inherited downward) or ``"P"`` (the
    weaker inclusions ``>= o Rbox <= Rbox o >=`` and ``<= o Rdia <= Rdia o <=``).
    """
    f = fr.forest
    if require == "forest":
        checks = (("box", condition_M(f, fr.rbox)), ("diamond", condition_A(f, fr.rdia)))
    elif require == "P":
        checks = (
            ("box", (compose(f.ge_rel, fr.rbox) - compose(fr.rbox, f.ge_rel)).sorted_pairs()),
            ("diamond", (compose(f.le_rel, fr.rdia) - compose(fr.rdia, f.le_rel)).sorted_pairs()),
        )
    else:
        raise ValueError(f"unknown frame requirement {require!r}")
    for label, bad in checks:
        if bad:
            a, b = bad[0]
            raise PreconditionError(
                f"{label} relation violates the {require}-frame condition at ({f.labels[a]}, {f.labels[b]})",
                witness=(f.labels[a], f.labels[b]),
            )
    return GAO(downset_algebra(f), beta_table(f, fr.rbox), delta_table(f, fr.rdia))


@dataclass
class RepresentationReport:
    ok: bool
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": dict(self.checks),
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
            "skipped": list(self.skipped),
        }


def verify_representation(g: GAO, flags: VarietyFlags | None = None) -> RepresentationReport:
    """Check that the Stone map carries ``g`` onto the complex algebra of its induced frame.

    Base checks always run. When ``g`` satisfies both Dunn axioms the operators
    are also rebuilt from the single relation ``R_box & R_dia``; when it
    satisfies both Fischer Servi axioms the box is rebuilt from ``>= o R``.
    """
    a = g.algebra
    f = spectrum(a)
    r = stone_map(a)
    rb, rd, ra = induced_relations(g)
    rep = RepresentationReport(True)
    names = a.names

    def record(key, ok, witness=None):
        rep.checks[key] = ok
        if not ok:
            rep.ok = False
            rep.witnesses[key] = witness

    image = downset_algebra(f)
    idx = stone_indices(a)
    record("stone-isomorphism", _preserves(a, image, idx), ())

    def compare(key, op, rel, raw):
        for x in range(a.size):
            if r[op[x]] != raw(rel, r[x]):
                record(key, False, (names[x],))
                return
        record(key, True)

    compare("box", g.box, rb, beta_raw)
    compare("diamond", g.diamond, rd, delta_raw)
    if flags is None:
        flags = classify(g)
    if flags.DGAO.holds:
        compare("single-relation-box", g.box, ra, beta_raw)
        compare("single-relation-diamond", g.diamond, ra, delta_raw)
    else:
        rep.skipped.append("single-relation")
    if flags.FSGAO.holds:
        compare("fs-box", g.box, compose(f.ge_rel, ra), beta_raw)
        compare("fs-diamond", g.diamond, ra, delta_raw)
    else:
        rep.skipped.append("fs")
    return rep


@dataclass(frozen=True)
class Flag:
    """Truth value of a law; when false, ``witness`` is the first offending tuple
    of element names and ``witnesses`` lists all of them in canonical order.
    Composite flags name the failed component in ``cause``.
    """

    holds: bool
    witness: tuple | None = None
    witnesses: tuple = ()
    cause: str | None = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = list(self.witness)
            out["witnesses"] = [list(w) for w in self.witnesses]
        if self.cause is not None:
            out["cause"] = self.cause
        return out


FLAG_NAMES = ("GAO", "D1", "D2", "FS1", "FS2", "DGAO", "FSGAO", "FSDGAO", "BB", "DB", "WGAO", "BAO")


@dataclass(frozen=True)
class VarietyFlags:
    GAO: Flag
    D1: Flag
    D2: Flag
    FS1: Flag
    FS2: Flag
    DGAO: Flag
    FSGAO: Flag
    FSDGAO: Flag
    BB: Flag
    DB: Flag
    WGAO: Flag
    BAO: Flag

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in FLAG_NAMES}

    def holding(self) -> dict[str, bool]:
        return {k: getattr(self, k).holds for k in FLAG_NAMES}


def _flag(bad: np.ndarray, names) -> Flag:
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return Flag(True)
    ws = tuple(tuple(names[int(i)] for i in row) for row in hits)
    return Flag(False, ws[0], ws)


def _conj(*parts: tuple[str, Flag]) -> Flag:
    for label, fl in parts:
        if not fl.holds:
            return Flag(False, fl.witness, fl.witnesses, label if fl.cause is None else f"{label}.{fl.cause}")
    return Flag(True)


def classify(g: GAO) -> VarietyFlags:
    """Evaluate every variety flag by exhaustive quantification over elements.

    ``BAO`` means: every element is Boolean and diamond is the dual of box
    (``diamond(x) = neg box neg x``).
    """
    a = g.algebra
    names = a.names
    M, J, I, LE, NEG = a.M, a.J, a.I, a.LE, a.NEG
    B = np.array(g.box, dtype=np.int64)
    D = np.array(g.diamond, dtype=np.int64)
    m = a.size
    X = np.arange(m)[:, None]
    Y = np.arange(m)[None, :]
    rep = validate_gao(g)
    gao = Flag(True) if rep is None else Flag(False, rep.witness, (rep.witness,), rep.kind)
    d1 = _flag(~LE[B[J[X, Y]], J[B[X], D[Y]]], names)
    d2 = _flag(~LE[M[B[X], D[Y]], D[M[X, Y]]], names)
    fs1 = _flag(~LE[D[I[X, Y]], I[B[X], D[Y]]], names)
    fs2 = _flag(~LE[I[D[X], B[Y]], B[I[X, Y]]], names)
    bb = _flag((J[B, NEG[B]] != a.top)[:, None], names)
    db = _flag((J[D, NEG[D]] != a.top)[:, None], names)
    dgao = _conj(("GAO", gao), ("D1", d1), ("D2", d2))
    fsgao = _conj(("GAO", gao), ("FS1", fs1), ("FS2", fs2))
    fsdgao = _conj(("DGAO", dgao), ("FSGAO", fsgao))
    wgao = _conj(("DGAO", dgao), ("BB", bb), ("DB", db))
    boolean = _flag((J[np.arange(m), NEG] != a.top)[:, None], names)
    dual = _flag((D != NEG[B[NEG]])[:, None], names)
    bao = _conj(("GAO", gao), ("boolean", boolean), ("dual", dual))
    return VarietyFlags(gao, d1, d2, fs1, fs2, dgao, fsgao, fsdgao, bb, db, wgao, bao)


def axiom_batch(a: GodelAlgebra, B: np.ndarray, D: np.ndarray) -> dict[str, np.ndarray]:
    """Vectorised D1, D2, FS1, FS2, BB, DB over stacked operator tables.

    ``B`` and ``D`` have shape ``(N, m)``; each result is a boolean array of
    length ``N``. Operator axioms are not checked here.
    """
    M, J, I, LE, NEG = a.M, a.J, a.I, a.LE, a.NEG
    m = a.size
    X = np.arange(m)[None, :, None]
    Y = np.arange(m)[None, None, :]
    r = np.arange(len(B))[:, None, None]
    Bx, Dy = B[r, X], D[r, Y]
    out = {
        "D1": LE[B[r, J[X, Y]], J[Bx, Dy]].all(axis=(1, 2)),
        "D2": LE[M[Bx, Dy], D[r, M[X, Y]]].all(axis=(1, 2)),
        "FS1": LE[D[r, I[X, Y]], I[Bx, Dy]].all(axis=(1, 2)),
        "FS2": LE[I[D[r, X], B[r, Y]], B[r, I[X, Y]]].all(axis=(1, 2)),
        "BB": (J[B, NEG[B]] == a.top).all(axis=1),
        "DB": (J[D, NEG[D]] == a.top).all(axis=1),
    }
    return out


def boolean_image_check(g: GAO) -> bool:
    """True iff box and diamond send Boolean elements to Boolean elements."""
    bs = boolean_elements(g.algebra)
    return all(g.box[x] in bs and g.diamond[x] in bs for x in bs)


def box_preimage(g: GAO, mask: int) -> int:
    return sum(1 << x for x in range(g.algebra.size) if mask >> g.box[x] & 1)


def diamond_preimage(g: GAO, mask: int) -> int:
    return sum(1 << x for x in range(g.algebra.size) if mask >> g.diamond[x] & 1)


def preimage_checks(g: GAO) -> list[tuple[str, str]]:
    """Prime filters whose box-preimage is not a filter or diamond-preimage not a co-filter."""
    a = g.algebra
    bad = []
    for j in a.joinirr:
        f = a.up[j]
        if not is_filter(a, box_preimage(g, f)):
            bad.append(("box", a.names[j]))
        # an empty preimage (diamond never reaches f) is accepted as a degenerate co-filter
        pre = diamond_preimage(g, f)
        if pre and not is_cofilter(a, pre):
            bad.append(("diamond", a.names[j]))
    return bad


def gao_iso(g1: GAO, g2: GAO) -> tuple[int, ...] | None:
    """First algebra isomorphism that also commutes with both operators."""
    for h in algebra_isos(g1.algebra, g2.algebra):
        if all(h[g1.box[x]] == g2.box[h[x]] and h[g1.diamond[x]] == g2.diamond[h[x]] for x in range(len(h))):
            return h
    return None
