"""Exhaustive enumeration of forests, frames and GAOs, the theorem harness
and counterexample hunts.

Forests are generated from canonical rooted-tree codes, so each isomorphism
class appears once. Relations are generated row by row with fail-fast checks
on comparable node pairs. The GAOs over a forest are all pairs of distinct
box and diamond tables of its complex algebras; pairs are kept only when
their code is minimal under the forest's automorphisms.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterator

import numpy as np

from .algebra import GodelAlgebra, is_cofilter, is_filter, is_prime_filter
from .documents import emit
from .duality import (
    _downset_data,
    _preserves,
    downset_algebra,
    forest_automorphisms,
    point_map,
    spectrum,
    stone_indices,
    stone_map,
)
from .errors import BudgetError, PreconditionError, StructureError
from .frames import (
    OneRelFrame,
    TwoRelFrame,
    _complex_tables,
    _node_to_spectrum,
    _transformed,
    classify_one_rel,
    classify_two_rel,
    complex_one_rel_checks,
    dual_one_rel_roundtrip,
    one_rel_transform_checks,
)
from .modal import GAO, axiom_batch, beta_raw, delta_raw, induced_box, induced_diamond, induced_relations
from .order import Forest, Rel, bits, compose

__all__ = [
    "DEFAULT_LIMITS",
    "Deadline",
    "node_limit",
    "enum_forests",
    "relations",
    "enum_two_rel_frames",
    "enum_one_rel_frames",
    "GaoSpace",
    "gao_space",
    "enum_gaos",
    "THEOREMS",
    "theorem_names",
    "resolve_theorem",
    "verify_theorem",
    "PROPERTIES",
    "resolve_property",
    "find_counterexample",
]

DEFAULT_LIMITS = {"forest": 5, "frame": 4, "gao": 3}


def node_limit(kind: str, override: int | None = None) -> int:
    """Largest node count allowed for ``kind``; ``GF_MAX_NODES`` raises every limit."""
    if override is not None:
        return override
    env = os.environ.get("GF_MAX_NODES")
    if env:
        try:
            return int(env)
        except ValueError:
            raise BudgetError(f"GF_MAX_NODES must be an integer, got {env!r}") from None
    return DEFAULT_LIMITS[kind]


def _check_budget(n: int, kind: str, override: int | None):
    limit = node_limit(kind, override)
    if n > limit:
        raise BudgetError(f"{kind} search over {n} nodes exceeds the bound of {limit}")


class Deadline:
    """Wall-clock cap; ``check()`` raises BudgetError once ``seconds`` have passed."""

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetError(f"wall-clock cap of {self.seconds:g} s exceeded")


NO_DEADLINE = Deadline(None)


# ---------------------------------------------------------------- forests


@lru_cache(maxsize=None)
def _forest_codes(n: int) -> tuple:
    """Canonical codes of n-node forests: sorted tuples of tree codes.

    A tree code is the forest code of the children of its root.
    """
    if n == 0:
        return ((),)
    out = set()
    for k in range(1, n + 1):
        for sub in _forest_codes(k - 1):
            for rest in _forest_codes(n - k):
                out.add(tuple(sorted((sub,) + rest)))
    return tuple(sorted(out, key=_code_key))


def _code_size(code) -> int:
    return sum(1 + _code_size(t) for t in code)


def _code_key(code):
    # fewer trees first, then larger trees first, then lexicographic on children
    return (len(code), tuple(-_code_size(t) for t in reversed(code)), repr(code))


def _forest_from_code(code) -> Forest:
    parents: list = []

    def place(tree, parent):
        me = len(parents)
        parents.append(parent)
        for child in reversed(tree):
            place(child, me)

    for tree in reversed(code):
        place(tree, None)
    return Forest.from_parents(parents)


def enum_forests(n: int, max_nodes: int | None = None) -> list[Forest]:
    """All forests with exactly ``n`` nodes up to isomorphism, labelled in DFS preorder."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise StructureError("node count must be a non-negative integer")
    _check_budget(n, "forest", max_nodes)
    return [_forest_from_code(c) for c in _forest_codes(n)]


def _forests_upto(
    n_max: int, kind: str, max_nodes: int | None, lazy: bool = False
) -> Iterator[Forest]:
    """Forests with 1..n_max nodes; ``lazy`` defers the budget check until a size is reached."""
    if not lazy:
        _check_budget(n_max, kind, max_nodes)
    for n in range(1, n_max + 1):
        _check_budget(n, kind, max_nodes)
        yield from enum_forests(n, max_nodes=max(n, node_limit("forest", max_nodes)))


# ---------------------------------------------------------------- relations


@lru_cache(maxsize=256)
def _closures(f: Forest) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Down- and up-closure of every node mask."""
    size = 1 << f.n
    down = [0] * size
    up = [0] * size
    for m in range(1, size):
        low = m & -m
        x = low.bit_length() - 1
        down[m] = down[m ^ low] | f.down[x]
        up[m] = up[m ^ low] | f.up[x]
    return tuple(down), tuple(up)


# Row rules: a predicate on single rows (given the closures) and a predicate
# on the rows of comparable nodes ``lo <= hi``. Each pair rule is exactly the
# pointwise form of the corresponding relational inclusion.
_PAIR_RULES: dict[str, Callable] = {
    "M": lambda dc, uc, lo, hi: lo & ~hi == 0,
    "A": lambda dc, uc, lo, hi: hi & ~lo == 0,
    "OR1": lambda dc, uc, lo, hi: lo & ~hi == 0,
    "OR2": lambda dc, uc, lo, hi: hi & ~lo == 0,
    "P1": lambda dc, uc, lo, hi: lo & ~dc[hi] == 0,
    "P2": lambda dc, uc, lo, hi: hi & ~uc[lo] == 0,
    "CJ1": lambda dc, uc, lo, hi: hi & ~uc[lo] == 0,
    "CJ2": lambda dc, uc, lo, hi: lo & ~dc[hi] == 0,
    "W1": lambda dc, uc, lo, hi: hi & ~lo == 0,
    "W2": lambda dc, uc, lo, hi: lo & ~hi == 0,
}
_ROW_RULES: dict[str, Callable] = {
    "OR1": lambda dc, uc, row: dc[row] == row,
    "OR2": lambda dc, uc, row: uc[row] == row,
}

TWO_REL_CONSTRAINTS = {"forest": ("M", "A"), "OR": ("OR1", "OR2"), "P": ("P1", "P2")}
ONE_REL_RULES = {
    "CJ": ("CJ1", "CJ2"),
    "FS": ("CJ1",),
    "FSD": ("CJ1", "CJ2"),
    "W": ("W1", "W2"),
    "basic": (),
}


def _generate(f: Forest, rules: tuple[str, ...], deadline: Deadline) -> Iterator[Rel]:
    n = f.n
    dc, uc = _closures(f)
    pair = [_PAIR_RULES[r] for r in rules if r in _PAIR_RULES]
    rowr = [_ROW_RULES[r] for r in rules if r in _ROW_RULES]
    rows_ok = [m for m in range(1 << n) if all(p(dc, uc, m) for p in rowr)]
    # for node x: earlier nodes below it and above it
    below = [[y for y in range(x) if f.le(y, x)] for x in range(n)]
    above = [[y for y in range(x) if f.le(x, y)] for x in range(n)]
    rows = [0] * n

    def rec(x):
        if x == n:
            yield Rel(n, tuple(rows))
            return
        deadline.check()
        for m in rows_ok:
            if all(p(dc, uc, rows[y], m) for y in below[x] for p in pair) and all(
                p(dc, uc, m, rows[y]) for y in above[x] for p in pair
            ):
                rows[x] = m
                yield from rec(x + 1)

    yield from rec(0)


def relations(f: Forest, condition: str, deadline: Deadline = NO_DEADLINE) -> Iterator[Rel]:
    """Relations on ``f`` satisfying one named condition, in lexicographic row order.

    Two-relation conditions: M, A, OR1, OR2, P1, P2. One-relation classes:
    CJ, FS, FSD, W, basic (filtered through the full classifier).
    """
    if condition in _PAIR_RULES:
        yield from _generate(f, (condition,), deadline)
        return
    if condition not in ONE_REL_RULES:
        raise StructureError(f"unknown relation condition {condition!r}")
    for r in _generate(f, ONE_REL_RULES[condition], deadline):
        if classify_one_rel(OneRelFrame(f, r)).classes[condition].holds:
            yield r


def all_relations(f: Forest) -> Iterator[Rel]:
    for rows in itertools.product(range(1 << f.n), repeat=f.n):
        yield Rel(f.n, rows)


# ---------------------------------------------------------------- symmetry


def _node_perm_mask(sigma, mask: int) -> int:
    out = 0
    for x in bits(mask):
        out |= 1 << sigma[x]
    return out


def _permute_rel(sigma, r: Rel) -> Rel:
    rows = [0] * r.n
    for x, row in enumerate(r.rows):
        rows[sigma[x]] = _node_perm_mask(sigma, row)
    return Rel(r.n, tuple(rows))


@lru_cache(maxsize=256)
def _element_perms(f: Forest) -> tuple[tuple[int, ...], ...]:
    """Automorphisms of ``f`` acting on element indices of its downset algebra."""
    masks, pos = _downset_data(f)
    return tuple(
        tuple(pos[_node_perm_mask(s, m)] for m in masks) for s in forest_automorphisms(f)
    )


def _permute_table(pi, table) -> tuple[int, ...]:
    out = [0] * len(table)
    for i, v in enumerate(table):
        out[pi[i]] = pi[v]
    return tuple(out)


def _raw_tables(f: Forest, rb: Rel, rd: Rel) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    masks, pos = _downset_data(f)
    b = [pos.get(beta_raw(rb, a)) for a in masks]
    d = [pos.get(delta_raw(rd, a)) for a in masks]
    if None in b or None in d:
        return None
    return tuple(b), tuple(d)


# ---------------------------------------------------------------- frames


def enum_two_rel_frames(
    f: Forest,
    constraint: str = "forest",
    dedup: str = "none",
    max_nodes: int | None = None,
    deadline: Deadline = NO_DEADLINE,
) -> Iterator[TwoRelFrame]:
    """Frames ``(f, Rbox, Rdia)`` whose relations satisfy the constraint's conditions.

    ``dedup``: ``none``; ``gao`` keeps the first frame of each complex GAO up to
    automorphisms of ``f``; ``iso`` keeps the first frame of each isomorphism class.
    """
    if constraint not in TWO_REL_CONSTRAINTS:
        raise StructureError(f"unknown frame constraint {constraint!r}")
    if dedup not in ("none", "gao", "iso"):
        raise StructureError(f"unknown dedup mode {dedup!r}")
    _check_budget(f.n, "frame", max_nodes)
    cb, cd = TWO_REL_CONSTRAINTS[constraint]
    boxes = list(relations(f, cb, deadline))
    dias = list(relations(f, cd, deadline))
    autos = forest_automorphisms(f)
    perms = _element_perms(f)
    seen = set()
    for rb in boxes:
        for rd in dias:
            deadline.check()
            if dedup == "iso":
                key = min((_permute_rel(s, rb).rows, _permute_rel(s, rd).rows) for s in autos)
            elif dedup == "gao":
                tabs = _raw_tables(f, rb, rd)
                key = min((_permute_table(p, tabs[0]), _permute_table(p, tabs[1])) for p in perms)
            else:
                key = None
            if key is not None:
                if key in seen:
                    continue
                seen.add(key)
            yield TwoRelFrame(f, rb, rd)


def enum_one_rel_frames(
    f: Forest, cls: str, max_nodes: int | None = None, deadline: Deadline = NO_DEADLINE
) -> Iterator[OneRelFrame]:
    if cls not in ONE_REL_RULES:
        raise StructureError(f"unknown one-relation class {cls!r}")
    _check_budget(f.n, "frame", max_nodes)
    for r in relations(f, cls, deadline):
        yield OneRelFrame(f, r)


# ---------------------------------------------------------------- GAO space


class _Tables:
    """Distinct operator tables produced by a family of relations, sorted."""

    def __init__(self, f: Forest, rels: list[Rel], is_box: bool):
        masks, pos = _downset_data(f)
        raw = beta_raw if is_box else delta_raw
        by_table: dict[tuple, list[Rel]] = {}
        for r in rels:
            t = tuple(pos[raw(r, a)] for a in masks)
            by_table.setdefault(t, []).append(r)
        self.tables = sorted(by_table)
        self.uid = {t: i for i, t in enumerate(self.tables)}
        self.rels = [by_table[t] for t in self.tables]
        self.T = np.array(self.tables, dtype=np.int64).reshape(len(self.tables), len(masks))

    def __len__(self) -> int:
        return len(self.tables)


class GaoSpace:
    """Every complex GAO of a forest frame on ``forest``, up to isomorphism.

    ``box``/``dia`` hold the distinct tables; a GAO is a pair of table ids.
    """

    def __init__(self, forest: Forest, deadline: Deadline = NO_DEADLINE):
        self.forest = forest
        self.algebra: GodelAlgebra = downset_algebra(forest)
        self.deadline = deadline
        self.box = _Tables(forest, list(relations(forest, "M", deadline)), True)
        self.dia = _Tables(forest, list(relations(forest, "A", deadline)), False)
        perms = _element_perms(forest)
        self.box_perm = np.array(
            [[self.box.uid[_permute_table(p, t)] for t in self.box.tables] for p in perms], dtype=np.int64
        ).reshape(len(perms), len(self.box))
        self.dia_perm = np.array(
            [[self.dia.uid[_permute_table(p, t)] for t in self.dia.tables] for p in perms], dtype=np.int64
        ).reshape(len(perms), len(self.dia))

    def blocks(self, target: int = 1 << 20) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Canonical pairs ``(I, J)`` in increasing ``(box id, diamond id)`` order."""
        nb, nd = len(self.box), len(self.dia)
        step = max(1, target // max(nd, 1))
        J0 = np.arange(nd, dtype=np.int64)
        for start in range(0, nb, step):
            self.deadline.check()
            ib = np.arange(start, min(nb, start + step), dtype=np.int64)
            I = np.repeat(ib, nd)
            J = np.tile(J0, len(ib))
            keep = np.ones(len(I), dtype=bool)
            for pb, pd in zip(self.box_perm, self.dia_perm):
                bi, dj = pb[I], pd[J]
                keep &= (bi > I) | ((bi == I) & (dj >= J))
            yield I[keep], J[keep]

    def pairs(self) -> tuple[np.ndarray, np.ndarray]:
        parts = list(self.blocks())
        if not parts:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])

    def count(self) -> int:
        return sum(len(i) for i, _ in self.blocks())

    def gao(self, i: int, j: int) -> GAO:
        return GAO(self.algebra, self.box.tables[int(i)], self.dia.tables[int(j)])

    def frame(self, i: int, j: int) -> TwoRelFrame:
        """First generated frame whose complex GAO is the pair ``(i, j)``."""
        return TwoRelFrame(self.forest, self.box.rels[int(i)][0], self.dia.rels[int(j)][0])

    def flags(self, I: np.ndarray, J: np.ndarray) -> dict[str, np.ndarray]:
        out = axiom_batch(self.algebra, self.box.T[I], self.dia.T[J])
        out["DGAO"] = out["D1"] & out["D2"]
        out["FSGAO"] = out["FS1"] & out["FS2"]
        out["FSDGAO"] = out["DGAO"] & out["FSGAO"]
        out["WGAO"] = out["DGAO"] & out["BB"] & out["DB"]
        return out

    # per-table data on the spectrum of the algebra

    @cached_property
    def spectrum(self) -> Forest:
        return spectrum(self.algebra)

    @cached_property
    def stone(self) -> tuple[int, ...]:
        return stone_map(self.algebra)

    @cached_property
    def point(self) -> list[int]:
        return _node_to_spectrum(self.forest, self.algebra)

    @cached_property
    def box_induced(self) -> list[Rel]:
        return [induced_box(self.algebra, t) for t in self.box.tables]

    @cached_property
    def dia_induced(self) -> list[Rel]:
        return [induced_diamond(self.algebra, t) for t in self.dia.tables]

    def _per_table(self, tables, fn) -> np.ndarray:
        return np.array([fn(u, t) for u, t in enumerate(tables)], dtype=bool)

    @cached_property
    def box_represented(self) -> np.ndarray:
        r = self.stone
        return self._per_table(
            self.box.tables,
            lambda u, t: all(r[t[x]] == beta_raw(self.box_induced[u], r[x]) for x in range(len(t))),
        )

    @cached_property
    def dia_represented(self) -> np.ndarray:
        r = self.stone
        return self._per_table(
            self.dia.tables,
            lambda u, t: all(r[t[x]] == delta_raw(self.dia_induced[u], r[x]) for x in range(len(t))),
        )

    @cached_property
    def booleans(self) -> frozenset[int]:
        a = self.algebra
        return frozenset(x for x in range(a.size) if a.join[x][a.neg(x)] == a.top)

    @cached_property
    def box_keeps_boolean(self) -> np.ndarray:
        bs = self.booleans
        return self._per_table(self.box.tables, lambda u, t: all(t[x] in bs for x in bs))

    @cached_property
    def dia_keeps_boolean(self) -> np.ndarray:
        bs = self.booleans
        return self._per_table(self.dia.tables, lambda u, t: all(t[x] in bs for x in bs))

    def _preimage(self, t, f: int) -> int:
        return sum(1 << x for x in range(len(t)) if f >> t[x] & 1)

    @cached_property
    def box_preimage_ok(self) -> np.ndarray:
        a = self.algebra
        return self._per_table(
            self.box.tables,
            lambda u, t: all(is_filter(a, self._preimage(t, a.up[j])) for j in a.joinirr),
        )

    @cached_property
    def dia_preimage_ok(self) -> np.ndarray:
        a = self.algebra

        def ok(u, t):
            for j in a.joinirr:
                pre = self._preimage(t, a.up[j])
                # an empty preimage counts as a degenerate co-filter
                if pre and not is_cofilter(a, pre):
                    return False
            return True

        return self._per_table(self.dia.tables, ok)

    @cached_property
    def box_axioms_ok(self) -> np.ndarray:
        a = self.algebra
        M, top = a.M, a.top
        T = self.box.T
        return (T[:, top] == top) & (T[:, M] == M[T[:, :, None], T[:, None, :]]).all(axis=(1, 2))

    @cached_property
    def dia_axioms_ok(self) -> np.ndarray:
        a = self.algebra
        J, bot = a.J, a.bot
        T = self.dia.T
        return (T[:, bot] == bot) & (T[:, J] == J[T[:, :, None], T[:, None, :]]).all(axis=(1, 2))


@lru_cache(maxsize=64)
def _space(f: Forest) -> GaoSpace:
    return GaoSpace(f)


def gao_space(f: Forest, deadline: Deadline | None = None) -> GaoSpace:
    if deadline is None or deadline.seconds is None:
        return _space(f)
    return GaoSpace(f, deadline)


def enum_gaos(
    n_max: int, max_nodes: int | None = None, deadline: Deadline = NO_DEADLINE
) -> Iterator[GAO]:
    """Every finite GAO whose algebra has at most ``n_max`` prime filters, up to isomorphism."""
    for f in _forests_upto(n_max, "gao", max_nodes):
        sp = gao_space(f, deadline)
        for I, J in sp.blocks():
            for i, j in zip(I.tolist(), J.tolist()):
                yield sp.gao(i, j)


# ---------------------------------------------------------------- theorem harness


@dataclass
class Tally:
    instances: int = 0
    failures: int = 0
    counterexample: dict | None = None
    detail: object = None

    def add(self, count: int = 1):
        self.instances += count

    def fail(self, obj, detail=None, count: int = 1):
        self.failures += count
        if self.counterexample is None:
            self.counterexample = emit(obj)
            self.detail = detail


@dataclass(frozen=True)
class Theorem:
    name: str
    aliases: tuple
    statement: str
    unit: str
    scope: str  # which node budget applies: "gao" or "frame"
    run: Callable


THEOREMS: dict[str, Theorem] = {}


def _theorem(name, aliases, statement, unit, scope="gao"):
    def deco(fn):
        THEOREMS[name] = Theorem(name, tuple(aliases), statement, unit, scope, fn)
        return fn

    return deco


def _gao_blocks(ctx) -> Iterator[tuple[GaoSpace, np.ndarray, np.ndarray]]:
    for f in ctx.forests():
        sp = gao_space(f, ctx.deadline)
        for I, J in sp.blocks():
            yield sp, I, J


def _vector_check(tally: Tally, sp: GaoSpace, I, J, applies, ok, detail=None):
    applies = np.asarray(applies, dtype=bool)
    bad = applies & ~np.asarray(ok, dtype=bool)
    tally.add(int(applies.sum()))
    nbad = int(bad.sum())
    if nbad:
        k = int(np.argmax(bad))
        d = detail(int(I[k]), int(J[k])) if callable(detail) else detail
        tally.fail(sp.gao(I[k], J[k]), d, nbad)


def _pair_check(tally: Tally, sp: GaoSpace, I, J, applies, fn):
    """Python-level check on each applicable pair; ``fn`` returns None or a failure detail."""
    idx = np.flatnonzero(applies)
    tally.add(len(idx))
    for k in idx.tolist():
        res = fn(int(I[k]), int(J[k]))
        if res is not None:
            tally.fail(sp.gao(I[k], J[k]), res)


@_theorem(
    "representation",
    ["thm:isoBox", "isoBox"],
    "the Stone map is an isomorphism onto the complex algebra of the induced frame",
    "GAOs",
)
def _t_representation(ctx, t: Tally):
    stone_ok = {}
    for sp, I, J in _gao_blocks(ctx):
        f = sp.forest
        if f not in stone_ok:
            a = sp.algebra
            stone_ok[f] = _preserves(a, downset_algebra(spectrum(a)), stone_indices(a))
        ok = stone_ok[f] & sp.box_represented[I] & sp.dia_represented[J]
        _vector_check(
            t, sp, I, J, np.ones(len(I), bool), ok,
            lambda i, j: {"box": bool(sp.box_represented[i]), "diamond": bool(sp.dia_represented[j])},
        )


def _beta_rel_check(sp: GaoSpace, box, dia, rb: Rel, rd: Rel):
    r = sp.stone
    for x in range(len(box)):
        if r[box[x]] != beta_raw(rb, r[x]):
            return {"operator": "box", "element": sp.algebra.names[x]}
        if r[dia[x]] != delta_raw(rd, r[x]):
            return {"operator": "diamond", "element": sp.algebra.names[x]}
    return None


@_theorem(
    "single-relation-representation",
    ["thm:isoDUNN", "isoDUNN"],
    "for Dunn GAOs both operators are recovered from R_box & R_dia alone",
    "Dunn GAOs",
)
def _t_single(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)

        def one(i, j):
            ra = sp.box_induced[i] & sp.dia_induced[j]
            return _beta_rel_check(sp, sp.box.tables[i], sp.dia.tables[j], ra, ra)

        _pair_check(t, sp, I, J, fl["DGAO"], one)


@_theorem(
    "fs-representation",
    ["thm:FSrep", "FSrep"],
    "for Fischer Servi GAOs box is recovered from >= o R and diamond from R, R = R_box & R_dia",
    "Fischer Servi GAOs",
)
def _t_fsrep(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        ge = sp.spectrum.ge_rel

        def one(i, j):
            ra = sp.box_induced[i] & sp.dia_induced[j]
            return _beta_rel_check(sp, sp.box.tables[i], sp.dia.tables[j], compose(ge, ra), ra)

        _pair_check(t, sp, I, J, fl["FSGAO"], one)


@_theorem(
    "axioms-vs-relations",
    ["thm:CJteo", "CJteo"],
    "D1 iff R_box = R o >=; D2 iff R_dia = R o <=; FS2 iff R_box = >= o R (R = R_box & R_dia)",
    "GAOs",
)
def _t_cjteo(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        sf = sp.spectrum
        ge, le = sf.ge_rel, sf.le_rel
        d1, d2, fs2 = fl["D1"].tolist(), fl["D2"].tolist(), fl["FS2"].tolist()

        def one(k):
            i, j = int(I[k]), int(J[k])
            rb, rd = sp.box_induced[i], sp.dia_induced[j]
            ra = rb & rd
            got = {"D1": rb == compose(ra, ge), "D2": rd == compose(ra, le), "FS2": rb == compose(ge, ra)}
            want = {"D1": d1[k], "D2": d2[k], "FS2": fs2[k]}
            if got != want:
                return {"relations": got, "axioms": want}
            return None

        t.add(len(I))
        for k in range(len(I)):
            res = one(k)
            if res is not None:
                t.fail(sp.gao(I[k], J[k]), res)


@_theorem(
    "frame-side-axioms",
    ["thm:keyD1", "keyD1"],
    "with Rb' = Rbox o >=, Rd' = Rdia o <=, R' = Rb' & Rd': D1 iff Rb' = R' o >=, "
    "D2 iff Rd' = R' o <=, FS2 iff Rb' = >= o R'",
    "frames (one per complex GAO)",
)
def _t_keyd1(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        f = sp.forest
        ge, le = f.ge_rel, f.le_rel
        bprime = [compose(rs[0], ge) for rs in sp.box.rels]
        dprime = [compose(rs[0], le) for rs in sp.dia.rels]
        d1, d2, fs2 = fl["D1"].tolist(), fl["D2"].tolist(), fl["FS2"].tolist()
        t.add(len(I))
        for k in range(len(I)):
            i, j = int(I[k]), int(J[k])
            rb, rd = bprime[i], dprime[j]
            rp = rb & rd
            got = {"D1": rb == compose(rp, ge), "D2": rd == compose(rp, le), "FS2": rb == compose(ge, rp)}
            want = {"D1": d1[k], "D2": d2[k], "FS2": fs2[k]}
            if got != want:
                t.fail(sp.frame(i, j), {"frame_side": got, "algebra_side": want})


@_theorem("d2-iff-fs1", ["prop:D2-FS2", "D2-FS2"], "a GAO satisfies D2 iff it satisfies FS1", "GAOs")
def _t_d2fs1(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        _vector_check(
            t, sp, I, J, np.ones(len(I), bool), fl["D2"] == fl["FS1"],
            lambda i, j: {"D2": bool(sp.flags(np.array([i]), np.array([j]))["D2"][0])},
        )


@_theorem(
    "preimage-filters",
    ["prop:basic"],
    "box-preimages of prime filters are filters; diamond-preimages are co-filters",
    "GAOs",
)
def _t_preimage(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        _vector_check(
            t, sp, I, J, np.ones(len(I), bool), sp.box_preimage_ok[I] & sp.dia_preimage_ok[J],
            lambda i, j: {"box": bool(sp.box_preimage_ok[i]), "diamond": bool(sp.dia_preimage_ok[j])},
        )


@_theorem(
    "induced-relation-closure",
    ["lemma:MA", "lemmaMA"],
    "the induced box relation is inherited upward and the diamond relation downward",
    "GAOs",
)
def _t_ma(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        sf = sp.spectrum
        bok = np.array([compose(sf.ge_rel, r) <= r for r in sp.box_induced], dtype=bool)
        dok = np.array([compose(sf.le_rel, r) <= r for r in sp.dia_induced], dtype=bool)
        _vector_check(t, sp, I, J, np.ones(len(I), bool), bok[I] & dok[J])


@_theorem(
    "wgao-gives-w-frame",
    ["thm:W2", "W2"],
    "the single relation of a W-GAO is inherited both upward and downward",
    "W-GAOs",
)
def _t_w2(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        sf = sp.spectrum

        def one(i, j):
            ra = sp.box_induced[i] & sp.dia_induced[j]
            flags = classify_one_rel(OneRelFrame(sf, ra)).classes["W"]
            return None if flags.holds else {"cause": flags.cause, "witness": flags.witness}

        _pair_check(t, sp, I, J, fl["WGAO"], one)


@_theorem(
    "dunn-preserves-boolean",
    ["prop:bool", "bool"],
    "in a Dunn GAO box and diamond send Boolean elements to Boolean elements",
    "Dunn GAOs",
)
def _t_bool(ctx, t: Tally):
    for sp, I, J in _gao_blocks(ctx):
        fl = sp.flags(I, J)
        _vector_check(
            t, sp, I, J, fl["DGAO"], sp.box_keeps_boolean[I] & sp.dia_keeps_boolean[J],
            lambda i, j: {"box": bool(sp.box_keeps_boolean[i]), "diamond": bool(sp.dia_keeps_boolean[j])},
        )


# relation-level statements about frames


def _lone_box(f: Forest, r: Rel) -> TwoRelFrame:
    return TwoRelFrame(f, r, Rel(f.n, (0,) * f.n))


def _lone_dia(f: Forest, r: Rel) -> TwoRelFrame:
    return TwoRelFrame(f, Rel(f.n, (0,) * f.n), r)


def _downset_list(f: Forest):
    return _downset_data(f)[0]


@_theorem(
    "prime-transform-same-operators",
    ["lemma:diamond", "diamond"],
    "beta over Rbox equals beta over Rbox o >=, delta over Rdia equals delta over Rdia o <=",
    "relations",
    "frame",
)
def _t_diamond(ctx, t: Tally):
    for f in ctx.forests():
        ds = _downset_list(f)
        for r in relations(f, "M", ctx.deadline):
            t.add()
            rp = compose(r, f.ge_rel)
            bad = [a for a in ds if beta_raw(r, a) != beta_raw(rp, a)]
            if bad:
                t.fail(_lone_box(f, r), {"downset": f.format_set(bad[0])})
        for r in relations(f, "A", ctx.deadline):
            t.add()
            rp = compose(r, f.le_rel)
            bad = [a for a in ds if delta_raw(r, a) != delta_raw(rp, a)]
            if bad:
                t.fail(_lone_dia(f, r), {"downset": f.format_set(bad[0])})


@_theorem(
    "prime-transform-or-frame",
    ["prop:Rprime", "Rprime"],
    "Rbox o >= and Rdia o <= form an OR-frame with rows the down/up closures of the old rows",
    "relations",
    "frame",
)
def _t_rprime(ctx, t: Tally):
    for f in ctx.forests():
        dc, uc = _closures(f)
        ge, le = f.ge_rel, f.le_rel
        for r in relations(f, "M", ctx.deadline):
            t.add()
            rp = compose(r, ge)
            checks = {
                "rows": all(rp.rows[x] == dc[r.rows[x]] for x in range(f.n)),
                "M": compose(ge, rp) <= rp,
                "closed": compose(compose(ge, rp), ge) == rp,
            }
            if not all(checks.values()):
                t.fail(_lone_box(f, r), checks)
        for r in relations(f, "A", ctx.deadline):
            t.add()
            rp = compose(r, le)
            checks = {
                "rows": all(rp.rows[x] == uc[r.rows[x]] for x in range(f.n)),
                "A": compose(le, rp) <= rp,
                "closed": compose(compose(le, rp), le) == rp,
            }
            if not all(checks.values()):
                t.fail(_lone_dia(f, r), checks)


@_theorem(
    "second-transform",
    ["prop:second", "second"],
    ">= o Rbox and <= o Rdia of a P-frame form a forest frame with the same operators",
    "relations",
    "frame",
)
def _t_second(ctx, t: Tally):
    for f in ctx.forests():
        ds = _downset_list(f)
        ge, le = f.ge_rel, f.le_rel
        for r in relations(f, "P1", ctx.deadline):
            t.add()
            rs = compose(ge, r)
            checks = {
                "M": compose(ge, rs) <= rs,
                "same box": all(beta_raw(r, a) == beta_raw(rs, a) for a in ds),
            }
            if not all(checks.values()):
                t.fail(_lone_box(f, r), checks)
        for r in relations(f, "P2", ctx.deadline):
            t.add()
            rs = compose(le, r)
            checks = {
                "A": compose(le, rs) <= rs,
                "same diamond": all(delta_raw(r, a) == delta_raw(rs, a) for a in ds),
            }
            if not all(checks.values()):
                t.fail(_lone_dia(f, r), checks)


@_theorem(
    "forest-frames-are-p-frames",
    ["prop:forest-P"],
    "a relation inherited upward satisfies P1; one inherited downward satisfies P2",
    "relations",
    "frame",
)
def _t_forest_p(ctx, t: Tally):
    for f in ctx.forests():
        ge, le = f.ge_rel, f.le_rel
        for r in relations(f, "M", ctx.deadline):
            t.add()
            if not compose(ge, r) <= compose(r, ge):
                t.fail(_lone_box(f, r), "P1")
        for r in relations(f, "A", ctx.deadline):
            t.add()
            if not compose(le, r) <= compose(r, le):
                t.fail(_lone_dia(f, r), "P2")


@_theorem(
    "point-map-transfer",
    ["lemma:key", "key"],
    "x R y implies k(x) R_G k(y) for the induced relations of the complex algebra; "
    "the converse holds when R is closed under o >= (box) or o <= (diamond)",
    "relations",
)
def _t_key(ctx, t: Tally):
    for f in ctx.forests():
        sp = gao_space(f, ctx.deadline)
        k = sp.point
        for tabs, induced, close in (
            (sp.box, sp.box_induced, f.ge_rel),
            (sp.dia, sp.dia_induced, f.le_rel),
        ):
            lone = _lone_box if tabs is sp.box else _lone_dia
            for u, rels in enumerate(tabs.rels):
                g = induced[u]
                for r in rels:
                    t.add()
                    fwd = all((k[x], k[y]) in g for x, y in r.pairs)
                    back = True
                    if compose(r, close) == r:
                        back = all(((x, y) in r) == ((k[x], k[y]) in g) for x in range(f.n) for y in range(f.n))
                    if not (fwd and back):
                        t.fail(lone(f, r), {"forward": fwd, "converse": back})


@_theorem(
    "stone-isomorphism",
    ["lemma:lemma1", "lemma1"],
    "a finite Goedel algebra is isomorphic to the downsets of its prime filters via the Stone map",
    "algebras",
    "frame",
)
def _t_stone(ctx, t: Tally):
    for f in ctx.forests():
        a = downset_algebra(f)
        t.add()
        if not _preserves(a, downset_algebra(spectrum(a)), stone_indices(a)):
            t.fail(a, "stone map is not an isomorphism")


@_theorem(
    "point-map-bijection",
    ["lemma:bijective", "bijective"],
    "x -> {downsets containing x} is an order isomorphism onto the prime filters (reverse inclusion)",
    "forests",
    "frame",
)
def _t_bijective(ctx, t: Tally):
    for f in ctx.forests():
        t.add()
        a = downset_algebra(f)
        k = point_map(f)
        primes = {a.up[j] for j in a.joinirr}
        ok = (
            all(is_prime_filter(a, m) for m in k)
            and set(k) == primes
            and len(set(k)) == f.n
            and all(
                f.le(x, y) == (k[x] & k[y] == k[y]) for x in range(f.n) for y in range(f.n)
            )
        )
        if not ok:
            t.fail(f, "point map is not an order isomorphism onto the prime filters")


def _reformulation(ctx, t: Tally, pairs):
    for f in ctx.forests():
        ge, le = f.ge_rel, f.le_rel
        for r in all_relations(f):
            ctx.deadline.check()
            t.add()
            for label, lhs, rhs in pairs(ge, le, r):
                if lhs != rhs:
                    t.fail(OneRelFrame(f, r), label)
                    break


@_theorem(
    "fs1-reformulation",
    ["lemma:newxx", "newxx"],
    "FS1 iff <= o R o <= = R o <=; FS2 iff >= o R o >= = >= o R",
    "relations",
    "frame",
)
def _t_newxx(ctx, t: Tally):
    _reformulation(
        ctx,
        t,
        lambda ge, le, r: [
            ("FS1", compose(le, r) <= compose(r, le), compose(compose(le, r), le) == compose(r, le)),
            ("FS2", compose(r, ge) <= compose(ge, r), compose(compose(ge, r), ge) == compose(ge, r)),
        ],
    )


@_theorem(
    "cj-reformulation",
    ["lemma:CJcond", "CJcond"],
    "CJ1 iff <= o R o <= = R o <=; CJ2 iff >= o R o >= = R o >=",
    "relations",
    "frame",
)
def _t_cjcond(ctx, t: Tally):
    _reformulation(
        ctx,
        t,
        lambda ge, le, r: [
            ("CJ1", compose(le, r) <= compose(r, le), compose(compose(le, r), le) == compose(r, le)),
            ("CJ2", compose(ge, r) <= compose(r, ge), compose(compose(ge, r), ge) == compose(r, ge)),
        ],
    )


# one-relation frames


def _over_one_rel(ctx, t: Tally, cls: str, fn):
    for f in ctx.forests():
        for fr in enum_one_rel_frames(f, cls, max_nodes=ctx.max_nodes, deadline=ctx.deadline):
            t.add()
            res = fn(fr)
            if res is not None:
                t.fail(fr, res)


def _transform_failures(fr, cls):
    _, checks = one_rel_transform_checks(fr, cls)
    failed = [k for k, v in checks.items() if not v]
    return failed or None


def _roundtrip_failure(fr: OneRelFrame, cls: str):
    rep = dual_one_rel_roundtrip(fr, cls)
    g = _complex_tables(fr, cls)
    _, _, ra = induced_relations(g)
    back = classify_one_rel(OneRelFrame(spectrum(g.algebra), ra)).classes[cls]
    if rep.ok and back.holds:
        return None
    return {
        "isomorphic": rep.ok,
        "recovered_in_class": back.holds,
        "expected": [list(p) for p in rep.target],
        "recovered": [list(p) for p in rep.recovered],
    }


@_theorem(
    "fs-roundtrip",
    ["prop:FSP1", "FSP1"],
    "an FS frame is isomorphic to the single-relation frame of its complex GAO, which is again FS",
    "FS frames",
    "frame",
)
def _t_fsp1(ctx, t):
    _over_one_rel(ctx, t, "FS", lambda fr: _roundtrip_failure(fr, "FS"))


@_theorem(
    "fs-transform",
    ["prop:FSP2", "FSP2"],
    "R' = (>= o R) & (R o <=) is FS, keeps >= o R and R o <=, and gives the same operators",
    "FS frames",
    "frame",
)
def _t_fsp2(ctx, t):
    _over_one_rel(ctx, t, "FS", lambda fr: _transform_failures(fr, "FS"))


@_theorem(
    "cj-roundtrip",
    ["prop:CJP1", "CJP1"],
    "the single-relation frame of a CJ frame's complex GAO is CJ and isomorphic to (X, R')",
    "CJ frames",
    "frame",
)
def _t_cjp1(ctx, t):
    _over_one_rel(ctx, t, "CJ", lambda fr: _roundtrip_failure(fr, "CJ"))


@_theorem(
    "cj-transform",
    ["prop:CJP2", "CJP2"],
    "R' = (R o >=) & (R o <=) is CJ and FS2, keeps R o >= and R o <=, and gives the same operators",
    "CJ frames",
    "frame",
)
def _t_cjp2(ctx, t):
    _over_one_rel(ctx, t, "CJ", lambda fr: _transform_failures(fr, "CJ"))


@_theorem(
    "fsd-roundtrip",
    ["prop:FSDP1", "FSDP1"],
    "an FSD frame is isomorphic to the single-relation frame of its complex GAO, which is again FSD",
    "FSD frames",
    "frame",
)
def _t_fsdp1(ctx, t):
    _over_one_rel(ctx, t, "FSD", lambda fr: _roundtrip_failure(fr, "FSD"))


@_theorem(
    "fsd-transform",
    ["prop:FSDP2", "FSDP2"],
    "R' = (>= o R) & (R o <=) is FSD, keeps >= o R and R o <=, and gives the same operators",
    "FSD frames",
    "frame",
)
def _t_fsdp2(ctx, t):
    _over_one_rel(ctx, t, "FSD", lambda fr: _transform_failures(fr, "FSD"))


@_theorem(
    "w-frames-give-wgao",
    ["thm:W1", "W1"],
    "the complex algebra of a W frame is a W-GAO",
    "W frames",
    "frame",
)
def _t_w1(ctx, t):
    def one(fr):
        _, checks = complex_one_rel_checks(fr, "W")
        failed = [k for k, v in checks.items() if v is False]
        return failed or None

    _over_one_rel(ctx, t, "W", one)


@_theorem(
    "w-prime-transform",
    ["rem:CJW", "remCJW"],
    "R o >= of a W frame is both a W frame and an FS frame",
    "W frames",
    "frame",
)
def _t_cjw(ctx, t):
    _over_one_rel(ctx, t, "W", lambda fr: _transform_failures(fr, "W"))


def theorem_names() -> list[str]:
    return list(THEOREMS)


def resolve_theorem(tag: str) -> Theorem:
    if tag in THEOREMS:
        return THEOREMS[tag]
    for th in THEOREMS.values():
        if tag in th.aliases:
            return th
    raise KeyError(tag)


@dataclass
class _Context:
    n_max: int
    kind: str
    max_nodes: int | None
    deadline: Deadline
    lazy: bool = False

    def forests(self) -> Iterator[Forest]:
        return _forests_upto(self.n_max, self.kind, self.max_nodes, self.lazy)


def verify_theorem(
    tag: str, n_max: int, max_nodes: int | None = None, seconds: float | None = None
) -> dict:
    """Check one catalogued statement on every instance with at most ``n_max`` nodes.

    Raises KeyError for an unknown tag and BudgetError past the node bound or time cap.
    """
    th = resolve_theorem(tag)
    if n_max < 1:
        raise StructureError("n_max must be at least 1")
    ctx = _Context(n_max, th.scope, max_nodes, Deadline(seconds))
    _check_budget(n_max, th.scope, max_nodes)
    t = Tally()
    start = time.monotonic()
    th.run(ctx, t)
    return {
        "theorem": th.name,
        "aliases": list(th.aliases),
        "statement": th.statement,
        "n_max": n_max,
        "unit": th.unit,
        "instances": t.instances,
        "passed": t.failures == 0,
        "failures": t.failures,
        "counterexample": t.counterexample,
        "detail": t.detail,
        "seconds": round(time.monotonic() - start, 3),
    }


# ---------------------------------------------------------------- hunts


def _hunt_gaos(premise: str, conclusion: str):
    def run(ctx):
        searched = 0
        for f in ctx.forests():
            sp = gao_space(f, ctx.deadline)
            for I, J in sp.blocks():
                fl = sp.flags(I, J)
                bad = fl[premise] & ~fl[conclusion]
                if bad.any():
                    k = int(np.argmax(bad))
                    return searched + k + 1, f.n, sp.gao(I[k], J[k])
                searched += len(I)
        return searched, None, None

    return run


def _hunt_complex_valid(ctx):
    searched = 0
    for f in ctx.forests():
        sp = gao_space(f, ctx.deadline)
        for I, J in sp.blocks():
            bad = ~(sp.box_axioms_ok[I] & sp.dia_axioms_ok[J])
            if bad.any():
                k = int(np.argmax(bad))
                return searched + k + 1, f.n, sp.gao(I[k], J[k])
            searched += len(I)
    return searched, None, None


def _hunt_frames(constraint: str, target: str):
    def run(ctx):
        searched = 0
        for f in ctx.forests():
            for fr in enum_two_rel_frames(f, constraint, max_nodes=ctx.max_nodes, deadline=ctx.deadline):
                searched += 1
                if not classify_two_rel(fr).classes[target].holds:
                    return searched, f.n, fr
        return searched, None, None

    return run


PROPERTIES: dict[str, tuple[str, Callable]] = {
    "DGAO=>FSGAO": ("gao", _hunt_gaos("DGAO", "FSGAO")),
    "FSGAO=>DGAO": ("gao", _hunt_gaos("FSGAO", "DGAO")),
    "FSDGAO=>WGAO": ("gao", _hunt_gaos("FSDGAO", "WGAO")),
    "WGAO=>FSGAO": ("gao", _hunt_gaos("WGAO", "FSGAO")),
    "complex-GAO-valid": ("gao", _hunt_complex_valid),
    "forest=>OR": ("frame", _hunt_frames("forest", "OR")),
    "P=>forest": ("frame", _hunt_frames("P", "forest")),
}


def resolve_property(name: str) -> str:
    key = name.replace(" ", "").replace("⟹", "=>").replace("->", "=>")
    key = key.replace("forest-frame", "forest")
    for k in PROPERTIES:
        if k.lower() == key.lower():
            return k
    if key.lower() in ("gaoaxiomsholdforcomplex_gaooutputs", "complex-gao-valid", "complexgaovalid"):
        return "complex-GAO-valid"
    raise KeyError(name)


def find_counterexample(
    prop: str, n_max: int, max_nodes: int | None = None, seconds: float | None = None
) -> dict:
    """First failing instance in canonical order, or an exhausted marker with the count searched."""
    key = resolve_property(prop)
    kind, run = PROPERTIES[key]
    # a hunt only needs the budget for the sizes it actually reaches
    ctx = _Context(n_max, kind, max_nodes, Deadline(seconds), lazy=True)
    searched, nodes, witness = run(ctx)
    if witness is None:
        return {"property": key, "n_max": n_max, "found": False, "exhausted": True, "searched": searched}
    return {
        "property": key,
        "n_max": n_max,
        "found": True,
        "exhausted": False,
        "searched": searched,
        "nodes": nodes,
        "witness": emit(witness),
    }
