"""Finite Gödel duality between algebras and forests, plus isomorphism search."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import GodelAlgebra
from .errors import InvariantError, StructureError
from .order import Forest, Poset, Rel, bits, downset_masks, is_forest

__all__ = [
    "spectrum",
    "downset_algebra",
    "downset_elements",
    "stone_map",
    "stone_indices",
    "point_map",
    "algebra_iso",
    "algebra_isos",
    "frame_iso",
    "forest_automorphisms",
]


def spectrum(alg: GodelAlgebra) -> Forest:
    """Forest of prime filters; node ``i`` is the filter generated by ``alg.joinirr[i]``.

    The order is the algebra order restricted to join-irreducibles, which is
    reverse inclusion of the generated filters.
    """
    return _spectrum(alg)


@lru_cache(maxsize=4096)
def _spectrum(alg: GodelAlgebra) -> Forest:
    js = alg.joinirr
    pairs = frozenset((a, b) for a, ja in enumerate(js) for b, jb in enumerate(js) if alg.le(ja, jb))
    p = Poset(len(js), pairs, tuple(alg.names[j] for j in js))
    if not is_forest(p):
        raise InvariantError("prime filters do not form a forest; input is not a Gödel algebra")
    return Forest(p.n, p.leq, p.labels)


def downset_elements(f: Forest) -> tuple[int, ...]:
    """Masks of the downset algebra's elements, index-aligned with ``downset_algebra(f)``."""
    return _downset_data(f)[0]


@lru_cache(maxsize=4096)
def _downset_data(f: Forest):
    masks = tuple(downset_masks(f))
    pos = {m: i for i, m in enumerate(masks)}
    return masks, pos


def downset_index(f: Forest, mask: int) -> int:
    try:
        return _downset_data(f)[1][mask]
    except KeyError:
        raise StructureError(f"{f.format_set(mask)} is not a downset") from None


def downset_algebra(f: Forest) -> GodelAlgebra:
    """Algebra of downsets: intersection, union, ``x -> y = F minus up(x minus y)``."""
    return _downset_algebra(f)


@lru_cache(maxsize=4096)
def _downset_algebra(f: Forest) -> GodelAlgebra:
    masks, pos = _downset_data(f)
    full = f.full_mask
    k = len(masks)
    up = f.up
    meet = [[pos[a & b] for b in masks] for a in masks]
    join = [[pos[a | b] for b in masks] for a in masks]
    impl = []
    for a in masks:
        row = []
        for b in masks:
            diff = a & ~b
            u = 0
            for x in bits(diff):
                u |= up[x]
            row.append(pos[full & ~u])
        impl.append(row)
    names = [f.format_set(m) for m in masks]
    return GodelAlgebra(names, meet, join, impl, 0, k - 1)


def stone_map(alg: GodelAlgebra) -> tuple[int, ...]:
    """``r(x)`` as a node mask of ``spectrum(alg)``: generators below ``x``."""
    return tuple(
        sum(1 << i for i, j in enumerate(alg.joinirr) if alg.le(j, x)) for x in range(alg.size)
    )


def stone_indices(alg: GodelAlgebra) -> tuple[int, ...]:
    """``r`` as element indices of ``downset_algebra(spectrum(alg))``."""
    _, pos = _downset_data(spectrum(alg))
    return tuple(pos[m] for m in stone_map(alg))


def point_map(f: Forest) -> tuple[int, ...]:
    """``k(x)`` for each node as a mask over element indices of ``downset_algebra(f)``."""
    masks = downset_elements(f)
    return tuple(sum(1 << i for i, m in enumerate(masks) if m >> x & 1) for x in range(f.n))


def _preserves(a: GodelAlgebra, b: GodelAlgebra, h: Sequence[int]) -> bool:
    if h[a.bot] != b.bot or h[a.top] != b.top:
        return False
    if len(set(h)) != a.size:
        return False
    for x in range(a.size):
        for y in range(a.size):
            if h[a.meet[x][y]] != b.meet[h[x]][h[y]]:
                return False
            if h[a.join[x][y]] != b.join[h[x]][h[y]]:
                return False
            if h[a.impl[x][y]] != b.impl[h[x]][h[y]]:
                return False
    return True


def _order_isos(pa: Poset, pb: Poset, extra=None) -> Iterator[tuple[int, ...]]:
    """Order isomorphisms ``pa -> pb`` in lexicographic order of the image tuple.

    ``extra(assign, x, y)`` may veto mapping ``x -> y`` given the partial map.
    """
    n = pa.n
    if n != pb.n:
        return
    sig_a = [(pa.up[x].bit_count(), pa.down[x].bit_count()) for x in range(n)]
    sig_b = [(pb.up[y].bit_count(), pb.down[y].bit_count()) for y in range(n)]
    assign: list[int] = []
    used = 0

    def rec():
        nonlocal used
        x = len(assign)
        if x == n:
            yield tuple(assign)
            return
        for y in range(n):
            if used >> y & 1 or sig_a[x] != sig_b[y]:
                continue
            ok = True
            for x2, y2 in enumerate(assign):
                if pa.le(x, x2) != pb.le(y, y2) or pa.le(x2, x) != pb.le(y2, y):
                    ok = False
                    break
            if ok and extra is not None and not extra(assign, x, y):
                ok = False
            if not ok:
                continue
            assign.append(y)
            used |= 1 << y
            yield from rec()
            assign.pop()
            used &= ~(1 << y)

    yield from rec()


def algebra_isos(a: GodelAlgebra, b: GodelAlgebra) -> Iterator[tuple[int, ...]]:
    """All isomorphisms ``a -> b`` as element-index tuples, in canonical order."""
    if a.size != b.size or len(a.joinirr) != len(b.joinirr):
        return
    fa, fb = spectrum(a), spectrum(b)
    ja, jb = a.joinirr, b.joinirr
    for node_map in _order_isos(fa, fb):
        h = []
        for x in range(a.size):
            h.append(b.join_all(jb[node_map[i]] for i, j in enumerate(ja) if a.le(j, x)))
        if _preserves(a, b, h):
            yield tuple(h)


def algebra_iso(a: GodelAlgebra, b: GodelAlgebra) -> tuple[int, ...] | None:
    return next(algebra_isos(a, b), None)


def frame_iso(
    f1: Forest, rels1: Sequence[Rel], f2: Forest, rels2: Sequence[Rel]
) -> tuple[int, ...] | None:
    """First order isomorphism ``f1 -> f2`` carrying each ``rels1[i]`` onto ``rels2[i]``."""
    if len(rels1) != len(rels2):
        raise StructureError("frames carry different numbers of relations")
    for r in list(rels1):
        if r.n != f1.n:
            raise StructureError("relation does not live on the first forest")
    for r in list(rels2):
        if r.n != f2.n:
            raise StructureError("relation does not live on the second forest")
    if f1.n != f2.n or any(len(r) != len(s) for r, s in zip(rels1, rels2)):
        return None

    def extra(assign, x, y):
        pairs = list(enumerate(assign)) + [(x, y)]
        for r, s in zip(rels1, rels2):
            for x2, y2 in pairs:
                if ((x, x2) in r) != ((y, y2) in s) or ((x2, x) in r) != ((y2, y) in s):
                    return False
        return True

    return next(_order_isos(f1, f2, extra), None)


def forest_automorphisms(f: Forest) -> tuple[tuple[int, ...], ...]:
    return _automorphisms(f)


@lru_cache(maxsize=4096)
def _automorphisms(f: Forest) -> tuple[tuple[int, ...], ...]:
    return tuple(_order_isos(f, f))
