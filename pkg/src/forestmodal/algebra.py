"""Finite Gödel algebras given by operation tables.

Elements are the integers ``0..m-1``; ``names`` supplies display labels.
The order is never stored: ``x <= y`` means ``meet[x][y] == x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotGodelError, StructureError
from .order import Poset, bits

__all__ = [
    "GodelAlgebra",
    "ViolationReport",
    "validate_godel",
    "require_godel",
    "join_irreducibles",
    "prime_filters",
    "is_filter",
    "is_prime_filter",
    "is_cofilter",
    "is_ideal",
    "filter_generated",
    "boolean_elements",
    "chain_algebra",
    "boolean_algebra",
]

CHECK_ORDER = ("lattice", "bounds", "distributivity", "residuation", "prelinearity")


def _table(raw, m: int, label: str) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(v) for v in row) for row in raw)
    except (TypeError, ValueError):
        raise StructureError(f"{label} table is not a matrix of element indices") from None
    if len(rows) != m or any(len(r) != m for r in rows):
        raise StructureError(f"{label} table is not total over {m} elements")
    for r in rows:
        for v in r:
            if not 0 <= v < m:
                raise StructureError(f"{label} table has entry {v} outside the carrier")
    return rows


@dataclass(frozen=True)
class GodelAlgebra:
    names: tuple
    meet: tuple
    join: tuple
    impl: tuple
    bot: int
    top: int

    def __post_init__(self):
        names = tuple(str(x) for x in self.names)
        m = len(names)
        if m == 0:
            raise StructureError("an algebra needs at least one element")
        if len(set(names)) != m:
            raise StructureError("element names must be distinct")
        object.__setattr__(self, "names", names)
        for label in ("meet", "join", "impl"):
            object.__setattr__(self, label, _table(getattr(self, label), m, label))
        for label in ("bot", "top"):
            v = getattr(self, label)
            if isinstance(v, str):
                v = self._lookup(v)
            if not isinstance(v, (int, np.integer)) or not 0 <= v < m:
                raise StructureError(f"{label} is not an element")
            object.__setattr__(self, label, int(v))

    def _lookup(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructureError(f"unknown element {name!r}") from None

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, ref) -> int:
        if isinstance(ref, str):
            return self._lookup(ref)
        if isinstance(ref, (int, np.integer)) and 0 <= ref < self.size:
            return int(ref)
        raise StructureError(f"unknown element {ref!r}")

    def name(self, x: int) -> str:
        return self.names[x]

    def le(self, x: int, y: int) -> bool:
        return self.meet[x][y] == x

    def neg(self, x: int) -> int:
        return self.impl[x][self.bot]

    # numpy views, built once per instance
    @cached_property
    def M(self) -> np.ndarray:
        return np.array(self.meet, dtype=np.int64)

    @cached_property
    def J(self) -> np.ndarray:
        return np.array(self.join, dtype=np.int64)

    @cached_property
    def I(self) -> np.ndarray:
        return np.array(self.impl, dtype=np.int64)

    @cached_property
    def LE(self) -> np.ndarray:
        return self.M == np.arange(self.size)[:, None]

    @cached_property
    def NEG(self) -> np.ndarray:
        return self.I[:, self.bot].copy()

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[x]``: mask of elements ``>= x``."""
        le = self.LE
        return tuple(sum(1 << int(y) for y in np.flatnonzero(le[x])) for x in range(self.size))

    @cached_property
    def down(self) -> tuple[int, ...]:
        le = self.LE
        return tuple(sum(1 << int(y) for y in np.flatnonzero(le[:, x])) for x in range(self.size))

    @cached_property
    def joinirr(self) -> tuple[int, ...]:
        return tuple(join_irreducibles(self))

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.bot
        for x in xs:
            acc = self.join[acc][x]
        return acc

    def meet_all(self, xs: Iterable[int]) -> int:
        acc = self.top
        for x in xs:
            acc = self.meet[acc][x]
        return acc

    def order(self) -> Poset:
        le = self.LE
        pairs = frozenset((x, y) for x in range(self.size) for y in range(self.size) if le[x, y])
        return Poset(self.size, pairs, self.names)

    @classmethod
    def from_order(cls, names: Sequence[str], le_pairs: Iterable[tuple[int, int]]) -> GodelAlgebra:
        """Build meet, join and relative pseudo-complement from a lattice order.

        Raises StructureError if the order is not a bounded lattice. The result
        still needs ``validate_godel`` to confirm distributivity and prelinearity.
        """
        p = Poset(len(names), frozenset(le_pairs), tuple(names))
        return cls._from_poset(p)

    @classmethod
    def from_covers(cls, names: Sequence[str], covers: Iterable[tuple]) -> GodelAlgebra:
        names = tuple(str(x) for x in names)
        idx = {n: i for i, n in enumerate(names)}

        def res(v):
            if isinstance(v, str):
                if v not in idx:
                    raise StructureError(f"unknown element {v!r} in covers")
                return idx[v]
            return int(v)

        p = Poset.from_covers(len(names), [(res(a), res(b)) for a, b in covers], names)
        return cls._from_poset(p)

    @classmethod
    def _from_poset(cls, p: Poset) -> GodelAlgebra:
        m = p.n
        if m == 0:
            raise StructureError("an algebra needs at least one element")
        up, down = p.up, p.down

        def greatest(mask):
            for x in bits(mask):
                if down[x] & mask == mask:
                    return x
            return None

        def least(mask):
            for x in bits(mask):
                if up[x] & mask == mask:
                    return x
            return None

        everything = (1 << m) - 1
        bot, top = least(everything), greatest(everything)
        if bot is None or top is None:
            raise StructureError("order has no bottom or no top")
        meet = [[0] * m for _ in range(m)]
        join = [[0] * m for _ in range(m)]
        for x in range(m):
            for y in range(m):
                g = greatest(down[x] & down[y])
                l = least(up[x] & up[y])
                if g is None or l is None:
                    raise StructureError(f"elements {p.labels[x]}, {p.labels[y]} lack a meet or join")
                meet[x][y], join[x][y] = g, l
        impl = [[0] * m for _ in range(m)]
        for x in range(m):
            for y in range(m):
                cand = sum(1 << z for z in range(m) if down[y] >> meet[z][x] & 1)
                g = greatest(cand)
                if g is None:
                    raise StructureError(f"no residual for {p.labels[x]} -> {p.labels[y]}")
                impl[x][y] = g
        return cls(p.labels, meet, join, impl, bot, top)


@dataclass(frozen=True)
class ViolationReport:
    """First violated law: ``kind`` is the law family, ``witness`` the element names."""

    kind: str
    law: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.kind} violation ({self.law}) at {', '.join(self.witness)}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "law": self.law, "witness": list(self.witness)}


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(v) for v in hits[0])


def _report(alg: GodelAlgebra, kind: str, law: str, idx) -> ViolationReport:
    return ViolationReport(kind, law, tuple(alg.names[i] for i in idx))


def _lattice_checks(alg: GodelAlgebra):
    m = alg.size
    M, J = alg.M, alg.J
    a = np.arange(m)
    X, Y = a[:, None], a[None, :]
    X3, Y3, Z3 = a[:, None, None], a[None, :, None], a[None, None, :]
    yield "lattice", "meet idempotent", (M[a, a] != a)
    yield "lattice", "join idempotent", (J[a, a] != a)
    yield "lattice", "meet commutative", (M != M.T)
    yield "lattice", "join commutative", (J != J.T)
    yield "lattice", "meet associative", (M[M[X3, Y3], Z3] != M[X3, M[Y3, Z3]])
    yield "lattice", "join associative", (J[J[X3, Y3], Z3] != J[X3, J[Y3, Z3]])
    yield "lattice", "absorption meet-join", (M[X, J[X, Y]] != X)
    yield "lattice", "absorption join-meet", (J[X, M[X, Y]] != X)


def validate_godel(alg: GodelAlgebra) -> ViolationReport | None:
    """Return None when every Gödel algebra law holds, else the first violation.

    Laws are checked family by family in the order lattice, bounds,
    distributivity, residuation, prelinearity; within a family the witness is
    the lexicographically first offending tuple.
    """
    m = alg.size
    M, J, I = alg.M, alg.J, alg.I
    a = np.arange(m)
    for kind, law, bad in _lattice_checks(alg):
        w = _first(bad)
        if w is not None:
            return _report(alg, kind, law, w)
    w = _first(M[alg.bot, a] != alg.bot)
    if w is not None:
        return _report(alg, "bounds", "bottom is least", w)
    w = _first(J[alg.top, a] != alg.top)
    if w is not None:
        return _report(alg, "bounds", "top is greatest", w)
    X3, Y3, Z3 = a[:, None, None], a[None, :, None], a[None, None, :]
    w = _first(M[X3, J[Y3, Z3]] != J[M[X3, Y3], M[X3, Z3]])
    if w is not None:
        return _report(alg, "distributivity", "x&(y|z) = (x&y)|(x&z)", w)
    LE = alg.LE
    lhs = LE[M[X3, Y3], Z3]
    rhs = LE[X3, I[Y3, Z3]]
    w = _first(lhs != rhs)
    if w is not None:
        return _report(alg, "residuation", "x&y <= z iff x <= y->z", w)
    X, Y = a[:, None], a[None, :]
    w = _first(J[I[X, Y], I[Y, X]] != alg.top)
    if w is not None:
        return _report(alg, "prelinearity", "(x->y)|(y->x) = top", w)
    return None


def require_godel(alg: GodelAlgebra) -> GodelAlgebra:
    rep = validate_godel(alg)
    if rep is not None:
        raise NotGodelError(rep)
    return alg


def join_irreducibles(alg: GodelAlgebra) -> list[int]:
    """Non-bottom elements that are not the join of the elements strictly below them."""
    out = []
    for x in range(alg.size):
        if x == alg.bot:
            continue
        below = bits(alg.down[x] & ~(1 << x))
        if alg.join_all(below) != x:
            out.append(x)
    return out


def prime_filters(alg: GodelAlgebra) -> list[tuple[int, frozenset[int]]]:
    return [(j, frozenset(bits(alg.up[j]))) for j in alg.joinirr]


def _as_mask(alg: GodelAlgebra, s) -> int:
    if isinstance(s, int):
        return s
    m = 0
    for x in s:
        m |= 1 << alg.index(x)
    return m


def _upward_closed(alg: GodelAlgebra, mask: int) -> bool:
    return all(alg.up[x] & ~mask == 0 for x in bits(mask))


def _downward_closed(alg: GodelAlgebra, mask: int) -> bool:
    return all(alg.down[x] & ~mask == 0 for x in bits(mask))


def _join_prime(alg: GodelAlgebra, mask: int) -> bool:
    m = alg.size
    for x in range(m):
        for y in range(m):
            if mask >> alg.join[x][y] & 1 and not (mask >> x & 1 or mask >> y & 1):
                return False
    return True


def is_filter(alg: GodelAlgebra, s) -> bool:
    mask = _as_mask(alg, s)
    if not mask or not _upward_closed(alg, mask):
        return False
    members = bits(mask)
    return all(mask >> alg.meet[x][y] & 1 for x in members for y in members)


def is_cofilter(alg: GodelAlgebra, s) -> bool:
    mask = _as_mask(alg, s)
    return bool(mask) and _upward_closed(alg, mask) and _join_prime(alg, mask)


def is_prime_filter(alg: GodelAlgebra, s) -> bool:
    mask = _as_mask(alg, s)
    proper = mask != (1 << alg.size) - 1
    return proper and is_filter(alg, mask) and _join_prime(alg, mask)


def is_ideal(alg: GodelAlgebra, s) -> bool:
    mask = _as_mask(alg, s)
    if not mask or not _downward_closed(alg, mask):
        return False
    members = bits(mask)
    return all(mask >> alg.join[x][y] & 1 for x in members for y in members)


def filter_generated(alg: GodelAlgebra, s) -> frozenset[int]:
    """Smallest filter containing ``s``: the principal upset of its meet."""
    mask = _as_mask(alg, s)
    return frozenset(bits(alg.up[alg.meet_all(bits(mask))]))


def boolean_elements(alg: GodelAlgebra) -> frozenset[int]:
    return frozenset(x for x in range(alg.size) if alg.join[x][alg.neg(x)] == alg.top)


def chain_algebra(k: int, names: Sequence[str] | None = None) -> GodelAlgebra:
    """The ``k``-element Gödel chain ``0 < 1 < ... < k-1``."""
    if k < 1:
        raise StructureError("a chain needs at least one element")
    names = tuple(names) if names is not None else tuple(str(i) for i in range(k))
    meet = [[min(x, y) for y in range(k)] for x in range(k)]
    join = [[max(x, y) for y in range(k)] for x in range(k)]
    impl = [[k - 1 if x <= y else y for y in range(k)] for x in range(k)]
    return GodelAlgebra(names, meet, join, impl, 0, k - 1)


def boolean_algebra(atoms: int) -> GodelAlgebra:
    """Powerset algebra on ``atoms`` atoms; element ``i`` is the subset with mask ``i``."""
    k = 1 << atoms
    full = k - 1
    names = ["{" + ",".join(str(b) for b in bits(i)) + "}" for i in range(k)]
    meet = [[x & y for y in range(k)] for x in range(k)]
    join = [[x | y for y in range(k)] for x in range(k)]
    impl = [[(full & ~x) | y for y in range(k)] for x in range(k)]
    return GodelAlgebra(names, meet, join, impl, 0, full)
