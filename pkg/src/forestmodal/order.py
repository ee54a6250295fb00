"""Finite posets, forests, downsets and binary relations.

Node sets and relation rows are stored as int bitmasks (bit ``i`` set means
node ``i`` is a member). Nodes are always the contiguous integers ``0..n-1``.
Public functions that hand node sets back to callers use ``frozenset``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import StructureError

__all__ = [
    "Rel",
    "Poset",
    "Forest",
    "bits",
    "mask_of",
    "compose",
    "identity",
    "full",
    "empty",
    "is_forest",
    "downsets",
    "downset_masks",
    "principal_up",
    "principal_down",
    "is_downset",
    "is_upset",
    "up_closure",
    "down_closure",
    "node_set_key",
]


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for x in nodes:
        m |= 1 << x
    return m


def node_set_key(mask: int) -> tuple[int, list[int]]:
    """Canonical order on node sets: cardinality first, then sorted members."""
    return (mask.bit_count(), bits(mask))


@dataclass(frozen=True)
class Rel:
    """A binary relation on ``range(n)``; ``rows[a]`` is the successor mask of ``a``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n:
            raise StructureError(f"relation has {len(rows)} rows for a carrier of {self.n} nodes")
        limit = 1 << self.n
        for a, row in enumerate(rows):
            if row < 0 or row >= limit:
                raise StructureError(f"row {a} mentions nodes outside 0..{self.n - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Rel:
        rows = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise StructureError(f"pair ({a}, {b}) has an endpoint outside 0..{n - 1}")
            rows[a] |= 1 << b
        return cls(n, tuple(rows))

    @property
    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.sorted_pairs())

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, row in enumerate(self.rows) for b in bits(row)]

    def image(self, a: int) -> frozenset[int]:
        return frozenset(bits(self.rows[a]))

    def __contains__(self, pair) -> bool:
        a, b = pair
        return 0 <= a < self.n and 0 <= b < self.n and bool(self.rows[a] >> b & 1)

    def __len__(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def _check(self, other: Rel):
        if not isinstance(other, Rel) or other.n != self.n:
            raise StructureError("relations live on different carriers")

    def __and__(self, other: Rel) -> Rel:
        self._check(other)
        return Rel(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __or__(self, other: Rel) -> Rel:
        self._check(other)
        return Rel(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: Rel) -> Rel:
        self._check(other)
        return Rel(self.n, tuple(a & ~b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: Rel) -> bool:
        self._check(other)
        return all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __ge__(self, other: Rel) -> bool:
        return other <= self

    def converse(self) -> Rel:
        rows = [0] * self.n
        for a, row in enumerate(self.rows):
            for b in bits(row):
                rows[b] |= 1 << a
        return Rel(self.n, tuple(rows))


def compose_rows(s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    for row in s:
        acc = 0
        b = 0
        while row:
            if row & 1:
                acc |= t[b]
            row >>= 1
            b += 1
        out.append(acc)
    return tuple(out)


def compose(s: Rel, t: Rel) -> Rel:
    """Left-to-right composition: ``(a, c)`` iff some ``b`` has ``a s b`` and ``b t c``."""
    if s.n != t.n:
        raise StructureError("cannot compose relations on different carriers")
    return Rel(s.n, compose_rows(s.rows, t.rows))


def identity(n: int) -> Rel:
    return Rel(n, tuple(1 << i for i in range(n)))


def full(n: int) -> Rel:
    return Rel(n, tuple([(1 << n) - 1] * n))


def empty(n: int) -> Rel:
    return Rel(n, (0,) * n)


def _closure(n: int, rows: list[int]) -> list[int]:
    rows = list(rows)
    for k in range(n):
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rows[k]
    return rows


@dataclass(frozen=True)
class Poset:
    """A finite partial order stored as its full reflexive ``leq`` relation."""

    n: int
    leq: frozenset = field(default_factory=frozenset)
    labels: tuple | None = None

    def __post_init__(self):
        if self.n < 0:
            raise StructureError("negative carrier size")
        leq = frozenset((int(a), int(b)) for a, b in self.leq)
        object.__setattr__(self, "leq", leq)
        labels = self.labels
        if labels is None:
            labels = tuple(str(i) for i in range(self.n))
        labels = tuple(str(x) for x in labels)
        if len(labels) != self.n:
            raise StructureError(f"{len(labels)} labels for {self.n} nodes")
        if len(set(labels)) != self.n:
            raise StructureError("node labels must be distinct")
        object.__setattr__(self, "labels", labels)
        for a, b in leq:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise StructureError(f"order pair ({a}, {b}) outside 0..{self.n - 1}")
        for x in range(self.n):
            if (x, x) not in leq:
                raise StructureError(f"order is not reflexive at node {x}")
        up = self.up
        for a, b in leq:
            if a != b and (b, a) in leq:
                raise StructureError(f"order is not antisymmetric on nodes {a}, {b}")
        for a in range(self.n):
            for b in bits(up[a]):
                if up[b] & ~up[a]:
                    raise StructureError(f"order is not transitive through node {b}")

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None):
        """Build from Hasse covers given as ``(lower, upper)`` pairs."""
        rows = [1 << i for i in range(n)]
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise StructureError(f"cover ({a}, {b}) outside 0..{n - 1}")
            rows[a] |= 1 << b
        rows = _closure(n, rows)
        leq = frozenset((a, b) for a in range(n) for b in bits(rows[a]))
        return cls(n, leq, labels)

    @cached_property
    def up(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for a, b in self.leq:
            rows[a] |= 1 << b
        return tuple(rows)

    @cached_property
    def down(self) -> tuple[int, ...]:
        rows = [0] * self.n
        for a, b in self.leq:
            rows[b] |= 1 << a
        return tuple(rows)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def le(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for a in range(self.n):
            strict = self.up[a] & ~(1 << a)
            for b in bits(strict):
                between = strict & self.down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return tuple(sorted(out))

    @cached_property
    def le_rel(self) -> Rel:
        """The relation ``<=`` as a Rel: ``a`` relates to every ``b >= a``."""
        return Rel(self.n, self.up)

    @cached_property
    def ge_rel(self) -> Rel:
        return Rel(self.n, self.down)

    def node(self, ref) -> int:
        """Resolve a node given as an index or as a label."""
        if isinstance(ref, bool):
            raise StructureError(f"unknown node {ref!r}")
        if isinstance(ref, int):
            if 0 <= ref < self.n:
                return ref
            raise StructureError(f"unknown node {ref}")
        try:
            return self.labels.index(str(ref))
        except ValueError:
            raise StructureError(f"unknown node {ref!r}") from None

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.labels[i] for i in bits(mask)) + "}"


@dataclass(frozen=True)
class Forest(Poset):
    """A poset whose principal downsets are chains."""

    def __post_init__(self):
        super().__post_init__()
        bad = _non_chain_node(self)
        if bad is not None:
            raise StructureError(f"principal downset of node {bad} is not a chain")

    @classmethod
    def from_poset(cls, p: Poset) -> Forest:
        return cls(p.n, p.leq, p.labels)

    @classmethod
    def from_parents(cls, parents, labels=None) -> Forest:
        covers = [(p, i) for i, p in enumerate(parents) if p is not None]
        return cls.from_covers(len(parents), covers, labels)

    @cached_property
    def parent(self) -> tuple:
        out = [None] * self.n
        for a, b in self.covers:
            out[b] = a
        return tuple(out)

    def relabel(self, labels) -> Forest:
        return Forest(self.n, self.leq, tuple(labels))


def _non_chain_node(p: Poset):
    for x in range(p.n):
        members = bits(p.down[x])
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if not (p.up[a] >> b & 1 or p.up[b] >> a & 1):
                    return x
    return None


def is_forest(p: Poset) -> bool:
    return _non_chain_node(p) is None


def _require_node(p: Poset, x: int):
    if not (isinstance(x, int) and 0 <= x < p.n):
        raise StructureError(f"unknown node {x!r}")


def is_downset(p: Poset, mask: int) -> bool:
    return all(p.down[x] & ~mask == 0 for x in bits(mask))


def is_upset(p: Poset, mask: int) -> bool:
    return all(p.up[x] & ~mask == 0 for x in bits(mask))


def up_closure(p: Poset, mask: int) -> int:
    out = 0
    for x in bits(mask):
        out |= p.up[x]
    return out


def down_closure(p: Poset, mask: int) -> int:
    out = 0
    for x in bits(mask):
        out |= p.down[x]
    return out


def downset_masks(p: Poset) -> list[int]:
    """All downsets as masks, ordered by cardinality then lexicographically."""
    found = [m for m in range(1 << p.n) if is_downset(p, m)]
    found.sort(key=node_set_key)
    return found


def downsets(p: Poset) -> list[frozenset[int]]:
    return [frozenset(bits(m)) for m in downset_masks(p)]


def principal_up(p: Poset, x: int) -> frozenset[int]:
    _require_node(p, x)
    return frozenset(bits(p.up[x]))


def principal_down(p: Poset, x: int) -> frozenset[int]:
    _require_node(p, x)
    return frozenset(bits(p.down[x]))
