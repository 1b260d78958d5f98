"""Set partitions of {1,...,s} and the ten easy partition categories.

A partition is stored in canonical form: blocks sorted by minimum element,
elements ascending inside each block.  The canonical *order* on partitions
of a fixed point set is lexicographic on the restricted-growth string, and
every enumeration in the package emits partitions in that order so matrix
indexing is reproducible everywhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass


class SetPartition:
    """An exact set partition of the points {1,...,s}."""

    __slots__ = ("points", "blocks")

    def __init__(self, points, blocks):
        blocks = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen = set()
        for block in blocks:
            if not block:
                raise ValueError("empty block")
            for x in block:
                if not (1 <= x <= points):
                    raise ValueError(f"point {x} outside 1..{points}")
                if x in seen:
                    raise ValueError(f"point {x} appears in two blocks")
                seen.add(x)
        if len(seen) != points:
            raise ValueError("blocks do not cover the point set")
        self.points = points
        self.blocks = blocks

    @classmethod
    def from_rgs(cls, rgs):
        """Build from a restricted-growth string (0-based block labels)."""
        blocks = {}
        for point, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(point)
        return cls(len(rgs), blocks.values())

    @classmethod
    def from_string(cls, text):
        """Parse the block-list serialization, e.g. ``{1,3}{2,4}``."""
        text = text.strip()
        if not text:
            return cls(0, ())
        if not re.fullmatch(r"(\{\d+(,\d+)*\})+", text):
            raise ValueError(f"malformed partition {text!r}")
        blocks = [tuple(int(x) for x in part.split(",")) for part in re.findall(r"\{([^}]*)\}", text)]
        return cls(sum(len(b) for b in blocks), blocks)

    def rgs(self):
        """Restricted-growth string: label of each point's block, 0-based."""
        label = {}
        for idx, block in enumerate(self.blocks):
            for x in block:
                label[x] = idx
        return tuple(label[x] for x in range(1, self.points + 1))

    @property
    def n_blocks(self):
        return len(self.blocks)

    def block_sizes(self):
        return tuple(len(b) for b in self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.points == other.points
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.points, self.blocks))

    def __lt__(self, other):
        if self.points != other.points:
            return self.points < other.points
        return self.rgs() < other.rgs()

    def __str__(self):
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def __repr__(self):
        return f"SetPartition({self.points}, {self!s})" if self.points else "SetPartition(0)"


def all_partitions(s):
    """All set partitions of {1..s} in restricted-growth lexicographic order."""
    if s == 0:
        yield SetPartition(0, ())
        return
    rgs = [0] * s

    def rec(i, mx):
        if i == s:
            yield SetPartition.from_rgs(rgs)
            return
        for v in range(mx + 2):
            rgs[i] = v
            yield from rec(i + 1, max(mx, v))

    yield from rec(1, 0)


def is_noncrossing(p):
    """True iff no points a<b<c<d have a,c in one block and b,d in another."""
    blocks = p.blocks
    for b1, b2 in itertools.combinations(blocks, 2):
        merged = sorted(((x, 0) for x in b1), key=lambda t: t[0])
        merged = sorted(merged + [(x, 1) for x in b2])
        switches = sum(1 for u, v in zip(merged, merged[1:]) if u[1] != v[1])
        if switches >= 3:
            return False
    return True


def join(p, q):
    """Finest common coarsening of two partitions; returns (partition, block count)."""
    if p.points != q.points:
        raise ValueError(f"point-count mismatch: {p.points} vs {q.points}")
    s = p.points
    parent = list(range(s + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for block in p.blocks + q.blocks:
        root = find(block[0])
        for x in block[1:]:
            parent[find(x)] = root
    groups = {}
    for x in range(1, s + 1):
        groups.setdefault(find(x), []).append(x)
    joined = SetPartition(s, groups.values())
    return joined, joined.n_blocks


def delta(p, indices):
    """1 if the index tuple is constant on every block of p, else 0."""
    indices = tuple(indices)
    if len(indices) != p.points:
        raise ValueError(f"index tuple length {len(indices)} != {p.points} points")
    for block in p.blocks:
        first = indices[block[0] - 1]
        if any(indices[x - 1] != first for x in block[1:]):
            return 0
    return 1


def kernel(indices):
    """The partition of positions grouping equal entries of the tuple."""
    groups = {}
    for pos, value in enumerate(indices, start=1):
        groups.setdefault(value, []).append(pos)
    return SetPartition(len(tuple(indices)), groups.values())


def block_removal_subpartitions(p):
    """All partitions obtained by deleting a subset of blocks and relabeling.

    The surviving points are renumbered order-preservingly to {1..s'}; the
    result is returned deduplicated.
    """
    out = set()
    nb = p.n_blocks
    for mask in range(1 << nb):
        kept = [b for i, b in enumerate(p.blocks) if not mask & (1 << i)]
        points = sorted(x for b in kept for x in b)
        rank = {x: r + 1 for r, x in enumerate(points)}
        out.add(SetPartition(len(points), [[rank[x] for x in b] for b in kept]))
    return frozenset(out)


@dataclass(frozen=True)
class Category:
    """One of the ten named partition categories, as a membership rule."""

    label: str
    sizes: str  # "any" | "pairs" | "even" | "singletons_pairs"
    noncrossing: bool
    even_points_only: bool

    @property
    def primed(self):
        return self.even_points_only

    def admits_size(self, b):
        if self.sizes == "any":
            return True
        if self.sizes == "pairs":
            return b == 2
        if self.sizes == "even":
            return b % 2 == 0
        return b in (1, 2)

    def contains(self, p):
        if self.even_points_only and p.points % 2 == 1:
            return False
        if not all(self.admits_size(len(b)) for b in p.blocks):
            return False
        return is_noncrossing(p) if self.noncrossing else True


CATEGORIES = {
    "O": Category("O", "pairs", False, False),
    "S": Category("S", "any", False, False),
    "H": Category("H", "even", False, False),
    "B": Category("B", "singletons_pairs", False, False),
    "Ofree": Category("Ofree", "pairs", True, False),
    "Sfree": Category("Sfree", "any", True, False),
    "Hfree": Category("Hfree", "even", True, False),
    "Bfree": Category("Bfree", "singletons_pairs", True, False),
    "Sprime": Category("Sprime", "any", False, True),
    "Bprime": Category("Bprime", "singletons_pairs", False, True),
}

UNPRIMED = ("O", "S", "H", "B", "Ofree", "Sfree", "Hfree", "Bfree")


def category(cat):
    """Resolve a label or Category instance to a Category."""
    if isinstance(cat, Category):
        return cat
    try:
        return CATEGORIES[cat]
    except KeyError:
        raise ValueError(f"unknown category {cat!r}; expected one of {', '.join(CATEGORIES)}") from None


def enumerate_category(cat, s):
    """Members of the category on s points, in canonical order."""
    if s < 0:
        raise ValueError("point count must be >= 0")
    c = category(cat)
    return [p for p in all_partitions(s) if c.contains(p)]


def is_block_stable(cat, s_max):
    """Check closure of the category under deleting blocks, up to s_max points.

    Returns (True, None) on success, else (False, witness) where witness is
    the first failing (partition, removed blocks, offending subpartition) in
    canonical order.
    """
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    c = category(cat)
    for s in range(s_max + 1):
        for p in enumerate_category(c, s):
            for mask in range(1 << p.n_blocks):
                removed = tuple(b for i, b in enumerate(p.blocks) if mask & (1 << i))
                kept = [b for i, b in enumerate(p.blocks) if not mask & (1 << i)]
                points = sorted(x for b in kept for x in b)
                rank = {x: r + 1 for r, x in enumerate(points)}
                sub = SetPartition(len(points), [[rank[x] for x in b] for b in kept])
                if not c.contains(sub):
                    return False, (p, removed, sub)
    return True, None
