"""Exact Gram and Weingarten matrices and Haar-state moments.

Everything here is exact rational arithmetic; no floating point enters at
any stage.  Weingarten matrices are cached in-process per (category,
points, dimension) since moment tables reuse them heavily.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import SingularGramError
from .partitions import category, delta, enumerate_category, join


@dataclass(frozen=True)
class RationalMatrix:
    """Square matrix of exact rationals indexed by a fixed partition list."""

    labels: tuple
    entries: tuple

    @property
    def size(self):
        return len(self.labels)

    def index(self, p):
        return self.labels.index(p)

    def value(self, p, q):
        return self.entries[self.index(p)][self.index(q)]

    def trace(self):
        return sum((row[i] for i, row in enumerate(self.entries)), Fraction(0))

    def __matmul__(self, other):
        if self.labels != other.labels:
            raise ValueError("label mismatch")
        m = self.size
        rows = tuple(
            tuple(sum((self.entries[i][k] * other.entries[k][j] for k in range(m)), Fraction(0)) for j in range(m))
            for i in range(m)
        )
        return RationalMatrix(self.labels, rows)

    def is_identity(self):
        return all(
            entry == (1 if i == j else 0)
            for i, row in enumerate(self.entries)
            for j, entry in enumerate(row)
        )

    def to_tsv(self):
        """TSV rendering: header row of partition serializations, then entries."""
        lines = ["\t".join(str(p) for p in self.labels)]
        lines.extend("\t".join(str(x) for x in row) for row in self.entries)
        return "\n".join(lines)


def _unprimed(cat):
    c = category(cat)
    if c.primed:
        raise ValueError(f"category {c.label} is primed; no Weingarten calculus is defined for it")
    return c


@lru_cache(maxsize=None)
def _gram_cached(label, s, n):
    labels = tuple(enumerate_category(label, s))
    counts = {}
    m = len(labels)
    rows = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            _, nb = join(labels[i], labels[j])
            rows[i][j] = rows[j][i] = Fraction(n**nb)
    return RationalMatrix(labels, tuple(tuple(r) for r in rows))


def gram_matrix(cat, s, n):
    """Gram matrix of the category: entry (p, q) is n**|p v q|."""
    c = _unprimed(cat)
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if s < 0:
        raise ValueError("point count must be >= 0")
    return _gram_cached(c.label, s, n)


def _invert_or_rank(entries):
    """Exact Gauss-Jordan inverse, or (None, rank) when singular."""
    m = len(entries)
    a = [list(row) for row in entries]
    inv = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv[rank], inv[piv] = inv[piv], inv[rank]
        scale = a[rank][col]
        if scale != 1:
            a[rank] = [x / scale for x in a[rank]]
            inv[rank] = [x / scale for x in inv[rank]]
        for r in range(m):
            if r == rank or not a[r][col]:
                continue
            factor = a[r][col]
            a[r] = [x - factor * y for x, y in zip(a[r], a[rank])]
            inv[r] = [x - factor * y for x, y in zip(inv[r], inv[rank])]
        rank += 1
    if rank < m:
        return None, rank
    return inv, m


def gram_rank(cat, s, n):
    """Rank of the Gram matrix over the rationals, by exact elimination."""
    return _invert_or_rank(gram_matrix(cat, s, n).entries)[1]


@lru_cache(maxsize=None)
def _weingarten_cached(label, s, n):
    g = gram_matrix(label, s, n)
    inv, rank = _invert_or_rank(g.entries)
    if inv is None:
        raise SingularGramError(rank, g.size, context=f"{label}, s={s}, n={n}")
    return RationalMatrix(g.labels, tuple(tuple(r) for r in inv))


def weingarten_matrix(cat, s, n):
    """Exact inverse of the Gram matrix; raises SingularGramError otherwise."""
    c = _unprimed(cat)
    gram_matrix(c, s, n)  # validate arguments eagerly
    return _weingarten_cached(c.label, s, n)


def _validate_word(word, n):
    word = tuple((int(i), int(j)) for i, j in word)
    for i, j in word:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"letter ({i},{j}) outside 1..{n}")
    return word


def haar_moment(cat, n, word):
    """Haar-state value of a product of matrix coordinates.

    The word is a sequence of (row, column) pairs; the value is the double
    sum over pairs of category partitions of row-delta times column-delta
    times the Weingarten entry.
    """
    word = _validate_word(word, n)
    s = len(word)
    if s == 0:
        return Fraction(1)
    w = weingarten_matrix(cat, s, n)
    rows = tuple(i for i, _ in word)
    cols = tuple(j for _, j in word)
    row_ok = [a for a, p in enumerate(w.labels) if delta(p, rows)]
    col_ok = [b for b, p in enumerate(w.labels) if delta(p, cols)]
    return sum((w.entries[a][b] for a in row_ok for b in col_ok), Fraction(0))


def character_moment(cat, n, s):
    """Exact s-th moment of the main character, as trace(W @ G).

    Equals the number of category partitions on s points whenever the Gram
    matrix is invertible.
    """
    if s == 0:
        return Fraction(1)
    w = weingarten_matrix(cat, s, n)
    g = gram_matrix(cat, s, n)
    m = w.size
    return sum((w.entries[a][b] * g.entries[b][a] for a in range(m) for b in range(m)), Fraction(0))
