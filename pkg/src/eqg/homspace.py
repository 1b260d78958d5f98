"""Row-algebra invariant states and truncated-matrix classes.

Numeric (commuting) models only: the classification predicates, the
blockwise fixed-point sums, quotient counting for the classical symmetric
and hyperoctahedral groups, and the two-projection noncommutation witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import CapExceededError, ClassificationMismatchError
from .partitions import category, enumerate_category
from .weingarten import weingarten_matrix

DEFAULT_TOL = 1e-9


class MatrixClass(Enum):
    ORTHOGONAL = "orthogonal-isometry"
    MAGIC = "magic-isometry"
    CUBIC = "cubic-isometry"
    STOCHASTIC = "stochastic-isometry"


@dataclass(frozen=True)
class TruncatedMatrix:
    """The bottom rows of an n x n matrix: r = n - k rows, n columns."""

    entries: np.ndarray
    provenance: str = "user"

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2:
            raise ValueError("entries must be a 2-d array")
        r, n = a.shape
        if r < 1 or n < 1 or r > n:
            raise ValueError(f"need 1 <= rows <= cols, got {r} x {n}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def to_tsv(self):
        return "\n".join("\t".join(repr(float(x)) for x in row) for row in self.entries)

    @classmethod
    def from_tsv(cls, text, provenance="user"):
        rows = [[float(x) for x in line.split("\t")] for line in text.strip().splitlines()]
        return cls(np.array(rows), provenance)


def classify(m, tol=DEFAULT_TOL):
    """Set of matrix classes the truncation satisfies within tolerance.

    Every class includes row orthonormality; on top of that, magic needs
    idempotent entries with vanishing products down each column, cubic
    needs vanishing products of distinct entries along each row, and
    stochastic needs unit row sums.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = m.entries
    r = m.rows
    out = set()
    if np.max(np.abs(a @ a.T - np.eye(r))) > tol:
        return frozenset()
    out.add(MatrixClass.ORTHOGONAL)
    idempotent = np.max(np.abs(a * a - a)) <= tol
    col_disjoint = all(
        abs(a[i, c] * a[i2, c]) <= tol
        for c in range(m.cols)
        for i in range(r)
        for i2 in range(i + 1, r)
    )
    if idempotent and col_disjoint:
        out.add(MatrixClass.MAGIC)
    row_disjoint = all(
        abs(a[i, c] * a[i, c2]) <= tol
        for i in range(r)
        for c in range(m.cols)
        for c2 in range(c + 1, m.cols)
    )
    if row_disjoint:
        out.add(MatrixClass.CUBIC)
    if np.max(np.abs(a.sum(axis=1) - 1.0)) <= tol:
        out.add(MatrixClass.STOCHASTIC)
    return frozenset(out)


def magic_iff_cubic_stochastic(m, tol=DEFAULT_TOL):
    """True iff magic is equivalent to cubic-and-stochastic for this matrix."""
    cls = classify(m, tol)
    return (MatrixClass.MAGIC in cls) == (
        MatrixClass.CUBIC in cls and MatrixClass.STOCHASTIC in cls
    )


def _required_class(p):
    sizes = set(p.block_sizes())
    if sizes <= {2}:
        return MatrixClass.ORTHOGONAL
    if sizes <= {1, 2}:
        return MatrixClass.STOCHASTIC
    if all(b % 2 == 0 for b in sizes):
        return MatrixClass.CUBIC
    return MatrixClass.MAGIC


def fixed_point_sum_check(m, p, indices, tol=DEFAULT_TOL):
    """Blockwise fixed-point sums of entry products match the delta function.

    For each block of the (noncrossing) partition, the sum over a common
    column of the products of the selected rows' entries must equal 1 when
    the block's row indices agree and 0 otherwise; the product over blocks
    must equal delta(p, indices).  The matrix must classify into the class
    the partition's block sizes require.
    """
    indices = tuple(int(x) for x in indices)
    if len(indices) != p.points:
        raise ValueError("index tuple length must match the partition's points")
    for x in indices:
        if not (1 <= x <= m.rows):
            raise ValueError(f"row index {x} outside 1..{m.rows}")
    needed = _required_class(p)
    have = classify(m, tol)
    if needed not in have:
        raise ClassificationMismatchError(
            f"matrix classes {sorted(c.value for c in have)} lack required {needed.value}"
        )
    a = m.entries
    product = 1.0
    overall = 1
    for block in p.blocks:
        rows = [indices[t - 1] - 1 for t in block]
        col_products = np.ones(m.cols)
        for row in rows:
            col_products = col_products * a[row]
        block_sum = float(np.sum(col_products))
        block_delta = 1 if all(r == rows[0] for r in rows) else 0
        if abs(block_sum - block_delta) > tol:
            return False
        product *= block_sum
        overall &= block_delta
    return abs(product - overall) <= tol


def invariant_state_moment(cat, n, k, word):
    """The unique invariant state of the row algebra on a coordinate word.

    Letters are (row, column) pairs with row > k; the value is assembled
    from the category's partition pairs, collapsing each row sum through
    the blockwise fixed-point identity, and agrees with the Haar moment of
    the same word.
    """
    c = category(cat)
    if c.primed:
        raise ValueError("invariant states are defined for the unprimed categories only")
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    word = tuple((int(i), int(j)) for i, j in word)
    for i, j in word:
        if not (k < i <= n):
            raise ValueError(f"row index {i} must satisfy {k} < i <= {n}")
        if not (1 <= j <= n):
            raise ValueError(f"column index {j} outside 1..{n}")
    s = len(word)
    if s == 0:
        return Fraction(1)
    w = weingarten_matrix(c, s, n)
    rows = tuple(i for i, _ in word)
    cols = tuple(j for _, j in word)

    def constant_on_blocks(p, values):
        return all(
            all(values[t - 1] == values[block[0] - 1] for t in block) for block in p.blocks
        )

    total = Fraction(0)
    for a, p in enumerate(w.labels):
        if not constant_on_blocks(p, rows):
            continue
        for b, q in enumerate(w.labels):
            if constant_on_blocks(q, cols):
                total += w.entries[a][b]
    return total


def _signed_permutation_rows(group, n, k):
    """Deduplicated bottom (n-k)-row truncations, entries in {-1, 0, 1}."""
    if group == "S":
        cap = 8
        sign_sets = [(1,) * n]
    elif group == "H":
        cap = 5
        sign_sets = list(itertools.product((1, -1), repeat=n))
    else:
        raise ValueError(f"group must be 'S' or 'H', got {group!r}")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds cap {cap} for {group}")
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    seen = set()
    for perm in itertools.permutations(range(n)):
        for signs in sign_sets:
            bottom = tuple(
                tuple(signs[j] if perm[j] == i else 0 for j in range(n))
                for i in range(k, n)
            )
            seen.add(bottom)
    return seen


def count_truncations(group, n, k):
    """Number of distinct bottom-row truncations of the group's matrices."""
    return len(_signed_permutation_rows(group, n, k))


def truncation_matrices(group, n, k):
    """The distinct truncations as TruncatedMatrix values (needs k < n)."""
    return [
        TruncatedMatrix(np.array(rows, dtype=float), provenance=f"{group}:n={n},k={k}")
        for rows in sorted(_signed_permutation_rows(group, n, k))
    ]


def free_projection_witness(theta):
    """Norm of the commutator certifying two free projections do not commute.

    Uses the planar pair: q projects on the first axis, p projects on the
    line at angle theta; returns ||[q p q + q' p q', p]|| which has closed
    form |cos(theta) sin(theta) cos(2 theta)|.
    """
    c, s = math.cos(theta), math.sin(theta)
    q = np.array([[1.0, 0.0], [0.0, 0.0]])
    qp = np.eye(2) - q
    p = np.array([[c * c, c * s], [c * s, s * s]])
    mixed = q @ p @ q + qp @ p @ qp
    comm = mixed @ p - p @ mixed
    return float(np.linalg.norm(comm, 2))
