"""Finite group duals inside the free unitary group: row-subgroup analysis.

Given a finite group with an ordered generator list, a unitary support
pattern and a cutoff k, compute the subgroup generated by the generators
visible below the cutoff, its normal closure, the quotient order, and
whether the generated-rows algebra already equals the full invariant
algebra (it does exactly when the subgroup is normal).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, DomainError

DEFAULT_CAP = 10**6


def identity_perm(degree):
    return tuple(range(degree))


def compose(a, b):
    """a after b: x -> a[b[x]]."""
    return tuple(a[x] for x in b)


def inverse(a):
    out = [0] * len(a)
    for x, y in enumerate(a):
        out[y] = x
    return tuple(out)


def parse_cycles(text, degree):
    """Parse 1-based cycle notation like ``(1 2)(3 4)``; blank is identity."""
    text = text.strip()
    out = list(range(degree))
    if not text or text == "()":
        return tuple(out)
    if not re.fullmatch(r"(\(\s*\d+(\s+\d+)*\s*\))+", text):
        raise ValueError(f"malformed cycle notation {text!r}")
    for body in re.findall(r"\(([^)]*)\)", text):
        points = [int(x) for x in body.split()]
        if len(set(points)) != len(points):
            raise ValueError(f"repeated point in cycle ({body})")
        for x in points:
            if not (1 <= x <= degree):
                raise ValueError(f"point {x} outside degree {degree}")
        for src, dst in zip(points, points[1:] + points[:1]):
            out[src - 1] = dst - 1
    return tuple(out)


def cycle_notation(perm):
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        parts.append("(" + " ".join(str(y + 1) for y in cyc) + ")")
    return "".join(parts) or "()"


@dataclass(frozen=True)
class FiniteGroup:
    degree: int
    elements: frozenset
    generators: tuple

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, perm):
        return perm in self.elements


def close_generators(gens, degree=None, cap=DEFAULT_CAP):
    """Subgroup generated by permutations, by breadth-first closure."""
    gens = [tuple(g) for g in gens]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of degree {degree}: {g}")
    if cap < 1:
        raise ValueError("cap must be positive")
    ident = identity_perm(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise CapExceededError(f"group closure exceeded cap {cap}")
        frontier = nxt
    return FiniteGroup(degree, frozenset(elements), tuple(gens))


def normal_closure(group, seed):
    """Smallest normal subgroup of `group` containing the seed elements.

    Closes the seed under conjugation by the group's generators, then takes
    the generated subgroup.
    """
    seed = [tuple(s) for s in seed]
    for s in seed:
        if s not in group.elements:
            raise ValueError("seed element outside the group")
    conj = set(seed)
    frontier = list(seed)
    while frontier:
        nxt = []
        for x in frontier:
            for g in group.generators:
                y = compose(compose(g, x), inverse(g))
                if y not in conj:
                    conj.add(y)
                    nxt.append(y)
        frontier = nxt
    closed = close_generators(sorted(conj), degree=group.degree, cap=group.order)
    return FiniteGroup(group.degree, closed.elements, tuple(sorted(conj)))


def is_normal(group, sub):
    """True iff the subgroup is normal in the group."""
    elems = sub.elements if isinstance(sub, FiniteGroup) else frozenset(sub)
    return all(
        compose(compose(g, x), inverse(g)) in elems
        for g in group.generators
        for x in elems
    )


def congruence_kernel(group, seed):
    """Elements identified with the identity when the seed is forced trivial.

    Independent route to the normal closure: union-find congruence closure
    on the multiplication table (merging each seed element with the
    identity and propagating left and right translations by generators).
    """
    elems = sorted(group.elements)
    index = {e: i for i, e in enumerate(elems)}
    parent = list(range(len(elems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    ident = identity_perm(group.degree)
    work = [(index[tuple(s)], index[ident]) for s in seed]
    while work:
        i, j = work.pop()
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        parent[ri] = rj
        a, b = elems[i], elems[j]
        for g in group.generators:
            work.append((index[compose(g, a)], index[compose(g, b)]))
            work.append((index[compose(a, g)], index[compose(b, g)]))
    root = find(index[ident])
    return frozenset(e for e in elems if find(index[e]) == root)


@dataclass(frozen=True)
class DualEmbedding:
    """A finite group with generator list, unitary support pattern, cutoff."""

    group: FiniteGroup
    pattern: tuple
    cutoff: int

    def __post_init__(self):
        n = len(self.group.generators)
        pattern = tuple(tuple(bool(x) for x in row) for row in self.pattern)
        if len(pattern) != n or any(len(row) != n for row in pattern):
            raise DomainError(f"pattern must be {n} x {n}")
        for r in range(n):
            if not any(pattern[r]):
                raise DomainError(f"pattern row {r + 1} is all zero; no unitary realizes it")
            if not any(row[r] for row in pattern):
                raise DomainError(f"pattern column {r + 1} is all zero; no unitary realizes it")
        if not (0 <= self.cutoff <= n):
            raise DomainError(f"cutoff must lie in 0..{n}")
        object.__setattr__(self, "pattern", pattern)

    @classmethod
    def from_unitary(cls, group, j, cutoff, tol=1e-9):
        """Validate an explicit real orthogonal matrix, keep only its support."""
        j = np.array(j, dtype=float)
        n = len(group.generators)
        if j.shape != (n, n):
            raise DomainError(f"matrix must be {n} x {n}")
        if np.max(np.abs(j @ j.T - np.eye(n))) > tol:
            raise DomainError("matrix is not orthogonal within tolerance")
        return cls(group, tuple(tuple(abs(x) > tol for x in row) for row in j), cutoff)


@dataclass(frozen=True)
class DualAnalysis:
    lambda_order: int
    lambda_closure_order: int
    theta_order: int
    isomorphism: bool

    @property
    def verdict(self):
        return "isomorphism" if self.isomorphism else "proper"

    def to_lines(self):
        return [
            f"lambda_order={self.lambda_order}",
            f"lambda_closure_order={self.lambda_closure_order}",
            f"theta_order={self.theta_order}",
            f"verdict={self.verdict}",
        ]


def analyze_embedding(emb):
    """Row-subgroup, normal closure and quotient orders for an embedding.

    A generator is visible when its pattern column has support below the
    cutoff; the visible generators generate the row subgroup, whose order
    is the dimension of the generated-rows algebra, while its normal
    closure's order is the dimension of the full invariant algebra.
    """
    group = emb.group
    n = len(group.generators)
    visible = [
        r
        for r in range(n)
        if any(emb.pattern[i][r] for i in range(emb.cutoff, n))
    ]
    lam = close_generators(
        [group.generators[r] for r in visible], degree=group.degree, cap=group.order
    )
    lam_prime = normal_closure(group, lam.elements)
    return DualAnalysis(
        lambda_order=lam.order,
        lambda_closure_order=lam_prime.order,
        theta_order=group.order // lam_prime.order,
        isomorphism=lam.order == lam_prime.order,
    )


def parse_embedding_file(text, cap=DEFAULT_CAP):
    """Parse the plain-text embedding description.

    Keys one per line: ``degree=``, ``k=``, ``generator=`` (repeated, cycle
    notation), then ``pattern=`` with n rows of 0/1 or ``J=`` with n rows
    of decimals; matrix rows may start on the key line or follow it.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    degree = None
    cutoff = None
    gen_texts = []
    matrix_kind = None
    matrix_rows = []
    i = 0
    while i < len(lines):
        line = lines[i]
        if "=" not in line:
            raise ValueError(f"expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "degree":
            degree = int(value)
        elif key == "k":
            cutoff = int(value)
        elif key == "generator":
            gen_texts.append(value)
        elif key in ("pattern", "J"):
            matrix_kind = key
            if value:
                matrix_rows.append(value)
            need = len(gen_texts)
            while len(matrix_rows) < need:
                i += 1
                if i >= len(lines):
                    raise ValueError(f"{key} needs {need} rows")
                matrix_rows.append(lines[i])
        else:
            raise ValueError(f"unknown key {key!r}")
        i += 1
    if degree is None or cutoff is None:
        raise ValueError("degree= and k= are required")
    if not gen_texts:
        raise ValueError("at least one generator= line is required")
    if matrix_kind is None:
        raise ValueError("pattern= or J= is required")
    gens = [parse_cycles(t, degree) for t in gen_texts]
    group = close_generators(gens, degree=degree, cap=cap)
    rows = [row.split() for row in matrix_rows]
    if matrix_kind == "pattern":
        for row in rows:
            for tok in row:
                if tok not in ("0", "1"):
                    raise ValueError(f"pattern entries must be 0/1, got {tok!r}")
        return DualEmbedding(group, tuple(tuple(tok == "1" for tok in row) for row in rows), cutoff)
    return DualEmbedding.from_unitary(group, [[float(t) for t in row] for row in rows], cutoff)
