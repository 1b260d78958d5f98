"""Independent ground truth for the Weingarten engine.

Exact Haar averages over the finite classical groups (permutation and
signed-permutation matrices) by full enumeration, and seeded Monte Carlo
over the orthogonal and bistochastic-orthogonal groups.

Monte Carlo contract: samples are split into shards with sub-seeds
``seed + shard_index`` and reduced in shard order, so a report depends only
on (seed, samples, shards) and never on the worker count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapExceededError
from .sampling import sample_bistochastic, sample_orthogonal

SYMMETRIC_CAP = 8
HYPEROCTAHEDRAL_CAP = 5


@dataclass(frozen=True)
class SampleReport:
    """Monte Carlo estimate: mean, stderr = sample std / sqrt(samples)."""

    mean: float
    stderr: float
    samples: int
    seed: int

    def to_tsv(self):
        return f"{self.mean!r}\t{self.stderr!r}\t{self.samples}\t{self.seed}"


def _check_word(word, n):
    word = tuple((int(i), int(j)) for i, j in word)
    for i, j in word:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"letter ({i},{j}) outside 1..{n}")
    return word


def exact_group_average(group, n, word):
    """Exact average of a product of matrix entries over S_n or H_n.

    The matrix of a group element g has entry (i, j) equal to the sign
    carried by column j when g maps j to i, so the average runs over all
    n! permutation matrices (group "S") or all 2^n n! signed permutation
    matrices (group "H").
    """
    if group == "S":
        if n > SYMMETRIC_CAP:
            raise CapExceededError(f"n={n} exceeds cap {SYMMETRIC_CAP} for S")
        sign_sets = [(1,) * n]
    elif group == "H":
        if n > HYPEROCTAHEDRAL_CAP:
            raise CapExceededError(f"n={n} exceeds cap {HYPEROCTAHEDRAL_CAP} for H")
        sign_sets = list(itertools.product((1, -1), repeat=n))
    else:
        raise ValueError(f"group must be 'S' or 'H', got {group!r}")
    if n < 1:
        raise ValueError("dimension must be >= 1")
    word = _check_word(word, n)
    total = 0
    order = 0
    for perm in itertools.permutations(range(n)):
        hits = all(perm[j - 1] == i - 1 for i, j in word)
        for signs in sign_sets:
            order += 1
            if not hits:
                continue
            value = 1
            for _, j in word:
                value *= signs[j - 1]
            total += value
    return Fraction(total, order)


def _word_values(matrices, word):
    vals = np.ones(matrices.shape[0])
    for i, j in word:
        vals = vals * matrices[:, i - 1, j - 1]
    return vals


def _shard_sizes(samples, shards):
    base, extra = divmod(samples, shards)
    return [base + (1 if i < extra else 0) for i in range(shards)]


def _mc_average(sampler, n, word, samples, seed, shards, workers, backend):
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    word = _check_word(word, n)
    seed = int(seed)
    sizes = _shard_sizes(samples, shards)

    def run(shard):
        count = sizes[shard]
        if count == 0:
            return 0.0, 0.0
        mats = sampler(n, count, seed + shard, backend=backend)
        vals = _word_values(mats, word)
        return float(np.sum(vals)), float(np.sum(vals * vals))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, range(shards)))
    else:
        partials = [run(i) for i in range(shards)]
    total = 0.0
    total_sq = 0.0
    for part_sum, part_sq in partials:  # fixed-order reduction
        total += part_sum
        total_sq += part_sq
    mean = total / samples
    if samples > 1:
        var = max(0.0, (total_sq - samples * mean * mean) / (samples - 1))
        stderr = math.sqrt(var) / math.sqrt(samples)
    else:
        stderr = 0.0
    return SampleReport(mean, stderr, samples, seed)


def mc_orthogonal_average(n, word, samples, seed, shards=1, workers=1, backend=None):
    """Monte Carlo mean of a word over Haar orthogonal matrices."""
    return _mc_average(sample_orthogonal, n, word, samples, seed, shards, workers, backend)


def mc_bistochastic_average(n, word, samples, seed, shards=1, workers=1, backend=None):
    """Monte Carlo mean of a word over Haar bistochastic orthogonal matrices."""
    if n < 2:
        raise ValueError("bistochastic sampling needs dimension >= 2")
    return _mc_average(sample_bistochastic, n, word, samples, seed, shards, workers, backend)
