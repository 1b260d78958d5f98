"""Acceptance suite: one test per criterion, printing a PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import itertools
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np
import pytest

from eqg.errors import SingularGramError
from eqg.group_dual import (
    DualEmbedding,
    analyze_embedding,
    close_generators,
    compose,
    is_normal,
    normal_closure,
    parse_cycles,
)
from eqg.homspace import (
    MatrixClass,
    TruncatedMatrix,
    classify,
    count_truncations,
    free_projection_witness,
    invariant_state_moment,
    magic_iff_cubic_stochastic,
    truncation_matrices,
)
from eqg.oracle import (
    exact_group_average,
    mc_bistochastic_average,
    mc_orthogonal_average,
)
from eqg.partitions import UNPRIMED, SetPartition, delta, enumerate_category, is_block_stable, join
from eqg.sampling import sample_orthogonal
from eqg.weingarten import character_moment, gram_matrix, haar_moment, weingarten_matrix

from _oracles import kernel_representative


@contextmanager
def criterion(number, label):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {number:02d} ({label}): FAIL ({time.monotonic() - start:.1f}s)")
        raise
    print(f"criterion {number:02d} ({label}): PASS ({time.monotonic() - start:.1f}s)")


def kernel_pairs(s, n):
    """One index tuple per kernel partition with at most n distinct values."""
    reps = [
        kernel_representative(p)
        for p in enumerate_category("S", s)
        if p.n_blocks <= n
    ]
    return [(r, c) for r in reps for c in reps]


def test_criterion_01_symmetric_group_oracle():
    with criterion(1, "Weingarten equals exact symmetric-group averages"):
        for n in (3, 4, 5):
            for s in range(5):
                if n < s:
                    # Gram matrix singular (rank drops below Bell(s));
                    # the moment formula is out of domain exactly here.
                    with pytest.raises(SingularGramError):
                        weingarten_matrix("S", s, n)
                    continue
                for rows, cols in kernel_pairs(s, n):
                    word = tuple(zip(rows, cols))
                    assert haar_moment("S", n, word) == exact_group_average("S", n, word)


def test_criterion_02_hyperoctahedral_group_oracle():
    with criterion(2, "Weingarten equals exact hyperoctahedral averages"):
        for n in (2, 3):
            for s in range(5):
                for rows, cols in kernel_pairs(s, n):
                    word = tuple(zip(rows, cols))
                    assert haar_moment("H", n, word) == exact_group_average("H", n, word)


MC_WORDS = [
    ((1, 1),),
    ((1, 2),),
    ((1, 1), (1, 1)),
    ((1, 1), (2, 2)),
    ((1, 1), (2, 1)),
    ((1, 2), (3, 4)),
    ((1, 1), (1, 1), (1, 1)),
    ((1, 1), (1, 1), (2, 2)),
    ((1, 1), (1, 1), (2, 2), (2, 2)),
    ((1, 2), (2, 1), (1, 2), (2, 1)),
]


def test_criterion_03_monte_carlo_oracle():
    with criterion(3, "Monte Carlo matches Weingarten for O and B at n=4"):
        n, samples = 4, 100_000
        for index, word in enumerate(MC_WORDS):
            report = mc_orthogonal_average(n, word, samples, seed=100 + index)
            exact = float(haar_moment("O", n, word))
            assert abs(report.mean - exact) <= max(4 * report.stderr, 0.01)
            report = mc_bistochastic_average(n, word, samples, seed=200 + index)
            exact = float(haar_moment("B", n, word))
            assert abs(report.mean - exact) <= max(4 * report.stderr, 0.01)


def test_criterion_04_character_moment_trace_identity():
    with criterion(4, "character moments count the category, s <= 6, n = 7"):
        for label in UNPRIMED:
            for s in range(7):
                assert character_moment(label, 7, s) == len(enumerate_category(label, s))


def test_criterion_05_block_stability():
    with criterion(5, "block-removal stability splits unprimed from primed"):
        for label in UNPRIMED:
            stable, witness = is_block_stable(label, 6)
            assert stable and witness is None
        for label in ("Sprime", "Bprime"):
            stable, witness = is_block_stable(label, 6)
            assert not stable
            part, _removed, offending = witness
            assert part.points == 2
            assert offending == SetPartition(1, [[1]])


def test_criterion_06_truncation_counts():
    with criterion(6, "truncation counts match n!/k! and 2^(n-k) n!/k!"):
        for n in range(7):
            for k in range(n + 1):
                assert count_truncations("S", n, k) == math.factorial(n) // math.factorial(k)
        for n in range(5):
            for k in range(n + 1):
                expected = 2 ** (n - k) * math.factorial(n) // math.factorial(k)
                assert count_truncations("H", n, k) == expected


def identity_pattern(n):
    return tuple(tuple(i == j for j in range(n)) for i in range(n))


def test_criterion_07_group_dual_suite():
    with criterion(7, "group-dual verdicts: worked examples plus 50 random"):
        s3 = close_generators(
            [parse_cycles("(1 2)", 3), parse_cycles("(1 3)", 3), parse_cycles("(2 3)", 3)]
        )
        result = analyze_embedding(DualEmbedding(s3, identity_pattern(3), 2))
        assert (
            result.lambda_order,
            result.lambda_closure_order,
            result.theta_order,
            result.verdict,
        ) == (2, 6, 1, "proper")

        c4 = parse_cycles("(1 2 3 4)", 4)
        z4 = close_generators([c4, compose(c4, c4)])
        result = analyze_embedding(DualEmbedding(z4, identity_pattern(2), 1))
        assert (
            result.lambda_order,
            result.lambda_closure_order,
            result.theta_order,
            result.verdict,
        ) == (2, 2, 2, "isomorphism")

        rng = random.Random(7_2025)
        for _ in range(50):
            degree = rng.randint(3, 6)
            n = rng.randint(2, 4)
            gens = []
            for _ in range(n):
                perm = list(range(degree))
                rng.shuffle(perm)
                gens.append(tuple(perm))
            group = close_generators(gens, cap=5000)
            assert group.order <= 5000
            pattern = [[rng.random() < 0.35 for _ in range(n)] for _ in range(n)]
            for i in range(n):
                pattern[i][i] = True
            k = rng.randint(0, n)
            emb = DualEmbedding(group, tuple(tuple(row) for row in pattern), k)
            analysis = analyze_embedding(emb)
            visible = [r for r in range(n) if any(emb.pattern[i][r] for i in range(k, n))]
            lam = close_generators([gens[r] for r in visible], degree=degree)
            lam_prime = normal_closure(group, lam.elements)
            assert analysis.isomorphism == is_normal(group, lam)
            assert analysis.isomorphism == (lam.order == lam_prime.order)
            assert analysis.lambda_order == lam.order
            assert analysis.lambda_closure_order == lam_prime.order


def test_criterion_08_gram_identities():
    with criterion(8, "Gram entries are inner products and W G = 1 exactly"):
        for label in UNPRIMED:
            for n in (1, 2, 3):
                for s in range(5):
                    parts = enumerate_category(label, s)
                    for p, q in itertools.product(parts, repeat=2):
                        brute = sum(
                            delta(p, idx) * delta(q, idx)
                            for idx in itertools.product(range(1, n + 1), repeat=s)
                        )
                        assert brute == n ** join(p, q)[1]
                    try:
                        w = weingarten_matrix(label, s, n)
                    except SingularGramError:
                        continue
                    assert (w @ gram_matrix(label, s, n)).is_identity()


def test_criterion_09_invariant_state_consistency():
    with criterion(9, "invariant states equal Haar moments on random words"):
        rng = random.Random(99)
        for _ in range(100):
            label = rng.choice(["Ofree", "Sfree", "Hfree", "Bfree"])
            n = rng.randint(4, 6)
            k = rng.randint(0, n - 1)
            s = rng.randint(0, 4)
            word = tuple((rng.randint(k + 1, n), rng.randint(1, n)) for _ in range(s))
            assert invariant_state_moment(label, n, k, word) == haar_moment(label, n, word)


def test_criterion_10_projection_witness():
    with criterion(10, "noncommutation witness matches its closed form"):
        for theta in np.linspace(0.0, math.pi, 100):
            closed = abs(math.cos(theta) * math.sin(theta) * math.cos(2.0 * theta))
            assert abs(free_projection_witness(theta) - closed) <= 1e-12
        assert free_projection_witness(math.pi / 6) == pytest.approx(math.sqrt(3) / 8, abs=1e-12)
        assert free_projection_witness(math.pi / 6) > 0.2
        for theta in (0.0, math.pi / 4, math.pi / 2):
            assert abs(free_projection_witness(theta)) <= 1e-12


def test_criterion_11_singular_case_handling():
    with criterion(11, "singular Gram raises with its rank; nearby case succeeds"):
        with pytest.raises(SingularGramError) as info:
            weingarten_matrix("S", 3, 2)
        assert info.value.rank == 4
        w = weingarten_matrix("S", 3, 3)
        assert (w @ gram_matrix("S", 3, 3)).is_identity()


def test_criterion_12_magic_equivalence():
    with criterion(12, "magic iff cubic and stochastic, models plus random"):
        for group, cap in (("S", 4), ("H", 4)):
            for n in range(1, cap + 1):
                for k in range(n):
                    for m in truncation_matrices(group, n, k):
                        assert magic_iff_cubic_stochastic(m)
        samples = sample_orthogonal(4, 1000, seed=1234)
        for index, q in enumerate(samples):
            r = (index % 4) + 1
            m = TruncatedMatrix(q[4 - r :], provenance=f"random truncation {index}")
            assert magic_iff_cubic_stochastic(m)
