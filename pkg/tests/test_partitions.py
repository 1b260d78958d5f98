import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqg.partitions import (
    CATEGORIES,
    UNPRIMED,
    SetPartition,
    all_partitions,
    block_removal_subpartitions,
    category,
    delta,
    enumerate_category,
    is_block_stable,
    is_noncrossing,
    join,
    kernel,
)

from _oracles import (
    bell,
    catalan,
    double_factorial,
    has_crossing,
    pairings_by_recursion,
    partitions_by_insertion,
)


@st.composite
def rgs_pairs(draw, max_points=6):
    s = draw(st.integers(min_value=0, max_value=max_points))

    def one():
        rgs, mx = [], -1
        for _ in range(s):
            v = draw(st.integers(min_value=0, max_value=mx + 1))
            rgs.append(v)
            mx = max(mx, v)
        return SetPartition.from_rgs(rgs)

    return one(), one()


def test_canonical_form_and_serialization():
    p = SetPartition(4, [[2, 4], [3, 1]])
    assert str(p) == "{1,3}{2,4}"
    assert SetPartition.from_string("{1,3}{2,4}") == p
    assert str(SetPartition(0, ())) == ""
    assert SetPartition.from_string("") == SetPartition(0, ())
    with pytest.raises(ValueError):
        SetPartition(3, [[1, 2]])
    with pytest.raises(ValueError):
        SetPartition(2, [[1, 2], [2]])
    with pytest.raises(ValueError):
        SetPartition.from_string("{1,3}{2")


def test_enumeration_matches_insertion_oracle():
    for s in range(7):
        ours = enumerate_category("S", s)
        oracle = {SetPartition(s, shape) for shape in partitions_by_insertion(s)}
        assert set(ours) == oracle
        assert len(ours) == bell(s)
        assert [p.rgs() for p in ours] == sorted(p.rgs() for p in ours)


def test_pairings_match_recursive_oracle():
    for s in range(8):
        ours = enumerate_category("O", s)
        if s % 2:
            assert ours == []
            continue
        oracle = {SetPartition(s, m) for m in pairings_by_recursion(list(range(1, s + 1)))}
        assert set(ours) == oracle
        assert len(ours) == double_factorial(s - 1)


def test_noncrossing_pairings_match_catalan():
    for s in range(0, 9, 2):
        ours = enumerate_category("Ofree", s)
        oracle = {
            SetPartition(s, m)
            for m in pairings_by_recursion(list(range(1, s + 1)))
            if not has_crossing(m)
        }
        assert set(ours) == oracle
        assert len(ours) == catalan(s // 2)


def test_prime_rule_and_empty_point_set():
    assert enumerate_category("Sprime", 3) == []
    assert enumerate_category("Sprime", 4) == enumerate_category("S", 4)
    assert enumerate_category("Bprime", 2) == enumerate_category("B", 2)
    for label in CATEGORIES:
        assert enumerate_category(label, 0) == [SetPartition(0, ())]


def test_unknown_category_rejected():
    with pytest.raises(ValueError):
        enumerate_category("X", 2)
    with pytest.raises(ValueError):
        enumerate_category("S", -1)


@pytest.mark.parametrize(
    "blocks, expected",
    [
        ([[1, 3], [2, 4]], False),
        ([[1, 4], [2, 3]], True),
        ([[1, 2, 3, 4, 5]], True),
        ([[1, 3, 5], [2], [4]], True),
        ([[1, 4], [2, 5], [3]], False),
    ],
)
def test_is_noncrossing_examples(blocks, expected):
    s = max(x for b in blocks for x in b)
    assert is_noncrossing(SetPartition(s, blocks)) is expected


@settings(max_examples=200, deadline=None)
@given(rgs_pairs())
def test_is_noncrossing_matches_brute_force(pair):
    p, _ = pair
    assert is_noncrossing(p) == (not has_crossing([list(b) for b in p.blocks]))


def test_join_examples():
    p = SetPartition(4, [[1, 2], [3, 4]])
    q = SetPartition(4, [[2, 3], [1, 4]])
    joined, count = join(p, q)
    assert joined == SetPartition(4, [[1, 2, 3, 4]]) and count == 1
    assert join(p, p) == (p, 2)
    discrete = SetPartition(3, [[1], [2], [3]])
    other = SetPartition(3, [[1, 2], [3]])
    assert join(discrete, other) == (other, 2)
    with pytest.raises(ValueError):
        join(p, discrete)


@settings(max_examples=200, deadline=None)
@given(rgs_pairs())
def test_join_properties(pair):
    p, q = pair
    jpq, npq = join(p, q)
    jqp, _ = join(q, p)
    assert jpq == jqp
    assert npq <= min(p.n_blocks, q.n_blocks)
    assert join(p, p) == (p, p.n_blocks)
    assert join(jpq, p) == (jpq, npq)


@settings(max_examples=150, deadline=None)
@given(rgs_pairs(max_points=5), st.data())
def test_delta_factors_through_join(pair, data):
    p, q = pair
    s = p.points
    indices = tuple(data.draw(st.integers(min_value=1, max_value=3)) for _ in range(s))
    joined, _ = join(p, q)
    assert (delta(p, indices) and delta(q, indices)) == bool(delta(joined, indices))


def test_delta_examples():
    pair_block = SetPartition(2, [[1, 2]])
    assert delta(pair_block, (1, 1)) == 1
    assert delta(pair_block, (1, 2)) == 0
    discrete = SetPartition(3, [[1], [2], [3]])
    assert delta(discrete, (4, 1, 4)) == 1
    with pytest.raises(ValueError):
        delta(pair_block, (1,))


def test_kernel_round_trip():
    p = SetPartition(4, [[1, 3], [2], [4]])
    values = (7, 2, 7, 9)
    assert kernel(values) == p
    assert delta(p, values) == 1


def test_block_removal_examples():
    p = SetPartition(3, [[1, 2], [3]])
    assert block_removal_subpartitions(p) == frozenset(
        {
            p,
            SetPartition(2, [[1, 2]]),
            SetPartition(1, [[1]]),
            SetPartition(0, ()),
        }
    )
    single = SetPartition(4, [[1, 2, 3, 4]])
    assert block_removal_subpartitions(single) == frozenset({single, SetPartition(0, ())})
    discrete2 = SetPartition(2, [[1], [2]])
    assert block_removal_subpartitions(discrete2) == frozenset(
        {discrete2, SetPartition(1, [[1]]), SetPartition(0, ())}
    )


@settings(max_examples=150, deadline=None)
@given(rgs_pairs())
def test_block_removal_preserves_noncrossing(pair):
    p, _ = pair
    if not is_noncrossing(p):
        return
    assert all(is_noncrossing(sub) for sub in block_removal_subpartitions(p))


@pytest.mark.parametrize("label", UNPRIMED)
def test_unprimed_categories_block_stable(label):
    stable, witness = is_block_stable(label, 6)
    assert stable and witness is None


@pytest.mark.parametrize("label", ["Sprime", "Bprime"])
def test_primed_categories_fail_block_stability(label):
    stable, witness = is_block_stable(label, 2)
    assert not stable
    part, removed, offending = witness
    assert part == SetPartition(2, [[1], [2]])
    assert removed == ((1,),) or removed == ((2,),)
    assert offending == SetPartition(1, [[1]])
    assert not category(label).contains(offending)


def test_block_stability_bound_validated():
    with pytest.raises(ValueError):
        is_block_stable("S", 0)
