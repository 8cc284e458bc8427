"""Partition representation, enumeration, and symmetry reduction."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtvertex import (
    ArityMismatch,
    MultiPartition,
    binary_rep_contains,
    canonical_representatives,
    canonicalize_axes,
    character,
    count_by_binomial_formula,
    count_partitions,
    enumerate_partitions,
    orbit,
    orbit_size,
)
from dtvertex.partitions import brute_force_downsets

from conftest import corner_column, single_box


@pytest.mark.parametrize(
    "arity,size",
    [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)],
)
def test_counts_match_downset_oracle(arity, size):
    # independent oracle: downward-closed box sets enumerated by brute force
    assert len(enumerate_partitions(arity, size)) == brute_force_downsets(arity, size)


@pytest.mark.parametrize("n", range(1, 13))
def test_counts_match_closed_form(n):
    counts = count_partitions(n, 6)
    assert counts == [count_by_binomial_formula(n, s) for s in range(7)]


def test_enumerate_examples():
    assert len(enumerate_partitions(1, 4)) == 5
    assert len(enumerate_partitions(7, 1)) == 1
    assert len(enumerate_partitions(7, 6)) == 2024


def test_enumerate_size_zero():
    out = enumerate_partitions(3, 0)
    assert out == [MultiPartition(3)]
    assert out[0].is_empty() and out[0].size == 0


def test_enumeration_is_sorted_and_duplicate_free():
    for arity, size in [(2, 5), (3, 4), (4, 3)]:
        parts = enumerate_partitions(arity, size)
        keys = [p.key() for p in parts]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)
        assert all(p.size == size for p in parts)


def test_count_examples():
    assert count_partitions(2, 4) == [1, 1, 3, 6, 13]
    assert count_partitions(5, 0) == [1]
    assert count_partitions(11, 4)[-1] == 430


def test_character_single_box():
    k = character(single_box(2), 3)
    assert k.terms == {(0, 0, 0): 1}


def test_character_column():
    k = character(corner_column(3, 2), 4)
    assert k.terms == {(0, 0, 0, 0): 1, (0, 0, 0, 1): 1}


def test_character_axis_box_partition(seven_part_size9):
    k = character(seven_part_size9, 8)
    expected = {(0,) * 8: 1}
    for i in range(8):
        expected[tuple(1 if j == i else 0 for j in range(8))] = 1
    assert k.terms == expected


def test_character_counts_boxes():
    for pi in enumerate_partitions(3, 4):
        assert character(pi, 4).rank() == 4


def test_character_arity_mismatch():
    with pytest.raises(ArityMismatch):
        character(single_box(2), 4)


def test_corner_height(seven_part_size9):
    assert MultiPartition(4).corner_height() == 0
    assert single_box(3).corner_height() == 1
    assert seven_part_size9.corner_height() == 2


def test_cells_membership():
    pi = corner_column(2, 2)
    assert pi.contains_cell((0, 0, 0)) and pi.contains_cell((0, 0, 1))
    assert not pi.contains_cell((0, 0, 2))
    assert not pi.contains_cell((1, 0, 0))


def test_canonicalize_moves_box_to_first_axis():
    # character 1 + t_2 in dimension 4 canonicalizes to character 1 + t_1
    pi = MultiPartition(3, {(1, 1, 1): 1, (1, 2, 1): 1})
    canon, perm = canonicalize_axes(pi)
    assert canon == MultiPartition(3, {(1, 1, 1): 1, (2, 1, 1): 1})
    assert perm[1] == 0


def test_canonicalize_idempotent():
    for size in range(4):
        for pi in enumerate_partitions(3, size):
            canon, _ = canonicalize_axes(pi)
            again, perm = canonicalize_axes(canon)
            assert again == canon
            assert perm == tuple(range(3))


def test_canonicalize_orbit_invariant():
    for pi in enumerate_partitions(3, 3):
        canon, _ = canonicalize_axes(pi)
        for member in orbit(pi):
            assert canonicalize_axes(member)[0] == canon


def test_orbit_sizes_cover_the_count():
    for arity, size in [(2, 4), (3, 4), (7, 3), (11, 3)]:
        reps = canonical_representatives(arity, size)
        assert sum(c for _, c in reps) == len(enumerate_partitions(arity, size))
        for rep, c in reps:
            assert orbit_size(rep) == c
            assert len(orbit(rep)) == c


def test_binary_rep_examples():
    box = single_box(1)
    assert binary_rep_contains(box, (1, 1)) == 1
    assert binary_rep_contains(box, (1, 2)) == 0
    tall = corner_column(1, 3)
    assert binary_rep_contains(tall, (1, 3)) == 1
    assert binary_rep_contains(tall, (1, 4)) == 0
    with pytest.raises(ArityMismatch):
        binary_rep_contains(box, (1, 1, 1))
    with pytest.raises(ValueError):
        binary_rep_contains(box, (0, 1))


def test_validation_rejects_bad_input():
    with pytest.raises(ValueError):
        MultiPartition(2, {(2, 1): 1})  # support not closed toward the corner
    with pytest.raises(ValueError):
        MultiPartition(2, {(1, 1): 1, (2, 1): 2})  # increases along axis 1
    with pytest.raises(ValueError):
        MultiPartition(2, {(1, 1): -1})
    with pytest.raises(ValueError):
        MultiPartition(2, {(0, 1): 1})
    with pytest.raises(ValueError):
        MultiPartition(2, {(1, 1, 1): 1})
    with pytest.raises(ValueError):
        MultiPartition(0)


_POOL = [
    (arity, size) for arity in (1, 2, 3) for size in (1, 2, 3, 4)
]


@settings(max_examples=120, deadline=None)
@given(
    pool=st.sampled_from(_POOL),
    pick=st.integers(min_value=0, max_value=10**6),
    entry=st.integers(min_value=0, max_value=10**6),
    axis=st.integers(min_value=0, max_value=10**6),
)
def test_fuzz_monotonicity_violations_rejected(pool, pick, entry, axis):
    # raise a successor entry above its predecessor: must always be rejected
    arity, size = pool
    parts = enumerate_partitions(arity, size)
    pi = parts[pick % len(parts)]
    idx = sorted(pi.heights)[entry % len(pi.heights)]
    j = axis % arity
    succ = idx[:j] + (idx[j] + 1,) + idx[j + 1 :]
    heights = dict(pi.heights)
    heights[succ] = heights[idx] + 1
    with pytest.raises(ValueError):
        MultiPartition(arity, heights)


def test_serialization_roundtrip(seven_part_size14):
    for pi in enumerate_partitions(2, 4) + [seven_part_size14]:
        obj = pi.to_json_obj()
        assert MultiPartition.from_json_obj(obj) == pi
        assert json.loads(pi.serialize()) == obj["entries"]


def test_bounded_enumeration():
    bound = {(1, 1): 2, (1, 2): 1, (2, 1): 1}
    for size in range(1, 5):
        for pi in enumerate_partitions(2, size, bound=bound):
            assert all(pi.height_at(i) <= h for i, h in bound.items())
            assert all(i in bound for i in pi.heights)
    assert len(enumerate_partitions(2, 4, bound=bound)) == 1
