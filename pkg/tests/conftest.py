"""Shared fixtures: the recurring 7-partitions and small helpers."""

import itertools

import pytest

from dtvertex import MultiPartition


def axis_box_heights(arity):
    """Corner column of height 2 plus one box on every axis."""
    h = {(1,) * arity: 2}
    for i in range(arity):
        h[tuple(2 if j == i else 1 for j in range(arity))] = 1
    return h


@pytest.fixture
def seven_part_size9():
    """7-partition of size 9: corner height 2, one box per axis."""
    return MultiPartition(7, axis_box_heights(7))


@pytest.fixture
def seven_part_size10():
    """7-partition of size 10: corner height 3, one box per axis."""
    h = axis_box_heights(7)
    h[(1,) * 7] = 3
    return MultiPartition(7, h)


@pytest.fixture
def seven_part_size14():
    """7-partition of size 14: corner height 3, a 2-cube on the first
    three axes, one box on each remaining axis."""
    h = {(1,) * 7: 3}
    for sub in itertools.product([1, 2], repeat=3):
        if sub != (1, 1, 1):
            h[sub + (1,) * 4] = 1
    for i in range(3, 7):
        h[tuple(2 if j == i else 1 for j in range(7))] = 1
    return MultiPartition(7, h)


def single_box(arity):
    return MultiPartition(arity, {(1,) * arity: 1})


def corner_column(arity, height):
    return MultiPartition(arity, {(1,) * arity: height})
