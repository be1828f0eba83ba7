import itertools

import pytest

from cylschur.partitions import (
    HalfInt,
    Partition,
    conjugate,
    enumerate_partitions,
    hook_lengths,
    is_horizontal_strip,
    is_vertical_strip,
    maya_contains,
    parse_partition,
    partitions_of,
)

ALL10 = enumerate_partitions(10)
ALL8 = enumerate_partitions(8)


def test_conjugate_examples():
    assert conjugate((5, 4, 4, 3, 1, 1, 1)) == Partition((7, 4, 4, 3, 1))
    assert conjugate(()) == Partition(())
    assert conjugate((3,)) == Partition((1, 1, 1))


def test_hook_examples():
    assert sorted(hook_lengths((1,))) == [1]
    assert sorted(hook_lengths((2, 1))) == [1, 1, 3]
    assert hook_lengths(()) == []


def test_horizontal_strip_examples():
    assert is_horizontal_strip((11, 2, 1), (5, 1))
    assert is_horizontal_strip((4, 2), (4, 2))
    assert not is_horizontal_strip((2, 2), (1,))


def test_maya_examples():
    assert not maya_contains((), 0, 0.5)
    assert maya_contains((3,), 0, 2.5)
    assert maya_contains((1, 1), 0, -0.5)


def test_enumeration_counts_and_order():
    assert enumerate_partitions(0) == [Partition(())]
    assert enumerate_partitions(1) == [Partition(()), Partition((1,))]
    assert len(enumerate_partitions(4)) == 12
    assert [len(partitions_of(n)) for n in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    norms = [p.norm for p in ALL10]
    assert norms == sorted(norms)


def test_invalid_partition_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_parse_partition_roundtrip():
    assert parse_partition("(5,4,1)") == Partition((5, 4, 1))
    assert parse_partition("()") == Partition(())


def test_half_integer_storage_is_odd():
    assert HalfInt(3).twice_value == 3
    with pytest.raises(ValueError):
        HalfInt(4)


def test_conjugation_is_involution():
    for p in ALL10:
        assert conjugate(conjugate(p)) == p


def test_hooks_conjugation_invariant():
    for p in ALL10:
        assert sorted(hook_lengths(p)) == sorted(hook_lengths(conjugate(p)))


def test_strip_duality():
    for big, small in itertools.product(ALL8, repeat=2):
        if small.norm > big.norm:
            continue
        assert is_horizontal_strip(big, small) == is_vertical_strip(conjugate(big), conjugate(small))


def test_maya_injective():
    seen = {}
    for p in ALL8:
        lo = -(8 + 1)
        key = tuple(x for x in range(lo, 20) if maya_contains(p, 0, x + 0.5))
        assert key not in seen
        seen[key] = p
