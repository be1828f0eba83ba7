"""Integer partitions, hooks, horizontal strips and Maya coordinates.

Half-integers are stored doubled (``2x`` is an odd integer) so that all
lattice bookkeeping stays exact.  The :class:`PartitionTable` at the bottom
is the vectorized backbone used by the brute-force oracles.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Partition",
    "HalfInt",
    "as_partition",
    "as_twice",
    "parse_partition",
    "conjugate",
    "hook_lengths",
    "is_horizontal_strip",
    "is_vertical_strip",
    "contains",
    "maya_contains",
    "maya_positions",
    "enumerate_partitions",
    "partitions_of",
    "PartitionTable",
    "partition_table",
]


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()
    norm: int = field(init=False, compare=False)
    length: int = field(init=False, compare=False)

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "norm", sum(parts))
        object.__setattr__(self, "length", len(parts))

    def __getitem__(self, i: int) -> int:
        """Zero-based part access, returning 0 past the last part."""
        return self.parts[i] if 0 <= i < len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


class HalfInt:
    """An element of Z + 1/2, stored as its odd double."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        twice_value = int(twice_value)
        if twice_value % 2 == 0:
            raise ValueError("twice_value must be odd")
        self.twice_value = twice_value

    @classmethod
    def from_value(cls, x) -> "HalfInt":
        return cls(as_twice(x))

    def __float__(self) -> float:
        return self.twice_value / 2

    def __eq__(self, other) -> bool:
        return isinstance(other, HalfInt) and other.twice_value == self.twice_value

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice_value))

    def __repr__(self) -> str:
        return f"HalfInt({self.twice_value}/2)"


def as_twice(x) -> int:
    """Return ``2x`` for a half-integer given as HalfInt, float or Fraction."""
    if isinstance(x, HalfInt):
        return x.twice_value
    tw = 2 * x
    k = int(round(float(tw)))
    if abs(float(tw) - k) > 1e-9 or k % 2 == 0:
        raise ValueError(f"{x!r} is not a half-integer")
    return k


def as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return parse_partition(p)
    return Partition(tuple(p))


_PART_RE = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*\)$")


def parse_partition(text: str) -> Partition:
    """Parse the textual form ``(5,4,1)``; ``()`` is the empty partition."""
    text = text.strip()
    if not _PART_RE.match(text):
        raise ValueError(f"bad partition literal {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return Partition(())
    return Partition(tuple(int(v) for v in inner.split(",")))


def conjugate(p) -> Partition:
    p = as_partition(p)
    if not p.parts:
        return p
    return Partition(tuple(sum(1 for q in p.parts if q > j) for j in range(p.parts[0])))


def hook_lengths(p) -> list[int]:
    """Hook lengths of all boxes, row by row."""
    p = as_partition(p)
    pc = conjugate(p)
    return [
        (p[i] - j - 1) + (pc[j] - i - 1) + 1
        for i in range(p.length)
        for j in range(p[i])
    ]


def is_horizontal_strip(big, small) -> bool:
    """True iff ``big`` is obtained from ``small`` by adding a horizontal strip."""
    big, small = as_partition(big), as_partition(small)
    if small.length > big.length:
        return False
    return all(big[i] >= small[i] >= big[i + 1] for i in range(big.length))


def is_vertical_strip(big, small) -> bool:
    big, small = as_partition(big), as_partition(small)
    return contains(big, small) and all(
        big[i] - small[i] <= 1 for i in range(big.length)
    )


def contains(big, small) -> bool:
    big, small = as_partition(big), as_partition(small)
    return small.length <= big.length and all(
        small[i] <= big[i] for i in range(small.length)
    )


def maya_contains(p, shift: int, x) -> bool:
    """Membership of ``x`` in ``{shift + p_i - i + 1/2}``."""
    p = as_partition(p)
    tx = as_twice(x) - 2 * int(shift)
    # tx = 2(p_i - i) + 1 for some i >= 1
    if tx <= -2 * p.length - 1:
        return True
    return any(2 * (p[i] - i - 1) + 1 == tx for i in range(p.length))


def maya_positions(p, shift: int = 0, depth: int | None = None) -> list[int]:
    """Doubled Maya points of ``p`` down to row ``depth`` (default length+1)."""
    p = as_partition(p)
    depth = p.length + 1 if depth is None else depth
    return [2 * (shift + p[i] - i - 1) + 1 for i in range(depth)]


def partitions_of(n: int) -> list[tuple[int, ...]]:
    """Partitions of ``n`` in ascending lexicographic order."""
    return list(_partitions_of(n))


@lru_cache(maxsize=None)
def _partitions_of(n: int) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []

    def rec(rem: int, cap: int, prefix: tuple[int, ...]):
        if rem == 0:
            out.append(prefix)
            return
        for first in range(min(rem, cap), 0, -1):
            rec(rem - first, first, prefix + (first,))

    rec(n, n, ())
    out.sort()
    return tuple(out)


def enumerate_partitions(max_norm: int) -> list[Partition]:
    """All partitions of norm at most ``max_norm`` in (norm, lex) order."""
    if max_norm < 0:
        raise ValueError("max_norm must be nonnegative")
    return [Partition(p) for n in range(max_norm + 1) for p in _partitions_of(n)]


class PartitionTable:
    """Indexed array view of all partitions with norm at most ``max_norm``.

    ``parts`` is a zero-padded integer array of shape ``(count, max_norm + 1)``
    so Maya indicators of a whole table are one vectorized comparison.
    """

    def __init__(self, max_norm: int):
        if max_norm < 0:
            raise ValueError("max_norm must be nonnegative")
        self.max_norm = max_norm
        self.tuples: list[tuple[int, ...]] = [
            p for n in range(max_norm + 1) for p in _partitions_of(n)
        ]
        self.index = {p: i for i, p in enumerate(self.tuples)}
        self.count = len(self.tuples)
        width = max_norm + 1
        parts = np.zeros((self.count, width), dtype=np.int64)
        for i, p in enumerate(self.tuples):
            parts[i, : len(p)] = p
        self.parts = parts
        self.norms = parts.sum(axis=1)
        # doubled Maya coordinates 2(p_i - i) + 1 with 1-based i
        self._maya = 2 * (parts - np.arange(1, width + 1)) + 1

    def __len__(self) -> int:
        return self.count

    def partition(self, i: int) -> Partition:
        return Partition(self.tuples[i])

    def maya_mask(self, x, shift: int = 0) -> np.ndarray:
        """Boolean array: which partitions have ``x`` in their shifted Maya set."""
        tx = as_twice(x) - 2 * int(shift)
        width = self.max_norm + 1
        if tx < -2 * width + 1:
            return np.ones(self.count, dtype=bool)
        return np.any(self._maya == tx, axis=1)

    def strip_pairs(self):
        """Index arrays ``(big, small)`` over all horizontal strips in the table."""
        return _strip_pairs(self.max_norm)

    def containment_pairs(self):
        """Index arrays ``(big, small)`` over all pairs with small inside big."""
        return _containment_pairs(self.max_norm)


@lru_cache(maxsize=8)
def partition_table(max_norm: int) -> PartitionTable:
    return PartitionTable(max_norm)


def _boxed_below(caps_hi: Sequence[int], caps_lo: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Weakly decreasing sequences ``m`` with ``caps_lo[i] <= m[i] <= caps_hi[i]``."""
    n = len(caps_hi)

    def rec(i: int, prev: int, prefix: tuple[int, ...]):
        if i == n:
            yield prefix
            return
        hi = min(caps_hi[i], prev)
        for v in range(caps_lo[i], hi + 1):
            yield from rec(i + 1, v, prefix + (v,))

    yield from rec(0, caps_hi[0] if n else 0, ())


def _trim(seq: tuple[int, ...]) -> tuple[int, ...]:
    end = len(seq)
    while end and seq[end - 1] == 0:
        end -= 1
    return seq[:end]


@lru_cache(maxsize=4)
def _strip_pairs(max_norm: int):
    table = partition_table(max_norm)
    big_idx: list[int] = []
    small_idx: list[int] = []
    for i, lam in enumerate(table.tuples):
        if not lam:
            big_idx.append(i)
            small_idx.append(i)
            continue
        lo = lam[1:] + (0,)
        ranges = [range(lo[j], lam[j] + 1) for j in range(len(lam))]
        for mu in itertools.product(*ranges):
            big_idx.append(i)
            small_idx.append(table.index[_trim(mu)])
    return np.asarray(big_idx, dtype=np.int64), np.asarray(small_idx, dtype=np.int64)


@lru_cache(maxsize=4)
def _containment_pairs(max_norm: int):
    table = partition_table(max_norm)
    big_idx: list[int] = []
    small_idx: list[int] = []
    for i, lam in enumerate(table.tuples):
        if not lam:
            big_idx.append(i)
            small_idx.append(i)
            continue
        for mu in _boxed_below(lam, [0] * len(lam)):
            big_idx.append(i)
            small_idx.append(table.index[_trim(mu)])
    return np.asarray(big_idx, dtype=np.int64), np.asarray(small_idx, dtype=np.int64)
