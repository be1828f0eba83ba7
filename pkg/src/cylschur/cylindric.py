"""Cylindric partitions: profiles, exhaustive enumeration, exact counts.

A profile of period N is a pair of 0/1 sequences A[1..N], B[1..N] with
A + B = 1.  Read along fixed-content lines, a cylindric partition is a
periodic chain of partitions lam(0), ..., lam(N-1), lam(N) = lam(0) with

    A[k] = 1  =>  lam(k-1) > lam(k)   (lam(k) removes a horizontal strip)
    B[k] = 1  =>  lam(k-1) < lam(k)   (lam(k) adds a horizontal strip)

Marked profiles carry the marked relation at index N.  Walking the boundary
of mu from the top right corner of the l x d box, horizontal edges give
A = 1 and vertical edges A = 0; the final vertical edge is the marked one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .partitions import Partition, as_partition, is_horizontal_strip, partition_table
from .process import ProcessSpec, ResourceError
from .symfunc import single, trivial

__all__ = [
    "Profile",
    "CylindricPartition",
    "profile_from_shape",
    "shape_from_profile",
    "staircase_profile",
    "corner_profile",
    "parse_profile",
    "enumerate_cylindric",
    "count_cylindric",
    "generating_function_formula",
    "pq_torus",
    "to_process_spec",
]


@dataclass(frozen=True)
class Profile:
    """Bits ``A[1..N]`` (with B = 1 - A) and the index of the marked relation."""

    A: tuple[int, ...]
    marked_index: int | None = None
    B: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        A = tuple(int(v) for v in self.A)
        if not A:
            raise ValueError("a profile needs period at least 1")
        if any(v not in (0, 1) for v in A):
            raise ValueError("profile bits must be 0 or 1")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", tuple(1 - v for v in A))
        mark = self.marked_index
        if mark is None:
            # default: the last position carrying B = 1, if there is one
            ones = [k for k in range(1, len(A) + 1) if A[k - 1] == 0]
            mark = ones[-1] if ones else None
            object.__setattr__(self, "marked_index", mark)
        elif not 1 <= mark <= len(A):
            raise ValueError("marked index must lie in 1..N")
        elif A[mark - 1] != 0:
            raise ValueError("the marked position must carry B = 1")

    @property
    def N(self) -> int:
        return len(self.A)

    @property
    def d(self) -> int:
        return sum(self.A)

    @property
    def l(self) -> int:  # noqa: E743 - the profile length parameter
        return sum(self.B)

    @property
    def kappa(self) -> float:
        """Slope l/d = sum B / sum A."""
        if self.d == 0:
            raise ValueError("slope is undefined when d = 0")
        return self.l / self.d

    def a_at(self, k: int) -> int:
        """A[k] for any integer k, extended periodically."""
        return self.A[(k - 1) % self.N]

    def b_at(self, k: int) -> int:
        return 1 - self.a_at(k)

    def count_A(self, sigma: int, tau: int) -> int:
        """A(sigma, tau] = number of k in (sigma, tau] with A[k] = 1 (sigma <= tau)."""
        return sum(self.a_at(k) for k in range(sigma + 1, tau + 1))

    def count_B(self, sigma: int, tau: int) -> int:
        return sum(self.b_at(k) for k in range(sigma + 1, tau + 1))

    def rotated(self, shift: int = 1) -> "Profile":
        """Profile with A'[k] = A[k - shift]; times move forward by ``shift``."""
        N = self.N
        bits = tuple(self.a_at(k - shift) for k in range(1, N + 1))
        mark = None if self.marked_index is None else (self.marked_index + shift - 1) % N + 1
        return Profile(bits, mark)

    def literal(self) -> str:
        text = "A=" + "".join(str(v) for v in self.A)
        if self.marked_index is not None:
            text += f";mark={self.marked_index}"
        return text

    def __str__(self) -> str:
        return self.literal()


_PROFILE_RE = re.compile(r"^\s*A\s*=\s*([01]+)\s*(?:;\s*mark\s*=\s*(\d+)\s*)?;?\s*$")


def parse_profile(text: str) -> Profile:
    """Parse ``A=1011010;mark=7`` (the mark is optional)."""
    m = _PROFILE_RE.match(text)
    if not m:
        raise ValueError(f"bad profile literal {text!r}")
    bits = tuple(int(c) for c in m.group(1))
    mark = int(m.group(2)) if m.group(2) else None
    return Profile(bits, mark)


def profile_from_shape(mu, d: int, l: int) -> Profile:  # noqa: E741
    """Marked profile of the triple (mu, d, l).

    The boundary walk needs a vertical edge at the left end, so the
    correspondence is with ``length(mu) < l``.
    """
    mu = as_partition(mu)
    if d < 0 or l < 1:
        raise ValueError("need d >= 0 and l >= 1")
    if mu[0] > d:
        raise ValueError("need d >= mu_1")
    if mu.length >= l:
        raise ValueError("need length(mu) < l for a marked profile")
    bits: list[int] = []
    col = d
    for row in range(1, l + 1):
        while col > mu[row - 1]:
            bits.append(1)
            col -= 1
        bits.append(0)
    return Profile(tuple(bits), len(bits))


def shape_from_profile(profile: Profile) -> tuple[Partition, int, int]:
    """Inverse of :func:`profile_from_shape`: read the walk starting after the mark."""
    if profile.marked_index is None:
        raise ValueError("profile has no marked relation")
    N = profile.N
    start = profile.marked_index
    bits = [profile.a_at(start + k) for k in range(1, N + 1)]
    d = profile.d
    parts: list[int] = []
    col = d
    for bit in bits:
        if bit:
            col -= 1
        else:
            parts.append(col)
    return Partition(tuple(parts)), d, profile.l


def staircase_profile(d: int) -> Profile:
    """The alternating profile A = (1,0,1,0,...) of period 2d."""
    return Profile(tuple([1, 0] * d), 2 * d)


def corner_profile(d: int, l: int) -> Profile:  # noqa: E741
    """A = (1,...,1,0,...,0): d ones followed by l zeros."""
    return Profile(tuple([1] * d + [0] * l), d + l)


@dataclass(frozen=True)
class CylindricPartition:
    """Diagonals lam(0), ..., lam(N-1) of a cylindric partition with its profile."""

    diagonals: tuple[Partition, ...]
    profile: Profile

    def __post_init__(self):
        diagonals = tuple(as_partition(p) for p in self.diagonals)
        object.__setattr__(self, "diagonals", diagonals)
        if len(diagonals) != self.profile.N:
            raise ValueError("need one diagonal per profile position")
        N = self.profile.N
        for k in range(1, N + 1):
            prev, cur = diagonals[k - 1], diagonals[k % N]
            ok = (
                is_horizontal_strip(prev, cur)
                if self.profile.a_at(k)
                else is_horizontal_strip(cur, prev)
            )
            if not ok:
                raise ValueError(f"diagonals {k - 1} and {k % N} violate the profile relation")

    @property
    def norm(self) -> int:
        return sum(p.norm for p in self.diagonals)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], mu, d: int) -> "CylindricPartition":
        """Ingest the row-by-row array of a cylindric partition of shape lam/mu/d.

        ``rows[i]`` lists the entries of row i+1 starting at column mu_{i+1}+1.
        Entries are grouped by content modulo N = d + l and read down each
        unrolled diagonal; content -l+1 becomes lam(0).
        """
        mu = as_partition(mu)
        l = len(rows)  # noqa: E741
        N = d + l
        lines: dict[int, list[tuple[int, int]]] = {c: [] for c in range(-l + 1, d + 1)}
        for i, row in enumerate(rows, start=1):
            for offset, value in enumerate(row):
                j = mu[i - 1] + 1 + offset
                content = j - i
                c = (content + l - 1) % N - l + 1
                k = (c - content) // N
                lines[c].append((i - k * l, int(value)))
        diagonals = []
        for c in range(-l + 1, d + 1):
            entries = sorted(lines[c])
            diagonals.append(Partition(tuple(v for _, v in entries)))
        profile = profile_from_shape(mu, d, l) if mu.length < l else None
        if profile is None:
            raise ValueError("need length(mu) < l to assign the marked profile")
        return cls(tuple(diagonals), profile)


def _strip_successors(max_norm: int):
    """Adjacency lists over the partition table: smaller[i], larger[i] by one strip."""
    table = partition_table(max_norm)
    big, small = table.strip_pairs()
    down: list[list[int]] = [[] for _ in range(table.count)]
    up: list[list[int]] = [[] for _ in range(table.count)]
    for b, s in zip(big.tolist(), small.tolist()):
        down[b].append(s)
        up[s].append(b)
    return table, down, up


def _walk(profile: Profile, max_norm: int, budget: int | None) -> Iterator[tuple[int, ...]]:
    table, down, up = _strip_successors(max_norm)
    norms = table.norms.tolist()
    N = profile.N
    steps = [down if profile.a_at(k) else up for k in range(1, N + 1)]
    # cyclic closure: the step from lam(N-1) must land back on lam(0)
    closing = [set(v) for v in steps[N - 1]]
    seen = 0

    def extend(chain: list[int], used: int):
        nonlocal seen
        k = len(chain)
        if k == N:
            if chain[0] in closing[chain[-1]]:
                seen += 1
                if budget is not None and seen > budget:
                    raise ResourceError("cylindric enumeration exceeds budget")
                yield tuple(chain)
            return
        for nxt in steps[k - 1][chain[-1]]:
            w = used + norms[nxt]
            if w <= max_norm:
                chain.append(nxt)
                yield from extend(chain, w)
                chain.pop()

    for start in range(table.count):
        yield from extend([start], norms[start])


def enumerate_cylindric(profile: Profile, max_norm: int, budget: int | None = 10_000_000) -> list[CylindricPartition]:
    """All cylindric partitions of the profile with norm at most ``max_norm``."""
    if max_norm < 0:
        raise ValueError("max_norm must be nonnegative")
    table = partition_table(max_norm)
    out = []
    for chain in _walk(profile, max_norm, budget):
        out.append(CylindricPartition(tuple(table.partition(i) for i in chain), profile))
    return out


def count_cylindric(profile: Profile, max_norm: int, budget: int | None = 50_000_000) -> list[int]:
    """Brute-force counts per norm 0..max_norm by depth-first enumeration."""
    if max_norm < 0:
        raise ValueError("max_norm must be nonnegative")
    norms = partition_table(max_norm).norms.tolist()
    counts = [0] * (max_norm + 1)
    for chain in _walk(profile, max_norm, budget):
        counts[sum(norms[i] for i in chain)] += 1
    return counts


def pq_torus(N: int) -> list[list[int]]:
    """The N x N array of (p - q)(N), rows p and columns q in 1..N."""
    return [[(p - q - 1) % N + 1 for q in range(1, N + 1)] for p in range(1, N + 1)]


def generating_function_formula(profile: Profile, max_power: int) -> list[int]:
    """Exact integer coefficients of the product formula up to s^max_power."""
    if max_power < 0:
        raise ValueError("max_power must be nonnegative")
    N = profile.N
    torus = pq_torus(N)
    exponents: list[int] = []
    for n in range(1, max_power // N + 2):
        if n * N <= max_power:
            exponents.append(n * N)
    rows = [p for p in range(1, N + 1) if profile.a_at(p)]
    cols = [q for q in range(1, N + 1) if profile.b_at(q)]
    for p in rows:
        for q in cols:
            base = torus[p - 1][q - 1]
            e = base
            while e <= max_power:
                exponents.append(e)
                e += N
    coef = [0] * (max_power + 1)
    coef[0] = 1
    for e in exponents:
        # multiply by 1 / (1 - s^e)
        for i in range(e, max_power + 1):
            coef[i] += coef[i - e]
    return coef


def to_process_spec(profile: Profile, s: float, z: complex = 1.0) -> ProcessSpec:
    """Periodic Schur process whose trajectories are the cylindric partitions.

    a[k] is the single variable s^k when A[k] = 1 and b[k] the single
    variable s^{-k} when B[k] = 1; t = s^N.  Trajectory weights are s^norm.
    """
    if not 0 < s < 1:
        raise ValueError("s must lie in (0, 1)")
    N = profile.N
    a = [single(s ** k) if profile.a_at(k) else trivial() for k in range(1, N + 1)]
    b = [single(s ** (-k)) if profile.b_at(k) else trivial() for k in range(1, N + 1)]
    return ProcessSpec(N, s ** N, a, b, z)
