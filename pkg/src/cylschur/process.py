"""The periodic Schur process: weights, partition functions, oracles.

The brute-force oracle sums trajectory weights over all partitions of norm
at most ``max_norm``.  It never enumerates trajectories one by one: the sum
over the intermediate partitions is organized as a product of sparse
transfer matrices ``T_k = A_k B_k^T`` with ``A_k[lam, mu] = s_{lam/mu}(a[k])``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .partitions import (
    Partition,
    as_partition,
    as_twice,
    partition_table,
)
from .qseries import qpoch_euler, theta3
from .symfunc import (
    Specialization,
    complete_homogeneous_list,
    parse_specialization,
    skew_schur,
    skew_schur_single,
    trivial,
)

__all__ = [
    "ProcessSpec",
    "Trajectory",
    "ResourceError",
    "weight",
    "partition_function_formula",
    "partition_function_oracle",
    "shift_probability",
    "shift_cutoff",
    "ProcessOracle",
    "correlation_oracle",
    "parse_process_spec",
    "format_process_spec",
]

DEFAULT_BUDGET = 60_000_000


class ResourceError(RuntimeError):
    """Raised when an exhaustive sum would exceed the configured budget."""


@dataclass(frozen=True)
class ProcessSpec:
    """Period ``N``, nome ``t``, specializations ``a[1..N]``, ``b[1..N]``, shift parameter ``z``."""

    N: int
    t: float
    a: tuple
    b: tuple
    z: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if self.N < 1:
            raise ValueError("period N must be at least 1")
        if not 0 < self.t < 1:
            raise ValueError("t must lie in (0, 1)")
        if len(self.a) != self.N or len(self.b) != self.N:
            raise ValueError("a and b must both have length N")
        if _is_theta3_zero(self.z, self.t):
            raise ValueError("z sits at a zero of theta3(z; t)")

    @classmethod
    def uniform(cls, t: float, N: int = 1, z: complex = 1.0) -> "ProcessSpec":
        return cls(N, t, [trivial()] * N, [trivial()] * N, z)

    @property
    def s(self) -> float:
        return self.t ** (1.0 / self.N)

    def A(self, n):
        """Aggregate a_n summed over the period."""
        return sum(spec.a(n) for spec in self.a)

    def B(self, n):
        return sum(spec.a(n) for spec in self.b)

    def a_tilde(self, k: int, n):
        """Scaled power sums of the rescaled specialization s^{-k} . a[k]."""
        return self.s ** (-k * np.asarray(n)) * self.a[k - 1].a(n)

    def b_tilde(self, k: int, n):
        return self.s ** (k * np.asarray(n)) * self.b[k - 1].a(n)

    @property
    def growth_radius(self) -> float:
        return max(spec.growth_radius for spec in (*self.a, *self.b))

    @property
    def is_uniform(self) -> bool:
        return all(spec.is_trivial for spec in (*self.a, *self.b))

    def with_z(self, z) -> "ProcessSpec":
        return ProcessSpec(self.N, self.t, self.a, self.b, z)


def _is_theta3_zero(z, t) -> bool:
    # zeros at z = -t^{m}, m in Z + 1/2
    z = complex(z)
    if z == 0:
        return True
    if abs(z.imag) > 1e-14 * abs(z) or z.real > 0:
        return False
    m = math.log(-z.real) / math.log(t)
    return abs(m - round(m - 0.5) - 0.5) < 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Partitions ``lambdas = (lam(1), ..., lam(N))`` and ``mus = (mu(1), ..., mu(N))``."""

    lambdas: tuple
    mus: tuple
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(as_partition(p) for p in self.lambdas))
        object.__setattr__(self, "mus", tuple(as_partition(p) for p in self.mus))
        if len(self.lambdas) != len(self.mus):
            raise ValueError("lambdas and mus must have equal length")

    def lam(self, k: int) -> Partition:
        """lam(k) with cyclic indexing, lam(0) = lam(N)."""
        return self.lambdas[(k - 1) % len(self.lambdas)]


def _skew(lam, mu, spec: Specialization) -> complex:
    x = spec.single_variable
    if spec.is_trivial:
        return 1 + 0j if lam == mu else 0j
    if x is not None:
        return skew_schur_single(lam, mu, x)
    return skew_schur(lam, mu, spec)


def weight(spec: ProcessSpec, traj: Trajectory) -> complex:
    """t^{|lam(0)|} prod_k s_{lam(k-1)/mu(k)}(a[k]) s_{lam(k)/mu(k)}(b[k]).

    A nonzero shift multiplies by z^S t^{S^2/2} (shift-mixed weight,
    not divided by theta3).
    """
    if len(traj.lambdas) != spec.N:
        raise ValueError("trajectory length differs from the period")
    w = complex(spec.t ** traj.lam(0).norm)
    for k in range(1, spec.N + 1):
        mu = traj.mus[k - 1]
        w *= _skew(traj.lam(k - 1), mu, spec.a[k - 1])
        if w == 0:
            return 0j
        w *= _skew(traj.lam(k), mu, spec.b[k - 1])
        if w == 0:
            return 0j
    if traj.shift:
        S = traj.shift
        w *= complex(spec.z) ** S * spec.t ** (S * S / 2)
    return w


def _rate_terms(rate: float, tol: float = 1e-18) -> int:
    if rate >= 1:
        raise ValueError("partition function series diverges")
    if rate == 0:
        return 2
    return max(2, int(math.ceil(math.log(tol) / math.log(rate))) + 2)


def partition_function_formula(spec: ProcessSpec) -> complex:
    """Closed product form of the partition function."""
    t, N = spec.t, spec.N
    RA = [s.growth_radius for s in spec.a]
    RB = [s.growth_radius for s in spec.b]
    # pair (k, l) contributes sum_n a_n[k] b_n[l] t^{n[l >= k]} / (1 - t^n)
    rate = 0.0
    for k in range(N):
        for l in range(N):
            rate = max(rate, RA[k] * RB[l] * (t if l >= k else 1.0))
    nterms = _rate_terms(rate)
    n = np.arange(1, nterms + 1)
    A = spec.A(n)
    B = spec.B(n)
    cross = np.zeros(nterms, dtype=complex)
    for k in range(1, N + 1):
        ak = spec.a[k - 1].a(n)
        for l in range(1, k):
            cross = cross + ak * spec.b[l - 1].a(n)
    tn = t ** n
    expo = np.sum(n * (cross + tn * A * B / (1 - tn)))
    return complex(np.exp(expo) / float(np.real(qpoch_euler(t))))


# -- oracle -----------------------------------------------------------------


def _skew_matrix(spec: Specialization, max_norm: int, budget: int):
    """Sparse matrix M[lam, mu] = s_{lam/mu}(spec) over the partition table."""
    table = partition_table(max_norm)
    n = table.count
    real = _is_real_spec(spec)
    dtype = float if real else complex
    if spec.is_trivial:
        return sparse.identity(n, dtype=dtype, format="csr")
    x = spec.single_variable
    if x is not None:
        big, small = table.strip_pairs()
        deg = table.norms[big] - table.norms[small]
        vals = np.power(x.real if real else x, deg)
        return sparse.csr_matrix((vals, (big, small)), shape=(n, n))
    if spec.kind == "union" and all(
        c.is_trivial or c.single_variable is not None for c in spec.children
    ):
        # branching rule: s_{lam/mu}(x, y, ...) is a product of strip matrices
        out = sparse.identity(n, dtype=dtype, format="csr")
        for c in spec.children:
            out = out @ _skew_matrix(c, max_norm, budget)
        return out.tocsr()
    big, small = table.containment_pairs()
    if len(big) > budget:
        raise ResourceError("containment pair count exceeds budget")
    h = complete_homogeneous_list(spec, max_norm)
    vals = np.empty(len(big), dtype=complex)
    for idx, (i, j) in enumerate(zip(big, small)):
        vals[idx] = skew_schur(table.tuples[i], table.tuples[j], spec, h)
    if real:
        vals = vals.real
    return sparse.csr_matrix((vals, (big, small)), shape=(n, n))


def _is_real_spec(spec: Specialization) -> bool:
    return bool(np.all(np.isreal(spec.a(np.arange(1, 6)))))


class ProcessOracle:
    """Exact truncated sums for one ProcessSpec and one truncation level."""

    def __init__(self, spec: ProcessSpec, max_norm: int, budget: int = DEFAULT_BUDGET):
        self.spec = spec
        self.max_norm = max_norm
        self.budget = budget
        self.table = partition_table(max_norm)
        if self.table.count ** 2 > 50 * budget and spec.N > 1 and not spec.is_uniform:
            raise ResourceError(
                f"transfer matrices over {self.table.count} partitions exceed budget"
            )

    @cached_property
    def transfer(self) -> list:
        mats = []
        for k in range(self.spec.N):
            A = _skew_matrix(self.spec.a[k], self.max_norm, self.budget)
            B = _skew_matrix(self.spec.b[k], self.max_norm, self.budget)
            T = (A @ B.T).tocsr()
            if T.nnz > self.budget:
                raise ResourceError("transfer matrix fill exceeds budget")
            mats.append(T)
        return mats

    @cached_property
    def _diag_t(self):
        return self.spec.t ** self.table.norms.astype(float)

    def _trace(self, masks: dict[int, np.ndarray]) -> complex:
        """Truncated sum of weights with indicator ``masks[tau]`` on lam(tau)."""
        N = self.spec.N
        n = self.table.count
        ones = np.ones(n, dtype=bool)
        if self.spec.is_uniform:
            # every T_k is the identity: all lam(k) coincide
            m = ones.copy()
            for v in masks.values():
                m &= v
            return complex(np.sum(self._diag_t[m]))
        mats = self.transfer
        diag = self._diag_t
        if N == 1:
            m = masks.get(1, ones)
            return complex(np.sum(diag[m] * mats[0].diagonal()[m]))
        chain = sparse.diags(diag) @ mats[0] @ sparse.diags(masks.get(1, ones).astype(float))
        for k in range(2, N):
            chain = chain @ mats[k - 1] @ sparse.diags(masks.get(k, ones).astype(float))
            if chain.nnz > self.budget:
                raise ResourceError("transfer chain fill exceeds budget")
        last = mats[N - 1] @ sparse.diags(masks.get(N, ones).astype(float))
        return complex(chain.multiply(last.T).sum())

    @cached_property
    def partition_function(self) -> complex:
        return self._trace({})

    def rho(self, points, shift: int = 0) -> complex:
        """Unmixed correlation function with every point translated by ``-shift``."""
        pts = [(int(tau), as_twice(x)) for tau, x in points]
        if len(set(pts)) < len(pts):
            return 0j
        masks: dict[int, np.ndarray] = {}
        for tau, tx in pts:
            if not 1 <= tau <= self.spec.N:
                raise ValueError("times must lie in 1..N")
            m = self.table.maya_mask(tx / 2, shift=shift)
            masks[tau] = masks[tau] & m if tau in masks else m
        return self._trace(masks) / self.partition_function

    def rho_shift_mixed(self, points) -> complex:
        """sum_S Prob{S} rho(points - S)."""
        pts = [(int(tau), as_twice(x)) for tau, x in points]
        if len(set(pts)) < len(pts):
            return 0j
        t, z = self.spec.t, complex(self.spec.z)
        cutoff = shift_cutoff(t)
        th = complex(theta3(z, t))
        total = 0j
        for S in range(-cutoff, cutoff + 1):
            total += z ** S * t ** (S * S / 2) * self.rho(points, shift=S)
        return total / th


def shift_cutoff(t: float) -> int:
    """|S| beyond which t^{S^2/2} < 1e-16."""
    return int(math.ceil(math.sqrt(2 * 37 / math.log(1 / t))))


def partition_function_oracle(spec: ProcessSpec, max_norm: int, budget: int = DEFAULT_BUDGET) -> complex:
    return ProcessOracle(spec, max_norm, budget).partition_function


def shift_probability(spec: ProcessSpec, S: int) -> complex:
    """Prob{S} = z^S t^{S^2/2} / theta3(z; t)."""
    z = complex(spec.z)
    value = z ** S * spec.t ** (S * S / 2) / complex(theta3(z, spec.t))
    return value


def correlation_oracle(
    spec: ProcessSpec,
    points: Sequence,
    shift_mixed: bool,
    max_norm: int,
    budget: int = DEFAULT_BUDGET,
) -> complex:
    oracle = ProcessOracle(spec, max_norm, budget)
    return oracle.rho_shift_mixed(points) if shift_mixed else oracle.rho(points)


# -- flat key-value configuration ------------------------------------------------


def parse_process_spec(text: str) -> ProcessSpec:
    """Parse ``N=2; t=0.3; z=1; a1=single:0.4; b2=single:0.3`` style configs.

    Entries are separated by newlines or semicolons that start a new
    ``key=`` pair; unspecified a[k], b[k] default to trivial.
    """
    entries: dict[str, str] = {}
    for raw in _split_entries(text):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        if not eq:
            raise ValueError(f"bad config line {raw!r}")
        entries[key.strip().lower()] = val.strip()
    if "n" not in entries or "t" not in entries:
        raise ValueError("process config needs N and t")
    N = int(entries.pop("n"))
    t = float(entries.pop("t"))
    z_txt = entries.pop("z", "1")
    z = complex(z_txt.replace("i", "j"))
    z = z.real if z.imag == 0 else z
    a = [trivial()] * N
    b = [trivial()] * N
    for key, val in entries.items():
        side, idx = key[:1], key[1:].strip("[]")
        if side not in "ab" or not idx.isdigit() or not 1 <= int(idx) <= N:
            raise ValueError(f"unknown config key {key!r}")
        target = a if side == "a" else b
        target[int(idx) - 1] = parse_specialization(val)
    return ProcessSpec(N, t, a, b, z)


_KEY_START = re.compile(r"[;\n]\s*(?=(?:[NnTtZz]|[ab]\[?\d+\]?)\s*=)")


def _split_entries(text: str) -> Iterable[str]:
    return _KEY_START.split(text)


def format_process_spec(spec: ProcessSpec) -> str:
    z = complex(spec.z)
    z_txt = repr(z.real) if z.imag == 0 else f"{z.real!r}{z.imag:+}i"
    parts = [f"N={spec.N}", f"t={spec.t!r}", f"z={z_txt}"]
    for k in range(spec.N):
        if not spec.a[k].is_trivial:
            parts.append(f"a{k + 1}={spec.a[k].literal()}")
        if not spec.b[k].is_trivial:
            parts.append(f"b{k + 1}={spec.b[k].literal()}")
    return "; ".join(parts)
