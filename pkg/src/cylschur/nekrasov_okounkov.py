"""The Nekrasov-Okounkov measure on partitions.

    M_{mu,t}(lam) = (t;t)_inf^{1 - mu^2} t^{|lam|} prod_{boxes} (h^2 - mu^2) / h^2

It is a probability measure for imaginary mu and interpolates between the
uniform measure (mu = 0) and the poissonized Plancherel measure.  As a
periodic Schur process it has N = 1, a = rho_mu and b = rho_{-mu}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .partitions import Partition, as_partition, as_twice, contains, hook_lengths, partition_table
from .process import shift_cutoff
from .qseries import qpoch_euler, theta3
from .symfunc import complete_homogeneous_list, rho, skew_schur

__all__ = [
    "NOSpec",
    "no_weight",
    "no_weights_table",
    "hook_identity_sides",
    "no_normalization",
    "plancherel_weight",
    "plancherel_limit_check",
    "no_correlation_oracle",
]


@dataclass(frozen=True)
class NOSpec:
    mu: complex
    t: float
    z: complex = 1.0

    def __post_init__(self):
        if not 0 < self.t < 1:
            raise ValueError("t must lie in (0, 1)")

    @classmethod
    def imaginary(cls, mu0: float, t: float, z: complex = 1.0) -> "NOSpec":
        return cls(1j * mu0, t, z)

    @property
    def is_probability(self) -> bool:
        z = complex(self.z)
        return complex(self.mu).real == 0 and z.imag == 0 and z.real > 0


def _prefactor(spec: NOSpec) -> complex:
    mu = complex(spec.mu)
    return cmath.exp((1 - mu * mu) * math.log(float(qpoch_euler(spec.t))))


def _hook_factor(lam, mu: complex) -> complex:
    out = 1 + 0j
    for h in hook_lengths(lam):
        out *= (h * h - mu * mu) / (h * h)
    return out


def no_weight(spec: NOSpec, lam) -> complex:
    lam = as_partition(lam)
    return _prefactor(spec) * spec.t ** lam.norm * _hook_factor(lam, complex(spec.mu))


@lru_cache(maxsize=16)
def _hook_products(max_norm: int, mu: complex) -> np.ndarray:
    table = partition_table(max_norm)
    return np.array([_hook_factor(p, mu) for p in table.tuples], dtype=complex)


def no_weights_table(spec: NOSpec, max_norm: int) -> np.ndarray:
    """Weights of every partition of norm <= max_norm, in partition_table order."""
    table = partition_table(max_norm)
    return _prefactor(spec) * spec.t ** table.norms.astype(float) * _hook_products(max_norm, complex(spec.mu))


def no_normalization(spec: NOSpec, max_norm: int) -> complex:
    return complex(np.sum(no_weights_table(spec, max_norm)))


def hook_identity_sides(kappa, lam, mu: complex) -> tuple[complex, complex]:
    """Both sides of the hook identity for sum_nu s_{kappa/nu}(rho_mu) s_{lam/nu}(rho_{-mu})."""
    kappa, lam = as_partition(kappa), as_partition(lam)
    mu = complex(mu)
    spec_p, spec_m = rho(mu), rho(-mu)
    hp = complete_homogeneous_list(spec_p, max(kappa.norm, 1))
    hm = complete_homogeneous_list(spec_m, max(lam.norm, 1))
    lhs = 0j
    for n in range(min(kappa.norm, lam.norm) + 1):
        for nu in _partitions_of_norm(n):
            if contains(kappa, nu) and contains(lam, nu):
                lhs += skew_schur(kappa, nu, spec_p, hp) * skew_schur(lam, nu, spec_m, hm)

    r = max(kappa.length, lam.length)
    ks = [kappa[i] - (i + 1) + r for i in range(r)]
    ls = [lam[i] - (i + 1) + r for i in range(r)]
    den = 1 + 0j
    for ki in ks:
        for lj in ls:
            den *= mu + ki - lj
    if den == 0:
        raise ZeroDivisionError("mu + k_i - l_j vanishes: excluded parameter")
    rhs = (-1) ** (r * (r - 1) // 2) * mu ** r
    for i in range(r):
        for j in range(i + 1, r):
            rhs *= (ks[i] - ks[j] + mu) * (ls[i] - ls[j] - mu)
    for h in hook_lengths(kappa):
        rhs *= (h + mu) / h
    for h in hook_lengths(lam):
        rhs *= (h - mu) / h
    return complex(lhs), complex(rhs / den)


def _partitions_of_norm(n: int):
    from .partitions import partitions_of

    return [Partition(p) for p in partitions_of(n)]


def plancherel_weight(theta: float, lam) -> float:
    """e^{-theta} (dim lam theta^{|lam|/2} / |lam|!)^2 with dim by the hook formula."""
    lam = as_partition(lam)
    n = lam.norm
    dim = math.factorial(n) / math.prod(hook_lengths(lam)) if n else 1.0
    return math.exp(-theta) * (dim * theta ** (n / 2) / math.factorial(n)) ** 2


def plancherel_limit_check(theta: float, mu0: float, lam) -> tuple[float, float]:
    """(M_{i mu0, t}(lam) at t = theta / mu0^2, Plancherel weight)."""
    spec = NOSpec.imaginary(mu0, theta / mu0 ** 2)
    return float(no_weight(spec, lam).real), plancherel_weight(theta, lam)


def no_correlation_oracle(spec: NOSpec, points: Sequence, shift_mixed: bool, max_norm: int) -> complex:
    """Truncated exact correlation function; points are positions in Z + 1/2.

    Weights are normalized by their truncated sum, as the Schur-process oracle does.
    """
    pts = [as_twice(x) for x in points]
    if len(set(pts)) < len(pts):
        return 0j
    table = partition_table(max_norm)
    weights = no_weights_table(spec, max_norm)
    total = np.sum(weights)

    def rho_at(shift: int) -> complex:
        mask = np.ones(table.count, dtype=bool)
        for tx in pts:
            mask &= table.maya_mask(tx / 2, shift=shift)
        return complex(np.sum(weights[mask]) / total)

    if not shift_mixed:
        return rho_at(0)
    t, z = spec.t, complex(spec.z)
    cutoff = shift_cutoff(t)
    acc = 0j
    for S in range(-cutoff, cutoff + 1):
        acc += z ** S * t ** (S * S / 2) * rho_at(S)
    return acc / complex(theta3(z, t))
