"""Finite-t correlation kernels of the (shift-mixed) periodic Schur process.

The kernel K(sigma, x; tau, y) is the Laurent coefficient of
``zeta^{x-1/2} eta^{y-1/2}`` in

    F(sigma, zeta) / F(tau, 1/eta) * Theta(zeta * eta),

where Theta(w) = sum_m c_m w^{m-1/2} is the theta ratio of the Ramanujan
identity.  The double contour integral factorizes: with ``f``, ``g`` the
Laurent coefficients of the two F factors (one FFT each on their circles) and
``theta_k = c_{k+1/2}`` taken from the exact bilateral series,

    K = sum_k f_{X-k} g_{Y-k} theta_k,    X = x - 1/2,  Y = y - 1/2.

Trapezoid quadrature on circles is spectrally accurate here, and node counts
are doubled until two successive values agree.  A direct two-dimensional
trapezoid on the closed theta form is kept as an independent path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .partitions import as_twice
from .process import ProcessSpec
from .qseries import qpoch_euler, theta1_reduced, theta3
from .symfunc import Specialization, rho

__all__ = [
    "ContourSpec",
    "KernelPoint",
    "PrecisionError",
    "ConfigurationError",
    "F_function",
    "theta_coefficients",
    "kernel",
    "kernel_direct",
    "kernel_matrix",
    "correlation_det",
    "correlation_unmixed",
    "correlation_frobenius",
    "density_generating_coefficient",
    "build_L",
    "build_K",
    "lk_residual",
    "no_process_spec",
    "no_kernel",
    "cylindric_kernel",
]

_LOG_EPS = math.log(1e-17)


class PrecisionError(RuntimeError):
    """Quadrature failed to converge within the node cap."""


class ConfigurationError(ValueError):
    """The contour constraints cannot be satisfied."""


@dataclass(frozen=True)
class ContourSpec:
    """Trapezoid settings: starting nodes, tolerance, node cap, optional radii."""

    nodes: int = 256
    tolerance: float = 1e-12
    max_nodes: int = 8192
    radii: tuple | None = None  # (|zeta|, |eta|) override

    def __post_init__(self):
        if self.nodes < 64 or self.nodes & (self.nodes - 1):
            raise ValueError("nodes must be a power of two, at least 64")
        if self.max_nodes < self.nodes:
            raise ValueError("max_nodes must be at least nodes")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


DEFAULT_CONTOUR = ContourSpec()


@dataclass(frozen=True)
class KernelPoint:
    tau: int
    x: float

    @property
    def twice(self) -> int:
        return as_twice(self.x)


def _point(p) -> tuple[int, int]:
    """(tau, X) with X = x - 1/2 an integer."""
    if isinstance(p, KernelPoint):
        tau, x = p.tau, p.x
    else:
        tau, x = p
    return int(tau), (as_twice(x) - 1) // 2


# -- the F function ----------------------------------------------------------


def _side_parts(spec: ProcessSpec, tau: int):
    """(b with k <= tau, b with k > tau, a with k <= tau, a with k > tau)."""
    return (
        [s for s in spec.b[:tau] if not s.is_trivial],
        [s for s in spec.b[tau:] if not s.is_trivial],
        [s for s in spec.a[:tau] if not s.is_trivial],
        [s for s in spec.a[tau:] if not s.is_trivial],
    )


def F_function(spec: ProcessSpec, tau: int, zeta, form: str = "product"):
    """F(tau, zeta) for tau in 0..N.

    ``form="product"`` multiplies generating functions over the geometric
    ladder zeta t^m (analytic continuation included), ``form="series"`` sums
    the defining exponent and refuses points outside its convergence annulus.
    """
    if not 0 <= tau <= spec.N:
        raise ValueError("tau must lie in 0..N")
    zeta = np.asarray(zeta, dtype=complex)
    if form == "product":
        return np.exp(_log_F_product(spec, tau, zeta))
    if form == "series":
        return np.exp(_log_F_series(spec, tau, zeta))
    raise ValueError(f"unknown form {form!r}")


def _ladder_length(spec: ProcessSpec, zeta: np.ndarray) -> int:
    t = spec.t
    big = float(np.max(np.maximum(np.abs(zeta), 1 / np.abs(zeta)))) if zeta.size else 1.0
    R = max(spec.growth_radius, 1.0)
    return max(1, int(math.ceil((_LOG_EPS - math.log(big * R)) / math.log(t))) + 2)


def _log_F_product(spec: ProcessSpec, tau: int, zeta: np.ndarray) -> np.ndarray:
    b_lo, b_hi, a_lo, a_hi = _side_parts(spec, tau)
    out = np.zeros(zeta.shape, dtype=complex)
    if not (b_lo or b_hi or a_lo or a_hi):
        return out
    t = spec.t
    mlen = _ladder_length(spec, zeta)
    tm = t ** np.arange(mlen)
    u = zeta[..., None] * tm  # zeta t^m
    v = tm / zeta[..., None]  # t^m / zeta
    for s in b_lo:
        out += s.log_H(u).sum(axis=-1)
    for s in b_hi:
        out += s.log_H(t * u).sum(axis=-1)
    for s in a_lo:
        out -= s.log_H(t * v).sum(axis=-1)
    for s in a_hi:
        out -= s.log_H(v).sum(axis=-1)
    return out


def _log_F_series(spec: ProcessSpec, tau: int, zeta: np.ndarray) -> np.ndarray:
    b_lo, b_hi, a_lo, a_hi = _side_parts(spec, tau)
    if not (b_lo or b_hi or a_lo or a_hi):
        return np.zeros(zeta.shape, dtype=complex)
    t = spec.t
    az_max = float(np.max(np.abs(zeta)))
    az_min = float(np.min(np.abs(zeta)))
    rate = 0.0
    for parts, factor in (
        (b_lo, az_max),
        (b_hi, t * az_max),
        (a_lo, t / az_min),
        (a_hi, 1 / az_min),
    ):
        for s in parts:
            rate = max(rate, s.growth_radius * factor)
    if rate >= 1:
        raise ValueError("zeta lies outside the convergence annulus of the series for F")
    nterms = 2 if rate == 0 else int(math.ceil(_LOG_EPS / math.log(rate))) + 2
    n = np.arange(1, nterms + 1)
    den = 1 - t ** n
    coef_b_lo = sum((s.a(n) for s in b_lo), np.zeros(nterms, complex)) / den
    coef_b_hi = sum((s.a(n) for s in b_hi), np.zeros(nterms, complex)) * t ** n / den
    coef_a_lo = sum((s.a(n) for s in a_lo), np.zeros(nterms, complex)) * t ** n / den
    coef_a_hi = sum((s.a(n) for s in a_hi), np.zeros(nterms, complex)) / den
    zn = zeta[..., None] ** n
    return (zn * (coef_b_lo + coef_b_hi)).sum(axis=-1) - ((coef_a_lo + coef_a_hi) / zn).sum(axis=-1)


# -- contour windows -------------------------------------------------------------


def _F_log_window(spec: ProcessSpec, tau: int) -> tuple[float, float]:
    """Open interval of log|zeta| on which F(tau, .) is analytic."""
    r = -math.log(spec.t)
    b_lo, b_hi, a_lo, a_hi = _side_parts(spec, tau)

    def lg(R):
        return -math.inf if R == 0 else math.log(R)

    upper = math.inf
    lower = -math.inf
    for s in b_lo:
        upper = min(upper, -lg(s.growth_radius))
    for s in b_hi:
        upper = min(upper, -lg(s.growth_radius) + r)
    for s in a_lo:
        lower = max(lower, lg(s.growth_radius) - r)
    for s in a_hi:
        lower = max(lower, lg(s.growth_radius))
    return lower, upper


def _theta_window(spec: ProcessSpec, sigma: int, tau: int) -> tuple[float, float]:
    r = -math.log(spec.t)
    return (0.0, r) if sigma <= tau else (-r, 0.0)


def _choose_log_radii(
    zeta_win: tuple[float, float],
    eta_win: tuple[float, float],
    prod_win: tuple[float, float],
    cap: float,
) -> tuple[float, float, float]:
    """Log radii (u, v) maximizing the distance to every window edge.

    Returns (u, v, margin).  A second pass keeps 90% of the optimal margin
    while pulling the radii toward 1, which limits dynamic range.
    """
    # only unbounded edges are capped, each relative to the opposite edge
    lo, hi = [], []
    for w_lo, w_hi in (zeta_win, eta_win):
        if math.isinf(w_lo) and math.isinf(w_hi):
            w_lo, w_hi = -cap, cap
        elif math.isinf(w_lo):
            w_lo = min(w_hi, 0.0) - 2 * cap
        elif math.isinf(w_hi):
            w_hi = max(w_lo, 0.0) + 2 * cap
        lo.append(w_lo)
        hi.append(w_hi)
    # variables (u, v, d); maximize d
    A = [
        [-1, 0, 1], [1, 0, 1],
        [0, -1, 1], [0, 1, 1],
        [-1, -1, 1], [1, 1, 1],
    ]
    b = [-lo[0], hi[0], -lo[1], hi[1], -prod_win[0], prod_win[1]]
    res = linprog([0, 0, -1], A_ub=A, b_ub=b, bounds=[(None, None)] * 3, method="highs")
    if not res.success or res.x[2] <= 1e-9:
        raise ConfigurationError("no admissible contour radii for this kernel block")
    best = res.x[2]
    # second pass: minimize |u| + |v| with margin >= 0.9 best
    A2 = [[a[0], a[1], 0, 0] for a in A]
    b2 = [bb - 0.9 * best for bb in b]
    A2 += [[1, 0, -1, 0], [-1, 0, -1, 0], [0, 1, 0, -1], [0, -1, 0, -1]]
    b2 += [0, 0, 0, 0]
    res2 = linprog(
        [0, 0, 1, 1], A_ub=A2, b_ub=b2, bounds=[(None, None)] * 2 + [(0, None)] * 2, method="highs"
    )
    if res2.success:
        return float(res2.x[0]), float(res2.x[1]), 0.9 * best
    return float(res.x[0]), float(res.x[1]), best


# -- theta coefficients -------------------------------------------------------


def theta_coefficients(k, t: float, z: complex, sigma_le_tau: bool):
    """theta_k = c_{k+1/2}: the Laurent coefficients of the theta ratio."""
    k = np.asarray(k)
    m = k + 0.5
    z = complex(z)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        logzt = np.log(z) + m * math.log(t)
        big = logzt.real > 0
        inv = np.exp(-np.where(big, logzt, 0))  # 1/(z t^m) where large
        small = np.exp(np.where(big, 0, logzt))  # z t^m where small
        if sigma_le_tau:
            # 1 / (1 + (z t^m)^{-1})
            out = np.where(big, 1 / (1 + inv), small / (1 + small))
        else:
            # -1 / (1 + z t^m)
            out = np.where(big, -inv / (1 + inv), -1 / (1 + small))
    return out


def theta_closed_form(w, t: float, z: complex):
    """-(t;t)^3 theta3(z w) / (theta3(z) theta3(-w / sqrt t)) = sum_m c_m w^{m-1/2}."""
    w = np.asarray(w, dtype=complex)
    return -(qpoch_euler(t) ** 3) * theta3(z * w, t) / (theta3(z, t) * theta3(-w / math.sqrt(t), t))


# -- Laurent coefficients ---------------------------------------------------------


def _laurent(values: np.ndarray, log_radius: float, jmax: int) -> np.ndarray:
    """Coefficients c_j, j = -jmax..jmax, from samples on a circle."""
    n = values.shape[-1]
    coef = np.fft.fft(values, axis=-1) / n
    j = np.arange(-jmax, jmax + 1)
    scale_log = -j * log_radius
    with np.errstate(over="ignore"):
        scale = np.where(scale_log < 700, np.exp(np.minimum(scale_log, 700)), 0.0)
    return coef[..., j % n] * scale


class _Block:
    """Laurent data of the F factors for one (sigma, tau) pair and node count."""

    def __init__(self, spec: ProcessSpec, sigma: int, tau: int, n: int, radii, extra_windows):
        self.spec = spec
        self.sigma = sigma
        self.tau = tau
        self.n = n
        if radii is not None:
            u, v = math.log(radii[0]), math.log(radii[1])
        else:
            zw = _F_log_window(spec, sigma)
            lo, hi = _F_log_window(spec, tau)
            ew = (-hi, -lo)
            pw = _theta_window(spec, sigma, tau)
            if extra_windows is not None:
                zx, ex = extra_windows
                zw = (max(zw[0], zx[0]), min(zw[1], zx[1]))
                ew = (max(ew[0], ex[0]), min(ew[1], ex[1]))
            cap = max(-math.log(spec.t), 0.5)
            u, v, _ = _choose_log_radii(zw, ew, pw, cap)
        self.log_radii = (u, v)
        phase = np.exp(2j * np.pi * np.arange(n) / n)
        zeta = math.exp(u) * phase
        eta = math.exp(v) * phase
        self.jmax = n // 2 - 1
        fvals = F_function(spec, sigma, zeta)
        gvals = 1 / F_function(spec, tau, 1 / eta)
        self.f = _laurent(fvals, u, self.jmax)
        self.g = _laurent(gvals, v, self.jmax)

    def values(self, Xs: np.ndarray, Ys: np.ndarray, z: complex) -> np.ndarray:
        """K[i, j] for X = Xs[i], Y = Ys[j]."""
        J = self.jmax
        kmin = int(min(Xs.min(), Ys.min())) - J
        kmax = int(max(Xs.max(), Ys.max())) + J
        k = np.arange(kmin, kmax + 1)
        th = theta_coefficients(k, self.spec.t, z, self.sigma <= self.tau)
        fi = Xs[:, None] - k[None, :] + J
        gi = Ys[:, None] - k[None, :] + J
        fm = np.where((fi >= 0) & (fi <= 2 * J), self.f[np.clip(fi, 0, 2 * J)], 0)
        gm = np.where((gi >= 0) & (gi <= 2 * J), self.g[np.clip(gi, 0, 2 * J)], 0)
        return (fm * th) @ gm.T


class _Engine:
    """Caches Laurent data across calls for one spec and contour."""

    def __init__(self, spec: ProcessSpec, contour: ContourSpec, extra_windows=None):
        self.spec = spec
        self.contour = contour
        self.extra_windows = extra_windows
        self._blocks: dict = {}

    def block(self, sigma: int, tau: int, n: int) -> _Block:
        key = (sigma, tau, n)
        if key not in self._blocks:
            extra = None
            if self.extra_windows is not None:
                extra = self.extra_windows(sigma, tau)
            self._blocks[key] = _Block(self.spec, sigma, tau, n, self.contour.radii, extra)
        return self._blocks[key]

    def start_nodes(self, Xs, Ys) -> int:
        need = 4 * (int(max(np.max(np.abs(Xs)), np.max(np.abs(Ys)))) + 16)
        n = self.contour.nodes
        while n < need:
            n *= 2
        return min(n, self.contour.max_nodes)

    def values(self, sigma: int, tau: int, Xs, Ys, z=None) -> np.ndarray:
        z = self.spec.z if z is None else z
        Xs = np.asarray(Xs, dtype=np.int64)
        Ys = np.asarray(Ys, dtype=np.int64)
        n = self.start_nodes(Xs, Ys)
        prev = self.block(sigma, tau, n).values(Xs, Ys, z)
        while 2 * n <= self.contour.max_nodes:
            n *= 2
            cur = self.block(sigma, tau, n).values(Xs, Ys, z)
            if np.all(np.isfinite(cur)) and np.max(np.abs(cur - prev), initial=0) < self.contour.tolerance:
                return cur
            prev = cur
        raise PrecisionError(
            f"kernel quadrature did not converge below {self.contour.tolerance} with {n} nodes"
        )


def _engine(spec, contour, extra_windows=None) -> _Engine:
    return _Engine(spec, contour or DEFAULT_CONTOUR, extra_windows)


def kernel(spec: ProcessSpec, p, q, contour: ContourSpec | None = None, _engine_obj=None) -> complex:
    """K(sigma, x; tau, y) of the shift-mixed process."""
    (sigma, X), (tau, Y) = _point(p), _point(q)
    for tt in (sigma, tau):
        if not 1 <= tt <= spec.N:
            raise ValueError("kernel times must lie in 1..N")
    eng = _engine_obj or _engine(spec, contour)
    return complex(eng.values(sigma, tau, [X], [Y])[0, 0])


def kernel_direct(spec: ProcessSpec, p, q, nodes: int = 256, radii=None) -> complex:
    """Independent path: 2D trapezoid of F/F times the closed theta ratio."""
    (sigma, X), (tau, Y) = _point(p), _point(q)
    if radii is None:
        blk_radii = _Block(spec, sigma, tau, 64, None, None).log_radii
    else:
        blk_radii = (math.log(radii[0]), math.log(radii[1]))
    u, v = blk_radii
    phase = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    zeta = math.exp(u) * phase
    eta = math.exp(v) * phase
    fz = F_function(spec, sigma, zeta) * zeta ** (-X)
    ge = eta ** (-Y) / F_function(spec, tau, 1 / eta)
    th = theta_closed_form(np.outer(zeta, eta), spec.t, complex(spec.z))
    return complex(fz @ th @ ge / nodes ** 2)


def kernel_matrix(spec: ProcessSpec, points, contour: ContourSpec | None = None, z=None, _engine_obj=None):
    pts = [_point(p) for p in points]
    eng = _engine_obj or _engine(spec, contour)
    n = len(pts)
    out = np.zeros((n, n), dtype=complex)
    taus = sorted({p[0] for p in pts})
    for s in taus:
        rows = [i for i, p in enumerate(pts) if p[0] == s]
        for tt in taus:
            cols = [j for j, p in enumerate(pts) if p[0] == tt]
            vals = eng.values(s, tt, [pts[i][1] for i in rows], [pts[j][1] for j in cols], z)
            out[np.ix_(rows, cols)] = vals
    return out


def correlation_det(spec: ProcessSpec, points, contour: ContourSpec | None = None) -> complex:
    """det[K(p_i, p_j)]: the shift-mixed correlation function."""
    pts = [_point(p) for p in points]
    if len(set(pts)) < len(pts):
        return 0j
    return complex(np.linalg.det(kernel_matrix(spec, points, contour)))


def correlation_unmixed(
    spec: ProcessSpec, points, contour: ContourSpec | None = None, z_nodes: int = 64
) -> complex:
    """Constant term in z of theta3(z; t) det[K_z], by trapezoid on |z| = 1."""
    pts = [_point(p) for p in points]
    if len(set(pts)) < len(pts):
        return 0j
    eng = _engine(spec, contour)
    zs = np.exp(2j * np.pi * (np.arange(z_nodes) + 0.5) / z_nodes)
    total = 0j
    for z in zs:
        total += np.linalg.det(kernel_matrix(spec, points, z=z, _engine_obj=eng)) * complex(theta3(z, spec.t))
    return complex(total / z_nodes)


def density_generating_coefficient(t: float, x, nodes: int = 512) -> float:
    """Coefficient of xi^x in (t;t)^3 / theta1(xi; t) on 1 < |xi| < 1/t.

    This is rho_1(x) of the (unmixed) uniform measure.
    """
    X = (as_twice(x) - 1) // 2
    u = -math.log(t) / 2
    w = math.exp(u) * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    # 1/theta1(w) = w^{-1/2} / phi(w): coefficient of w^{X+1/2} -> of w^{X+1} in 1/phi
    vals = 1 / theta1_reduced(w, t)
    coef = np.sum(vals * w ** (-(X + 1))) / nodes
    return float(np.real(qpoch_euler(t) ** 3 * coef))


# -- Frobenius multivariate path -------------------------------------------------


def _frobenius_radii(spec: ProcessSpec, taus: Sequence[int], n: int):
    """Log radii for zeta_i, eta_i with alpha_1 > 1/beta_1 > alpha_2 > 1/beta_2."""
    r = -math.log(spec.t)
    m = r / (2 * n)  # equal margins between consecutive radii and the theta poles
    # ladder in units of m: zeta_1 = c + (2n-1)m/2 ... alternating zeta, 1/eta
    ladder = [(2 * n - 1 - 2 * i) * m / 2 for i in range(2 * n)]
    zeta_base = ladder[0::2]
    eta_base = [-v for v in ladder[1::2]]
    wins = []
    for i, tau in enumerate(taus):
        lo, hi = _F_log_window(spec, tau)
        wins.append(((lo, hi), (-hi, -lo)))
    # common offset c: zeta radii shift by +c, eta radii by -c
    lo_c, hi_c = -math.inf, math.inf
    for (zw, ew), zb, eb in zip(wins, zeta_base, eta_base):
        lo_c = max(lo_c, zw[0] - zb, eb - ew[1])
        hi_c = min(hi_c, zw[1] - zb, eb - ew[0])
    if not lo_c < hi_c:
        raise ConfigurationError("no admissible Frobenius radii")
    if lo_c < 0 < hi_c:
        c = 0.0
    elif math.isinf(lo_c):
        c = hi_c - m
    elif math.isinf(hi_c):
        c = lo_c + m
    else:
        c = 0.5 * (lo_c + hi_c)
    return [zb + c for zb in zeta_base], [eb - c for eb in eta_base]


def correlation_frobenius(
    spec: ProcessSpec, points, nodes: int = 32, max_nodes: int = 128, tolerance: float = 1e-9
) -> complex:
    """rho_n (unmixed) from the 2n-fold theta cross-ratio integral, n <= 2."""
    pts = [_point(p) for p in points]
    if len(pts) > 2:
        raise ValueError("the Frobenius path supports at most two points")
    if len(set(pts)) < len(pts):
        return 0j
    pts.sort(key=lambda p: p[0])
    # Trapezoid errors here satisfy e(2n) ~ C e(n)^2.  With three levels the
    # constant is estimated from the successive differences, and the error of
    # the finest value is about d2^3 / d1^2.
    values = [_frobenius_value(spec, pts, nodes)]
    n = nodes
    while 2 * n <= max_nodes:
        n *= 2
        values.append(_frobenius_value(spec, pts, n))
        d2 = abs(values[-1] - values[-2])
        if d2 < tolerance:
            return values[-1]
        if len(values) >= 3:
            d1 = abs(values[-2] - values[-3])
            if d1 > 0 and d2 < d1 and d2 ** 3 / d1 ** 2 < tolerance:
                return values[-1]
    raise PrecisionError("Frobenius quadrature did not converge")


def _frobenius_value(spec: ProcessSpec, pts, n: int) -> complex:
    t = spec.t
    npts = len(pts)
    taus = [p[0] for p in pts]
    lz, le = _frobenius_radii(spec, taus, npts)
    phase = np.exp(2j * np.pi * np.arange(n) / n)
    zetas = [math.exp(a) * phase for a in lz]
    etas = [math.exp(b) * phase for b in le]
    euler3 = qpoch_euler(t) ** 3
    if npts == 1:
        (tau, X), = pts
        zeta, eta = zetas[0], etas[0]
        # coefficient of (zeta eta)^{X+1} in F G / phi(zeta eta)
        u = F_function(spec, tau, zeta) * zeta ** (-(X + 1))
        v = eta ** (-(X + 1)) / F_function(spec, tau, 1 / eta)
        P = 1 / theta1_reduced(np.outer(zeta, eta), t)
        return complex(euler3 * (u @ P @ v) / n ** 2)
    (t1, X1), (t2, X2) = pts
    z1, z2 = zetas
    e1, e2 = etas
    # monomial bookkeeping: zeta1, eta1 carry X1 + 1; zeta2, eta2 carry X2 + 2
    u1 = F_function(spec, t1, z1) * z1 ** (-(X1 + 1))
    u2 = F_function(spec, t2, z2) * z2 ** (-(X2 + 2))
    v1 = e1 ** (-(X1 + 1)) / F_function(spec, t1, 1 / e1)
    v2 = e2 ** (-(X2 + 2)) / F_function(spec, t2, 1 / e2)
    NZ = theta1_reduced(np.outer(z1, 1 / z2), t)  # [a1, a2]
    NE = theta1_reduced(np.outer(e1, 1 / e2), t)  # [b1, b2]
    P11 = 1 / theta1_reduced(np.outer(z1, e1), t)  # [a1, b1]
    P12 = 1 / theta1_reduced(np.outer(z1, e2), t)  # [a1, b2]
    P21 = 1 / theta1_reduced(np.outer(z2, e1), t)  # [a2, b1]
    P22 = 1 / theta1_reduced(np.outer(z2, e2), t)  # [a2, b2]
    A1 = NZ * u1[:, None]  # [a1, a2]
    total = 0j
    # contract a1 first in chunks over a2
    for a2 in range(n):
        # S[b1, b2] = sum_a1 A1[a1, a2] P11[a1, b1] P12[a1, b2]
        S = (P11.T * A1[:, a2]) @ P12
        W = S * NE * np.outer(P21[a2] * v1, P22[a2] * v2)
        total += u2[a2] * W.sum()
    return complex(euler3 ** 2 * total / n ** 4)


# -- the (1 + L) K = L relation -----------------------------------------------------


def _toeplitz_symbol_coeffs(a: Specialization, b: Specialization, jmax: int, nodes: int = 1024) -> np.ndarray:
    """Coefficients of H(a; 1/zeta) H(b; zeta), index -jmax..jmax."""
    phase = np.exp(2j * np.pi * np.arange(nodes) / nodes)
    vals = np.exp(a.log_H(1 / phase) + b.log_H(phase))
    return _laurent(vals, 0.0, jmax)


def build_L(spec: ProcessSpec, m: int) -> np.ndarray:
    """Block matrix L^{(m)} on N+1 copies of Z'(m), in the block order 0..N."""
    if m > 24:
        raise ValueError("m must be at most 24")
    if spec.growth_radius >= 1:
        # the Toeplitz symbols H(a; 1/zeta) H(b; zeta) must be analytic on |zeta| = 1
        raise ConfigurationError("L matrix needs every specialization to have growth radius < 1")
    N = spec.N
    side = 2 * m
    xs = np.arange(-m, m) + 0.5
    L = np.zeros(((N + 1) * side, (N + 1) * side), dtype=complex)
    L[0:side, N * side:(N + 1) * side] = np.diag(complex(spec.z) * spec.t ** xs)
    idx = np.arange(side)
    diff = idx[:, None] - idx[None, :]
    for k in range(1, N + 1):
        coeffs = _toeplitz_symbol_coeffs(spec.a[k - 1], spec.b[k - 1], side)
        block = coeffs[diff + side]
        L[k * side:(k + 1) * side, (k - 1) * side:k * side] = -block
    return L


def build_K(spec: ProcessSpec, m: int, contour: ContourSpec | None = None) -> np.ndarray:
    """Block matrix K^{(m)}: K_+ on and above the block diagonal, K_- below."""
    N = spec.N
    side = 2 * m
    Xs = np.arange(-m, m)
    eng = _engine(spec, contour)
    K = np.zeros(((N + 1) * side, (N + 1) * side), dtype=complex)
    for s in range(N + 1):
        for tt in range(N + 1):
            K[s * side:(s + 1) * side, tt * side:(tt + 1) * side] = eng.values(s, tt, Xs, Xs)
    return K


def lk_residual(spec: ProcessSpec, m: int, contour: ContourSpec | None = None) -> float:
    """max |(1 + L) K - L| over the central half of Z'(m) in every block."""
    L = build_L(spec, m)
    K = build_K(spec, m, contour)
    R = (np.eye(L.shape[0]) + L) @ K - L
    side = 2 * m
    xs = np.arange(-m, m) + 0.5
    central = np.abs(xs) < m / 2
    mask = np.tile(central, spec.N + 1)
    return float(np.max(np.abs(R[np.ix_(mask, mask)])))


# -- special families ---------------------------------------------------------------


def no_process_spec(mu, t: float, z: complex = 1.0) -> ProcessSpec:
    """N = 1 process with a = rho_mu, b = rho_{-mu}: the shift-mixed N-O measure."""
    return ProcessSpec(1, t, [rho(mu)], [rho(-mu)], z)


def no_kernel(mu, t: float, z, p_x, p_y, contour: ContourSpec | None = None) -> complex:
    """K_{mu,t,z}(x, y) of the shift-mixed Nekrasov-Okounkov measure."""
    spec = no_process_spec(mu, t, z)
    return kernel(spec, (1, p_x), (1, p_y), contour)


def cylindric_kernel(profile, s: float, p, q, contour: ContourSpec | None = None, z: complex = 1.0) -> complex:
    """Kernel of the shift-mixed cylindric process with contours inside the
    strips s^{sigma+1} < |zeta| < s^sigma and s^{-tau} < |eta| < s^{-tau-1}."""
    from .cylindric import to_process_spec

    spec = to_process_spec(profile, s, z)
    eng = _engine(spec, contour, _cylindric_windows(s))
    return kernel(spec, p, q, _engine_obj=eng)


def cylindric_engine(profile, s: float, contour: ContourSpec | None = None, z: complex = 1.0) -> _Engine:
    from .cylindric import to_process_spec

    return _engine(to_process_spec(profile, s, z), contour, _cylindric_windows(s))


def _cylindric_windows(s: float):
    ls = math.log(s)

    def windows(sigma: int, tau: int):
        zeta_w = ((sigma + 1) * ls, sigma * ls)
        eta_w = (-tau * ls, -(tau + 1) * ls)
        return zeta_w, eta_w

    return windows
