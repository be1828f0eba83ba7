"""Bulk scaling limits of the correlation kernels.

All kernels here are translation invariant and take the displacement
``d = x - y`` directly.  Integrals over the unit circle are written in the
angle ``theta`` with ``zeta = e^{i theta}``, so that

    (1 / 2 pi i) \\oint g(zeta) dzeta / zeta^{d+1} = mean_theta g(e^{i theta}) e^{-i d theta}.

Families:

* the general kernel of a self-adjoint periodic Schur process, its density
  and limit shape;
* the sine-kernel extensions built from arcs of the unit circle;
* the curves Gamma_kappa and the cylindric kernels (fixed period and slowly
  growing period);
* the kernels near the two corners of the square-corner profile;
* the Nekrasov-Okounkov kernel with imaginary parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize, special

from .kernels import PrecisionError
from .qseries import qpoch
from .symfunc import Specialization

__all__ = [
    "DomainError",
    "BranchError",
    "BulkPoint",
    "bulk_kernel_t31",
    "bulk_density",
    "limit_shape_v",
    "sine_extension_kernel",
    "sine_extension_via_t31",
    "GammaCurve",
    "gamma_curve_point",
    "f_kappa",
    "f_on_curve",
    "cylindric_bulk_kernel",
    "cylindric_bulk_density",
    "staircase_limit_shape",
    "gamma0",
    "solve_phi",
    "cylindric_slow_kernel",
    "slow_density",
    "laurent_arc_integral",
    "corner_gammas",
    "corner_gamma_range",
    "corner_solve_c",
    "corner_kernel",
    "corner_density",
    "arc_kernel",
    "periodic_profile_kernel",
    "no_phase_factor",
    "no_bulk_kernel",
    "no_bulk_density",
]

_TWO_PI = 2 * math.pi


class DomainError(ValueError):
    """Parameters outside the hypotheses of the limit theorem."""


class BranchError(DomainError):
    """A logarithm is evaluated on its cut."""


@dataclass(frozen=True)
class BulkPoint:
    sigma: int
    tau: int
    d: int
    gamma: float = 0.0
    z: complex = 1.0


def _as_bulk_point(point) -> BulkPoint:
    if isinstance(point, BulkPoint):
        return point
    return BulkPoint(*point)


def _fermi(w):
    """1 / (1 + e^w) without overflow, for real or complex w."""
    w = np.asarray(w)
    if not np.iscomplexobj(w):
        return special.expit(-w)
    big = w.real > 0
    safe = np.where(big, -w, w)
    ew = np.exp(safe)
    return np.where(big, ew / (1 + ew), 1 / (1 + ew))


# -- quadrature helpers -----------------------------------------------------


def _periodic_mean(func: Callable, nodes: int, tol: float, max_nodes: int):
    """Trapezoid mean of a smooth 2 pi-periodic function, doubling the grid.

    Each doubling only evaluates the new (odd) nodes.
    """
    n = nodes
    total = np.sum(func(_TWO_PI * np.arange(n) / n), axis=0)
    value = total / n
    while True:
        n2 = 2 * n
        if n2 > max_nodes:
            raise PrecisionError(f"periodic trapezoid did not converge in {max_nodes} nodes")
        odd = _TWO_PI * (2 * np.arange(n) + 1) / n2
        total = total + np.sum(func(odd), axis=0)
        new = total / n2
        if np.max(np.abs(new - value)) <= tol * max(1.0, float(np.max(np.abs(new)))):
            return new
        value, n = new, n2


def _gauss_legendre(func: Callable, lo: float, hi: float, nodes: int, tol: float, max_nodes: int):
    """Gauss-Legendre on [lo, hi] with node doubling.

    Node counts stay even, so the midpoint is never a node.
    """
    if hi <= lo:
        return 0j
    n = max(2, nodes + nodes % 2)
    prev = None
    while n <= max_nodes:
        x, w = np.polynomial.legendre.leggauss(n)
        half = 0.5 * (hi - lo)
        val = half * np.sum(w * func(0.5 * (hi + lo) + half * x))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return complex(val)
        prev, n = val, 2 * n
    raise PrecisionError(f"Gauss-Legendre did not converge in {max_nodes} nodes")


def _quad_complex(func: Callable, lo: float, hi: float, points=(), tol: float = 1e-13) -> complex:
    inner = sorted(p for p in points if lo < p < hi)
    opts = dict(limit=800, epsabs=tol, epsrel=tol)
    if inner:
        opts["points"] = inner
    re, _ = integrate.quad(lambda th: float(np.real(func(th))), lo, hi, **opts)
    im, _ = integrate.quad(lambda th: float(np.imag(func(th))), lo, hi, **opts)
    return complex(re, im)


# -- periodic Schur process: general bulk kernel ------------------------------


def _log_H_sum(specs, u):
    out = np.zeros(np.shape(u), dtype=complex)
    for sp in specs:
        out = out + sp.log_H(u)
    return out


def _check_self_adjoint(a, b, nmax: int = 40, tol: float = 1e-12):
    n = np.arange(1, nmax + 1)
    A = sum((sp.a(n) for sp in a), np.zeros(nmax, complex))
    B = sum((sp.a(n) for sp in b), np.zeros(nmax, complex))
    if np.max(np.abs(A - np.conj(B))) > tol * max(1.0, float(np.max(np.abs(A)))):
        raise DomainError("bulk kernel requires A_n = conj(B_n) for all n")
    radius = max((sp.growth_radius for sp in (*a, *b)), default=0.0)
    if radius >= 1:
        raise DomainError("specializations must have growth radius below 1")


def _t31_integrand(a, b, sigma: int, tau: int, d: int, gamma: float, z: complex):
    N = len(a)
    if len(b) != N:
        raise DomainError("a and b must have the same period")
    if not (1 <= sigma <= N and 1 <= tau <= N):
        raise DomainError("times must lie in 1..N")
    lz = complex(np.log(complex(z)))
    lo_t, hi_t = min(sigma, tau), max(sigma, tau)
    seg_a, seg_b = a[lo_t:hi_t], b[lo_t:hi_t]

    def func(theta):
        zeta = np.exp(1j * np.asarray(theta))
        total = _log_H_sum(a, 1 / zeta) + _log_H_sum(b, zeta)
        seg = _log_H_sum(seg_a, 1 / zeta) + _log_H_sum(seg_b, zeta)
        if sigma <= tau:
            val = np.exp(-seg) * _fermi(gamma - lz - total)
        else:
            val = -np.exp(seg) * _fermi(-gamma + lz + total)
        return val * np.exp(-1j * d * np.asarray(theta))

    return func


def bulk_kernel_t31(
    a: Sequence[Specialization],
    b: Sequence[Specialization],
    point,
    nodes: int = 256,
    tol: float = 1e-12,
    max_nodes: int = 1 << 20,
) -> complex:
    """Limit kernel K^{(z, gamma)}_{sigma, tau}(d) of the shift-mixed process.

    ``a`` and ``b`` are the per-time specializations ``a[1..N]``, ``b[1..N]``;
    ``point`` is a :class:`BulkPoint` or a tuple ``(sigma, tau, d, gamma[, z])``.
    """
    p = _as_bulk_point(point)
    _check_self_adjoint(a, b)
    if abs(np.angle(complex(p.z))) >= math.pi:
        raise DomainError("need |arg z| < pi")
    func = _t31_integrand(list(a), list(b), p.sigma, p.tau, p.d, p.gamma, p.z)
    return complex(_periodic_mean(func, nodes, tol, max_nodes))


def bulk_density(a, b, gamma: float, z: complex = 1.0, **quad) -> float:
    return float(np.real(bulk_kernel_t31(a, b, BulkPoint(1, 1, 0, gamma, z), **quad)))


def limit_shape_v(a, b, u: float, nodes: int = 256, tol: float = 1e-12, max_nodes: int = 1 << 20) -> float:
    """v(u) = u + 2 * mean_theta ln(1 + e^{-u + sum_n (A_n zeta^{-n} + B_n zeta^n)})."""
    _check_self_adjoint(a, b)

    def func(theta):
        zeta = np.exp(1j * np.asarray(theta))
        expo = np.real(_log_H_sum(a, 1 / zeta) + _log_H_sum(b, zeta))
        return np.logaddexp(0.0, -u + expo)

    return float(u + 2 * _periodic_mean(func, nodes, tol, max_nodes))


# -- sine-kernel extensions ---------------------------------------------------


def _tp_parts(spec: Specialization):
    """(alphas, betas, drift) of a totally positive specialization."""
    kind = spec.kind
    if kind == "trivial":
        return [], [], 0.0
    if kind == "single":
        return [spec.params[0]], [], 0.0
    if kind == "tp":
        alpha, beta, drift = spec.params
        return list(alpha), list(beta), drift
    if kind == "union":
        al, be, dr = [], [], 0.0
        for child in spec.children:
            ca, cb, cd = _tp_parts(child)
            al += ca
            be += cb
            dr += cd
        return al, be, dr
    raise DomainError(f"{spec.literal()} is not of totally positive type")


def _check_admissible(spec: Specialization):
    alpha, beta, drift = _tp_parts(spec)
    for v in (*alpha, *beta, drift):
        if isinstance(v, complex) or np.iscomplexobj(v) or v < 0:
            raise DomainError(f"{spec.literal()}: parameters must be real and nonnegative")
    # alpha = 1 is the admissible limit case; beta < 1 keeps H^{-1} finite on the circle
    if any(v > 1 for v in alpha) or any(v >= 1 for v in beta):
        raise DomainError(f"{spec.literal()}: need alpha <= 1 and beta < 1")


def sine_extension_kernel(
    a_chain: Sequence[Specialization],
    b_chain: Sequence[Specialization],
    c: float,
    sigma: int,
    tau: int,
    d: int,
    nodes: int = 64,
    tol: float = 1e-13,
    max_nodes: int = 1 << 14,
) -> complex:
    """Arc-integral extension of the discrete sine kernel.

    ``a_chain[k-1]``, ``b_chain[k-1]`` are the specializations at time k;
    times run over 0..len(chain) and the kernel uses the unions over (sigma, tau].
    """
    if not 0 < c < math.pi:
        raise DomainError("c must lie in (0, pi)")
    N = len(a_chain)
    if len(b_chain) != N or not (0 <= sigma <= N and 0 <= tau <= N):
        raise DomainError("times must lie in 0..N with chains of equal length")
    for sp in (*a_chain, *b_chain):
        _check_admissible(sp)
    lo_t, hi_t = min(sigma, tau), max(sigma, tau)
    seg_a, seg_b = list(a_chain[lo_t:hi_t]), list(b_chain[lo_t:hi_t])

    def log_h(theta):
        zeta = np.exp(1j * theta)
        return _log_H_sum(seg_a, 1 / zeta) + _log_H_sum(seg_b, zeta)

    if sigma <= tau:
        def func(theta):
            return np.exp(-log_h(theta) - 1j * d * theta) / _TWO_PI

        return _gauss_legendre(func, -c, c, nodes, tol, max_nodes)

    def func(theta):
        return -np.exp(log_h(theta) - 1j * d * theta) / _TWO_PI

    return _gauss_legendre(func, c, _TWO_PI - c, nodes, tol, max_nodes)


def sine_extension_via_t31(a_chain, b_chain, c: float, sigma: int, tau: int, d: int, M: float = 1e8) -> complex:
    """The same kernel as a large-drift limit of the general bulk kernel.

    The chain is doubled with a[N+k] = b[k], b[N+k] = a[k] and closed by two
    pure-drift specializations of size M, at e^gamma = e^{2 M cos c}.  The
    error is O(1/M); the integrand is a near step at theta = +-c, so adaptive
    quadrature with breakpoints is used instead of the trapezoid.
    """
    from .symfunc import tp

    if not 0 < c < math.pi:
        raise DomainError("c must lie in (0, pi)")
    N = len(a_chain)
    if not (1 <= sigma <= N and 1 <= tau <= N):
        raise DomainError("times must lie in 1..N for the doubled chain")
    a = list(a_chain) + list(b_chain) + [tp(drift=M)]
    b = list(b_chain) + list(a_chain) + [tp(drift=M)]
    gamma = 2 * M * math.cos(c)
    func = _t31_integrand(a, b, sigma, tau, d, gamma, 1.0)
    return _quad_complex(func, -math.pi, math.pi, points=(-c, c)) / _TWO_PI


# -- the curves Gamma_kappa ------------------------------------------------------


def _sin_ratio(num: float, den: float, phi):
    """sin(num phi) / sin(den phi) with its limit num / den at phi = 0."""
    phi = np.asarray(phi)
    return (num * np.sinc(num * phi / math.pi)) / (den * np.sinc(den * phi / math.pi))


@dataclass(frozen=True)
class GammaCurve:
    """The closed curve zeta(phi) = 1 - S(phi) e^{i phi}, S = sin((1+kappa)phi) / sin(kappa phi)."""

    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("slope kappa must be positive")

    @property
    def phi_max(self) -> float:
        return math.pi / (1 + self.kappa)

    def S(self, phi):
        return _sin_ratio(1 + self.kappa, self.kappa, phi)

    def T(self, phi):
        """sin((1+kappa)phi) / sin(phi), so that 1 - 1/zeta = T e^{-i kappa phi}."""
        return _sin_ratio(1 + self.kappa, 1.0, phi)

    def point(self, phi):
        phi = np.asarray(phi, dtype=float)
        if np.any(np.abs(phi) > self.phi_max):
            raise DomainError("phi outside (-pi/(1+kappa), pi/(1+kappa))")
        out = 1 - self.S(phi) * np.exp(1j * phi)
        return out[()] if out.ndim == 0 else out

    def derivative(self, phi):
        phi = np.asarray(phi, dtype=float)
        step = 1e-30
        # complex-step derivative of the analytic ratio S
        s_prime = np.imag(self.S(phi + 1j * step)) / step
        return -(s_prime + 1j * self.S(phi)) * np.exp(1j * phi)

    def f_value(self, phi):
        """f_kappa restricted to the curve: kappa ln S + ln T (real)."""
        return self.kappa * np.log(self.S(phi)) + np.log(self.T(phi))

    @property
    def f_max(self) -> float:
        k = self.kappa
        return math.log1p(k) + k * math.log1p(1 / k)


def gamma_curve_point(curve: GammaCurve | float, phi) -> complex:
    if not isinstance(curve, GammaCurve):
        curve = GammaCurve(curve)
    return curve.point(phi)


def f_kappa(curve: GammaCurve | float, zeta) -> complex:
    """kappa ln(1 - zeta) + ln(1 - 1/zeta) on the principal branches."""
    kappa = curve.kappa if isinstance(curve, GammaCurve) else float(curve)
    z = np.asarray(zeta, dtype=complex)
    if np.any((z.imag == 0) & (z.real >= 0)):
        raise BranchError("f_kappa is holomorphic off the half-line [0, inf)")
    out = kappa * np.log(1 - z) + np.log(1 - 1 / z)
    return out[()] if out.ndim == 0 else out


def f_on_curve(curve: GammaCurve | float, phi):
    if not isinstance(curve, GammaCurve):
        curve = GammaCurve(curve)
    return curve.f_value(phi)


def _curve_integrand(curve: GammaCurve, powers_B: int, powers_A: int, d: int, weight=None):
    """phi -> (1-zeta)^B (1-1/zeta)^A zeta^{-d-1} zeta'(phi) / (2 pi i) * weight(phi)."""
    kappa = curve.kappa

    def func(phi):
        S, T = curve.S(phi), curve.T(phi)
        factor = S ** float(powers_B) * T ** float(powers_A) * np.exp(1j * (powers_B - kappa * powers_A) * phi)
        zeta = 1 - S * np.exp(1j * phi)
        val = factor * zeta ** (-(d + 1)) * curve.derivative(phi) / (2j * math.pi)
        if weight is not None:
            val = val * weight(phi)
        return val

    return func


# -- cylindric partitions with a fixed profile ---------------------------------------


def cylindric_bulk_kernel(
    profile,
    gamma: float,
    sigma: int,
    tau: int,
    d: int,
    nodes: int = 64,
    tol: float = 1e-13,
    max_nodes: int = 1 << 14,
) -> complex:
    """Limit kernel of the uniform cylindric measure for a fixed profile.

    The integral runs over Gamma_kappa, kappa = l / d, on which
    e^gamma (1 - zeta)^l (1 - 1/zeta)^d = e^{gamma + d f} is real and positive.
    """
    dA, lB = profile.d, profile.l
    if dA == 0:
        raise DomainError("the bulk kernel needs a profile with d >= 1")
    curve = GammaCurve(lB / dA)
    N = profile.N
    if not (1 <= sigma <= N and 1 <= tau <= N):
        raise DomainError("times must lie in 1..N")

    def log_w(phi):
        return gamma + lB * np.log(curve.S(phi)) + dA * np.log(curve.T(phi))

    if sigma <= tau:
        A_cnt, B_cnt = profile.count_A(sigma, tau), profile.count_B(sigma, tau)
        func = _curve_integrand(curve, B_cnt, A_cnt, d, lambda phi: _fermi(log_w(phi)))
    else:
        A_cnt, B_cnt = profile.count_A(tau, sigma), profile.count_B(tau, sigma)
        # rewritten form: weight -e^gamma / (1 + e^w), always finite on the curve
        func = _curve_integrand(
            curve, lB - B_cnt, dA - A_cnt, d, lambda phi: -np.exp(gamma - np.logaddexp(0.0, log_w(phi)))
        )
    return _gauss_legendre(func, -curve.phi_max, curve.phi_max, nodes, tol, max_nodes)


def cylindric_bulk_density(profile, gamma: float, **quad) -> float:
    return float(np.real(cylindric_bulk_kernel(profile, gamma, 1, 1, 0, **quad)))


def staircase_limit_shape(u):
    """Limit shape boundary for d = l = 1: v(u) = u + 2 ln((s + 1) / (s - 1)), s = sqrt(1 + 4 e^u)."""
    s = np.sqrt(1 + 4 * np.exp(np.asarray(u, dtype=float)))
    return np.asarray(u) + 2 * np.log((s + 1) / (s - 1))


# -- slowly growing period ---------------------------------------------------------------


def gamma0(kappa: float) -> float:
    return -(math.log1p(kappa) / (1 + kappa) + math.log1p(1 / kappa) / (1 + 1 / kappa))


def solve_phi(kappa: float, gamma: float, xtol: float = 1e-14) -> float:
    """phi in (0, pi/(1+kappa)) with f_kappa(zeta(phi)) = -(1 + kappa) gamma; 0 if gamma <= gamma0."""
    curve = GammaCurve(kappa)
    if gamma <= gamma0(kappa):
        return 0.0
    target = -(1 + kappa) * gamma

    def g(phi):
        return float(curve.f_value(phi)) - target

    hi = curve.phi_max
    # f decreases from f_max at 0 to -inf at phi_max; shrink hi until g < 0 is finite
    hi_eval = hi * (1 - 1e-15)
    if g(hi_eval) >= 0:
        return hi_eval
    return optimize.brentq(g, 0.0, hi_eval, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)


def _laurent_coefficients(B_cnt: int, A_cnt: int):
    """{power: coeff} of (1 - zeta)^B (1 - 1/zeta)^A."""
    out: dict[int, int] = {}
    for i in range(B_cnt + 1):
        for j in range(A_cnt + 1):
            coeff = math.comb(B_cnt, i) * math.comb(A_cnt, j) * (-1) ** (i + j)
            out[i - j] = out.get(i - j, 0) + coeff
    return out


def laurent_arc_integral(B_cnt: int, A_cnt: int, d: int, start: complex, end: complex, winding_arg: float) -> complex:
    """(1/2 pi i) int (1-zeta)^B (1-1/zeta)^A zeta^{-d-1} dzeta from start to end.

    The integrand is a Laurent polynomial; ``winding_arg`` is the change of
    arg(zeta) along the path, needed for the zeta^{-1} term.
    """
    total = 0j
    for power, coeff in _laurent_coefficients(B_cnt, A_cnt).items():
        k = power - d
        if k == 0:
            total += coeff * 1j * winding_arg
        else:
            total += coeff * (end ** k - start ** k) / k
    return total / (2j * math.pi)


def cylindric_slow_kernel(
    A_cnt: int,
    B_cnt: int,
    kappa: float,
    gamma: float,
    d: int,
    sigma_le_tau: bool = True,
    nodes: int = 64,
    tol: float = 1e-13,
    max_nodes: int = 1 << 14,
) -> complex:
    """Limit kernel for slowly growing period along Gamma_kappa.

    ``A_cnt``, ``B_cnt`` are A(sigma, tau], B(sigma, tau] when sigma <= tau and
    A(tau, sigma], B(tau, sigma] otherwise.
    """
    curve = GammaCurve(kappa)
    phi = solve_phi(kappa, gamma)
    top = curve.phi_max
    if sigma_le_tau:
        if phi == 0.0:
            coeffs = _laurent_coefficients(B_cnt, A_cnt)
            return complex(coeffs.get(d, 0))
        func = _curve_integrand(curve, B_cnt, A_cnt, d)
        return _gauss_legendre(func, phi, top, nodes, tol, max_nodes) + _gauss_legendre(
            func, -top, -phi, nodes, tol, max_nodes
        )
    if phi == 0.0:
        return 0j
    func = _curve_integrand(curve, -B_cnt, -A_cnt, d)
    return -_gauss_legendre(func, -phi, phi, nodes, tol, max_nodes)


def slow_density(kappa: float, gamma: float) -> float:
    return 1 - (1 + kappa) * solve_phi(kappa, gamma) / math.pi


# -- the square-corner profile ------------------------------------------------------


def _log_abs_qpoch(x, t):
    return float(np.log(np.abs(qpoch(x, t))))


def corner_gammas(t: float, c: float, corner: str) -> float:
    """gamma(t, c) for the outer corner (largest section) or the inner corner."""
    if not 0 < t < 1:
        raise DomainError("t must lie in (0, 1)")
    e = complex(math.cos(c), math.sin(c))
    rt = math.sqrt(t)
    if corner == "outer":
        return 2 * (_log_abs_qpoch(e * rt, t) - _log_abs_qpoch(e, t))
    if corner == "inner":
        return 2 * (_log_abs_qpoch(e * t, t) - _log_abs_qpoch(e * rt, t))
    raise DomainError(f"corner must be 'outer' or 'inner', got {corner!r}")


def corner_gamma_range(t: float, corner: str) -> tuple[float, float]:
    rt = math.sqrt(t)
    if corner == "outer":
        return 2 * (_log_abs_qpoch(-rt, t) - _log_abs_qpoch(-1.0, t)), math.inf
    if corner == "inner":
        return (
            2 * (_log_abs_qpoch(-t, t) - _log_abs_qpoch(-rt, t)),
            2 * (_log_abs_qpoch(t, t) - _log_abs_qpoch(rt, t)),
        )
    raise DomainError(f"corner must be 'outer' or 'inner', got {corner!r}")


def corner_solve_c(t: float, gamma: float, corner: str, xtol: float = 1e-14) -> float:
    """c in [0, pi]: pi below the range, 0 above it, otherwise the root."""
    gmin, gmax = corner_gamma_range(t, corner)
    if gamma <= gmin:
        return math.pi
    if gamma >= gmax:
        return 0.0

    def g(c):
        return corner_gammas(t, c, corner) - gamma

    lo = 1e-300 if corner == "inner" else None
    if lo is None:
        # outer: gamma -> +inf as c -> 0; bracket by halving
        lo = 0.5
        while g(lo) < 0:
            lo *= 0.5
            if lo < 1e-300:
                return 0.0
    return optimize.brentq(g, lo, math.pi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)


def arc_kernel(
    c: float,
    A_cnt: int,
    B_cnt: int,
    d: int,
    sigma_le_tau: bool = True,
    nodes: int = 64,
    tol: float = 1e-13,
    max_nodes: int = 1 << 14,
) -> complex:
    """Unit-circle arc integral of (1-zeta)^{+-B}(1-1/zeta)^{+-A} zeta^{-d-1}.

    sigma <= tau integrates over |theta| < c; sigma > tau integrates the
    negative powers over the complementary arc through -1.
    """
    if sigma_le_tau:
        if c >= math.pi:
            return complex(_laurent_coefficients(B_cnt, A_cnt).get(d, 0))
        if c <= 0:
            return 0j
        sign_b, sign_a, lo, hi, sign = B_cnt, A_cnt, -c, c, 1.0
    else:
        if c >= math.pi:
            return 0j
        if c <= 0:
            if A_cnt or B_cnt:
                raise DomainError("full-circle integral with a pole at zeta = 1")
            return complex(-(d == 0))
        sign_b, sign_a, lo, hi, sign = -B_cnt, -A_cnt, c, _TWO_PI - c, -1.0

    def func(theta):
        zeta = np.exp(1j * theta)
        return sign * (1 - zeta) ** float(sign_b) * (1 - 1 / zeta) ** float(sign_a) * np.exp(-1j * d * theta) / _TWO_PI

    return _gauss_legendre(func, lo, hi, nodes, tol, max_nodes)


def corner_kernel(t: float, gamma: float, corner: str, A_cnt: int, B_cnt: int, d: int, sigma_le_tau: bool = True) -> complex:
    return arc_kernel(corner_solve_c(t, gamma, corner), A_cnt, B_cnt, d, sigma_le_tau)


def corner_density(t: float, gamma: float, corner: str) -> float:
    return corner_solve_c(t, gamma, corner) / math.pi


def periodic_profile_kernel(gamma: float, A_cnt: int, B_cnt: int, d: int, sigma_le_tau: bool = True) -> complex:
    """Unit-circle form of the slope-one limit: arc kernel at c = 2 arcsin(e^{-gamma} / 2)."""
    if gamma <= -math.log(2):
        c = math.pi
    else:
        c = 2 * math.asin(math.exp(-gamma) / 2)
    return arc_kernel(c, A_cnt, B_cnt, d, sigma_le_tau)


# -- Nekrasov-Okounkov measure ---------------------------------------------------------


def no_phase_factor(mu0: float, theta, form: str = "piecewise"):
    """(1 - zeta)^{-i mu0} (1 - 1/zeta)^{i mu0} at zeta = e^{i theta}, theta in [-pi, pi], theta != 0."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta == 0):
        raise BranchError("the phase factor jumps at zeta = 1")
    if form == "piecewise":
        return np.exp(mu0 * (theta - np.pi * np.sign(theta)))
    if form == "principal":
        zeta = np.exp(1j * theta)
        return np.exp(-1j * mu0 * np.log(1 - zeta) + 1j * mu0 * np.log(1 - 1 / zeta))
    raise ValueError(f"unknown form {form!r}")


def no_bulk_kernel(mu0: float, z: float, gamma: float, d: int, tol: float = 1e-13) -> complex:
    """Limit kernel of the shift-mixed measure M_{i mu0, t, z}."""
    if not z > 0:
        raise DomainError("z must be positive")
    shift = gamma - math.log(z)
    if mu0 == 0:
        return complex(special.expit(-shift)) if d == 0 else 0j

    def func(theta):
        w = shift + mu0 * (theta - math.pi * np.sign(theta))
        return special.expit(-w) * np.exp(-1j * d * theta) / _TWO_PI

    # Fermi edges: w = 0 on either half circle
    edges = [math.pi - shift / mu0, -math.pi - shift / mu0]
    upper = _quad_complex(func, 0.0, math.pi, points=edges, tol=tol)
    lower = _quad_complex(func, -math.pi, 0.0, points=edges, tol=tol)
    return upper + lower


def no_bulk_density(mu0: float, z: float, gamma: float) -> float:
    """(1 / 2 pi mu0) ln((e^gamma + z e^{pi mu0}) / (e^gamma + z e^{-pi mu0}))."""
    if not z > 0:
        raise DomainError("z must be positive")
    if mu0 == 0:
        return float(special.expit(math.log(z) - gamma))
    lz = math.log(z)
    num = np.logaddexp(gamma, lz + math.pi * mu0)
    den = np.logaddexp(gamma, lz - math.pi * mu0)
    return float((num - den) / (_TWO_PI * mu0))
