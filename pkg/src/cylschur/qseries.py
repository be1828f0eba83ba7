"""q-Pochhammer products, Jacobi theta functions and related identities.

All functions accept scalars or numpy arrays for the main argument and a
nome given either as a float ``t`` or a :class:`Nome`.  Theta functions are
available in sum form (the default) and product form, which serve as two
independent evaluation paths for each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

__all__ = [
    "Nome",
    "qpoch",
    "qpoch_euler",
    "theta3",
    "theta3_product",
    "theta1",
    "theta1_product",
    "theta1_reduced",
    "ramanujan_sum_lhs",
    "ramanujan_rhs",
    "frobenius_theta_kernel",
    "frobenius_det_check",
    "dilog",
]

_CUTOFF = 1e-17
_LOG_TAIL = 40.0  # e^-40 ~ 4e-18 relative to the leading term


@dataclass(frozen=True)
class Nome:
    t: complex
    tolerance: float = 1e-15

    def __post_init__(self):
        if not abs(self.t) < 1:
            raise ValueError(f"nome must satisfy |t| < 1, got {self.t}")


def _nome(nome) -> complex:
    t = nome.t if isinstance(nome, Nome) else nome
    if not abs(t) < 1:
        raise ValueError(f"nome must satisfy |t| < 1, got {t}")
    return t


def _real_if_real(value, *inputs):
    if all(np.isrealobj(v) for v in inputs):
        return np.real(value)
    return value


def qpoch(a, nome):
    """The infinite product (a; t)_inf = prod_{n>=0} (1 - a t^n)."""
    t = _nome(nome)
    a_arr = np.asarray(a)
    if t == 0:
        out = 1 - a_arr
        return out if out.ndim else out[()]
    amax = max(float(np.max(np.abs(a_arr))) if a_arr.size else 0.0, 1.0)
    nterms = int(math.ceil(math.log(_CUTOFF / amax) / math.log(abs(t)))) + 1
    powers = t ** np.arange(max(nterms, 1))
    factors = 1 - a_arr[..., None] * powers
    out = np.prod(factors, axis=-1)
    return out if out.ndim else out[()]


def qpoch_euler(nome):
    """(t; t)_inf."""
    t = _nome(nome)
    return qpoch(t, t)


def _theta_range(z_abs_log: float, r: float) -> int:
    # terms |z|^S t^{S^2/2} = exp(S*L - r S^2/2) are below e^-40 past this S
    L = abs(z_abs_log)
    return int(math.ceil((L + math.sqrt(L * L + 2 * r * _LOG_TAIL)) / r)) + 2


def theta3(z, nome):
    """theta_3(z; t) = sum_S z^S t^{S^2/2} (sum form)."""
    t = _nome(nome)
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr == 0):
        raise ValueError("theta3 is undefined at z = 0")
    if t == 0:
        out = np.ones_like(z_arr)
        return _scalar(_real_if_real(out, z, t))
    logz = np.log(z_arr)
    r = -math.log(abs(t))
    smax = _theta_range(float(np.max(np.abs(logz.real))), r)
    S = np.arange(-smax, smax + 1)
    logt = np.log(complex(t))
    terms = np.exp(logz[..., None] * S + logt * S * S / 2)
    out = terms.sum(axis=-1)
    return _scalar(_real_if_real(out, z, t))


def theta3_product(z, nome):
    """theta_3 via (t;t)(-sqrt(t) z; t)(-sqrt(t)/z; t)."""
    t = _nome(nome)
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr == 0):
        raise ValueError("theta3 is undefined at z = 0")
    rt = np.sqrt(complex(t))
    out = qpoch_euler(t) * qpoch(-rt * z_arr, t) * qpoch(-rt / z_arr, t)
    return _scalar(_real_if_real(out, z, t))


def theta1_reduced(x, nome):
    """phi(x) = sum_n (-1)^n t^{n(n+1)/2} x^n, so that theta_1 = sqrt(x) * phi(x).

    Unlike theta_1 it is single valued, which is what the Frobenius
    identity and the multivariate integrals need.
    """
    t = _nome(nome)
    x_arr = np.asarray(x, dtype=complex)
    if np.any(x_arr == 0):
        raise ValueError("theta1 is undefined at x = 0")
    if t == 0:
        return _scalar(1 - 1 / x_arr)
    logx = np.log(x_arr)
    r = -math.log(abs(t))
    nmax = _theta_range(float(np.max(np.abs(logx.real))) + r / 2, r)
    n = np.arange(-nmax, nmax + 1)
    logt = np.log(complex(t))
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    terms = sign * np.exp(logx[..., None] * n + logt * n * (n + 1) / 2)
    return _scalar(terms.sum(axis=-1))


def theta1(x, nome):
    """theta_1(x; t) = sum_n (-1)^n t^{n(n+1)/2} x^{n+1/2}, principal sqrt."""
    x_arr = np.asarray(x, dtype=complex)
    return _scalar(np.sqrt(x_arr) * theta1_reduced(x_arr, nome))


def theta1_product(x, nome):
    """theta_1 via (t;t)(x^{1/2} - x^{-1/2})(t x; t)(t/x; t)."""
    t = _nome(nome)
    x_arr = np.asarray(x, dtype=complex)
    if np.any(x_arr == 0):
        raise ValueError("theta1 is undefined at x = 0")
    rx = np.sqrt(x_arr)
    out = qpoch_euler(t) * (rx - 1 / rx) * qpoch(t * x_arr, t) * qpoch(t / x_arr, t)
    return _scalar(out)


def _scalar(a):
    a = np.asarray(a)
    return a[()] if a.ndim == 0 else a


def ramanujan_sum_lhs(y, z, nome, side: str, tol: float = 1e-17):
    """Partial sums of the two bilateral series of the Ramanujan identity.

    ``side="outer"`` sums y^m / (1 + (z t^m)^{-1}) for 1 < |y| < 1/|t|;
    ``side="inner"`` sums -y^m / (1 + z t^m) for |t| < |y| < 1.  In both
    cases m runs over the half-integers.
    """
    t = _nome(nome)
    y = complex(y)
    z = complex(z)
    ay = abs(y)
    if side == "outer":
        if not 1 < ay < 1 / abs(t):
            raise ValueError("outer side requires 1 < |y| < 1/|t|")
    elif side == "inner":
        if not abs(t) < ay < 1:
            raise ValueError("inner side requires |t| < |y| < 1")
    else:
        raise ValueError(f"unknown side {side!r}")
    # terms decay like a geometric series in both directions; size the range
    # from the slower of the two ratios
    if side == "outer":
        ratios = (1 / ay, ay * abs(t))
    else:
        ratios = (ay, abs(t) / ay)
    mmax = int(math.ceil(math.log(tol) / math.log(max(ratios)))) + 4
    m = np.arange(-mmax, mmax) + 0.5
    # log-space evaluation: y^m and (z t^m)^{+-1} overflow separately at the ends
    log_zt = np.log(complex(z)) + m * np.log(complex(t))
    log_y = m * np.log(complex(y))
    big = log_zt.real > 0
    if side == "outer":
        # y^m / (1 + 1/(z t^m))
        expo = np.where(big, log_y, log_y + log_zt)
        den = np.where(big, 1 + np.exp(-np.where(big, log_zt, 0)), 1 + np.exp(np.where(big, 0, log_zt)))
        terms = np.exp(expo) / den
    else:
        # -y^m / (1 + z t^m)
        expo = np.where(big, log_y - log_zt, log_y)
        den = np.where(big, 1 + np.exp(-np.where(big, log_zt, 0)), 1 + np.exp(np.where(big, 0, log_zt)))
        terms = -np.exp(expo) / den
    return complex(np.sum(terms))


def ramanujan_rhs(y, z, nome):
    """Closed form (t;t)^3 * (-sqrt(y) theta3(yz)) / (theta3(-y/sqrt(t)) theta3(z))."""
    t = _nome(nome)
    y_arr = np.asarray(y, dtype=complex)
    den = theta3(-y_arr / np.sqrt(complex(t)), t) * theta3(z, t)
    if np.any(den == 0):
        raise ZeroDivisionError("theta3 zero in denominator")
    out = qpoch_euler(t) ** 3 * (-np.sqrt(y_arr) * theta3(y_arr * z, t)) / den
    return _scalar(out)


def frobenius_theta_kernel(u, zhat, nome):
    """theta1(zhat u) / (theta1(zhat) theta1(u)).

    The square roots are taken coherently, sqrt(zhat u) = sqrt(zhat) sqrt(u),
    so the value is the single-valued ratio of reduced thetas.
    """
    num = theta1_reduced(np.asarray(zhat) * np.asarray(u), nome)
    den = theta1_reduced(zhat, nome) * theta1_reduced(u, nome)
    if np.any(den == 0):
        raise ZeroDivisionError("theta1 zero in denominator")
    return _scalar(num / den)


def frobenius_det_check(zetas, etas, zhat, nome):
    """Return (det of the kernel matrix, closed product form).

    The left side is det[k(zeta_i eta_j)] with ``k = frobenius_theta_kernel``.
    The right side is the cross-ratio product.  Half-integer monomials are
    assembled from the logarithms of the individual variables so both sides
    use one coherent branch.
    """
    zetas = np.asarray(zetas, dtype=complex)
    etas = np.asarray(etas, dtype=complex)
    n = len(zetas)
    if len(etas) != n or n > 4:
        raise ValueError("need equal numbers of zetas and etas, at most 4")
    mat = frobenius_theta_kernel(np.outer(zetas, etas), zhat, nome)
    lhs = complex(np.linalg.det(np.atleast_2d(mat)))

    t = _nome(nome)
    prod_all = np.prod(zetas) * np.prod(etas)
    value = theta1_reduced(zhat * prod_all, t) / theta1_reduced(zhat, t)
    lz, le = np.log(zetas), np.log(etas)
    half = 0.5 * (lz.sum() + le.sum())
    for i in range(n):
        for j in range(i + 1, n):
            value = value * theta1_reduced(zetas[i] / zetas[j], t)
            value = value * theta1_reduced(etas[i] / etas[j], t)
            half += 0.5 * (lz[i] - lz[j] + le[i] - le[j])
    value = value / np.prod(theta1_reduced(np.outer(zetas, etas), t))
    half -= 0.5 * n * (lz.sum() + le.sum())
    rhs = complex(value * np.exp(half))
    return lhs, rhs


def dilog(x):
    """Li_2(x) = -int_0^x ln(1-w)/w dw on the plane cut along (1, inf)."""
    x_arr = np.asarray(x, dtype=complex)
    on_cut = (np.abs(x_arr.imag) == 0) & (x_arr.real > 1)
    if np.any(on_cut):
        raise ValueError("dilog is evaluated on its branch cut (1, inf)")
    out = special.spence(1 - x_arr)
    return _scalar(_real_if_real(out, x) if np.all(np.isreal(x_arr)) else out)
