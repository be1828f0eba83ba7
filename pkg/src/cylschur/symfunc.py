"""Specializations of the algebra of symmetric functions.

A specialization is stored through closed-form constructors.  Each one knows
its scaled power sums ``a_n = p_n / n``, the logarithm of its generating
function ``H(spec; u) = exp(sum_n a_n u^n)`` in closed form, and a growth
radius ``R`` with ``|n a_n| = O(R^n)``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .partitions import as_partition, contains, is_horizontal_strip

__all__ = [
    "Specialization",
    "trivial",
    "single",
    "tp",
    "rho",
    "scale",
    "union",
    "negate",
    "parse_specialization",
    "complete_homogeneous",
    "complete_homogeneous_list",
    "skew_schur",
    "skew_schur_single",
    "cauchy_H",
    "tp_generating",
]


def _parse_complex(text: str) -> complex:
    s = text.strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    return complex(s)


def _fmt_number(v) -> str:
    v = complex(v)
    if v.imag == 0:
        return repr(float(v.real))
    if v.real == 0:
        return repr(float(v.imag)) + "i"
    sign = "+" if v.imag >= 0 else "-"
    return f"{float(v.real)!r}{sign}{abs(float(v.imag))!r}i"


@dataclass(frozen=True)
class Specialization:
    """Immutable specialization; build it with the module-level constructors."""

    kind: str
    params: tuple = ()
    children: tuple = ()

    # -- scaled power sums -------------------------------------------------
    def a(self, n):
        """Scaled power sums a_n for an integer or integer array ``n >= 1``."""
        n_arr = np.asarray(n)
        if np.any(n_arr < 1):
            raise ValueError("power sums are indexed by n >= 1")
        nf = n_arr.astype(float)
        k = self.kind
        if k == "trivial":
            out = np.zeros(n_arr.shape, dtype=complex)
        elif k == "single":
            (x,) = self.params
            out = np.power(complex(x), nf) / nf
        elif k == "tp":
            alpha, beta, drift = self.params
            out = np.zeros(n_arr.shape, dtype=complex)
            for al in alpha:
                out = out + np.power(complex(al), nf)
            for be in beta:
                out = out - np.power(complex(-be), nf)
            out = out / nf + np.where(n_arr == 1, drift, 0.0)
        elif k == "rho":
            (mu,) = self.params
            out = complex(mu) / nf + 0j
        elif k == "scale":
            (q,) = self.params
            out = np.power(complex(q), nf) * self.children[0].a(n_arr)
        elif k == "union":
            out = sum((c.a(n_arr) for c in self.children), np.zeros(n_arr.shape, complex))
        elif k == "neg":
            out = -self.children[0].a(n_arr)
        else:  # pragma: no cover - constructors guard the kinds
            raise ValueError(self.kind)
        out = np.asarray(out, dtype=complex)
        return out[()] if out.ndim == 0 else out

    def power_sum(self, n):
        return np.asarray(n) * self.a(n)

    # -- generating function ------------------------------------------------
    def log_H(self, u):
        """log H(spec; u) in closed form, principal branch per factor."""
        u = np.asarray(u, dtype=complex)
        k = self.kind
        if k == "trivial":
            out = np.zeros_like(u)
        elif k == "single":
            (x,) = self.params
            out = -np.log(1 - x * u)
        elif k == "tp":
            alpha, beta, drift = self.params
            out = drift * u
            for be in beta:
                out = out + np.log(1 + be * u)
            for al in alpha:
                out = out - np.log(1 - al * u)
        elif k == "rho":
            (mu,) = self.params
            out = -mu * np.log(1 - u)
        elif k == "scale":
            (q,) = self.params
            out = self.children[0].log_H(q * u)
        elif k == "union":
            out = sum((c.log_H(u) for c in self.children), np.zeros_like(u))
        elif k == "neg":
            out = -self.children[0].log_H(u)
        else:  # pragma: no cover
            raise ValueError(self.kind)
        out = np.asarray(out, dtype=complex)
        return out[()] if out.ndim == 0 else out

    def H(self, u):
        return np.exp(self.log_H(u))

    # -- metadata -------------------------------------------------------------
    @property
    def growth_radius(self) -> float:
        k = self.kind
        if k == "trivial":
            return 0.0
        if k == "single":
            return abs(self.params[0])
        if k == "tp":
            alpha, beta, _ = self.params
            return max([abs(v) for v in (*alpha, *beta)], default=0.0)
        if k == "rho":
            return 1.0 if self.params[0] != 0 else 0.0
        if k == "scale":
            return abs(self.params[0]) * self.children[0].growth_radius
        if k == "union":
            return max((c.growth_radius for c in self.children), default=0.0)
        return self.children[0].growth_radius

    @property
    def is_trivial(self) -> bool:
        k = self.kind
        if k == "trivial":
            return True
        if k == "single":
            return self.params[0] == 0
        if k == "tp":
            alpha, beta, drift = self.params
            return not alpha and not beta and drift == 0
        if k == "rho":
            return self.params[0] == 0
        if k == "scale":
            return self.params[0] == 0 or self.children[0].is_trivial
        if k == "union":
            return all(c.is_trivial for c in self.children)
        return self.children[0].is_trivial

    @property
    def single_variable(self):
        """The variable x if this is single(x), else None."""
        if self.kind == "single":
            return complex(self.params[0])
        if self.kind == "scale" and self.children[0].single_variable is not None:
            return complex(self.params[0]) * self.children[0].single_variable
        return None

    def literal(self) -> str:
        k = self.kind
        if k == "trivial":
            return "trivial"
        if k == "single":
            return "single:" + _fmt_number(self.params[0])
        if k == "tp":
            alpha, beta, drift = self.params
            fields = []
            if alpha:
                fields.append("a=" + ",".join(_fmt_number(v) for v in alpha))
            if beta:
                fields.append("b=" + ",".join(_fmt_number(v) for v in beta))
            if drift:
                fields.append("g=" + _fmt_number(drift))
            return "tp:" + ";".join(fields)
        if k == "rho":
            return "rho:mu=" + _fmt_number(self.params[0])
        if k == "scale":
            return f"scale:{_fmt_number(self.params[0])}*{self.children[0].literal()}"
        if k == "union":
            return "+".join(c.literal() for c in self.children)
        return "neg:" + self.children[0].literal()

    def __str__(self) -> str:
        return self.literal()

    def __add__(self, other: "Specialization") -> "Specialization":
        return union(self, other)

    def __neg__(self) -> "Specialization":
        return negate(self)


def trivial() -> Specialization:
    return Specialization("trivial")


def single(x) -> Specialization:
    """The specialization at one variable: H(u) = 1/(1 - x u)."""
    return Specialization("single", (x,))


def tp(alpha: Sequence[float] = (), beta: Sequence[float] = (), drift: float = 0.0) -> Specialization:
    """H(u) = e^{drift u} prod(1 + beta_i u) / prod(1 - alpha_i u)."""
    return Specialization("tp", (tuple(alpha), tuple(beta), drift))


def rho(mu) -> Specialization:
    """H(u) = (1 - u)^{-mu}, so a_n = mu / n."""
    return Specialization("rho", (mu,))


def scale(q, spec: Specialization) -> Specialization:
    """p_n -> q^n p_n."""
    return Specialization("scale", (q,), (spec,))


def union(*specs: Specialization) -> Specialization:
    flat: list[Specialization] = []
    for s in specs:
        flat.extend(s.children if s.kind == "union" else (s,))
    if len(flat) == 1:
        return flat[0]
    return Specialization("union", (), tuple(flat))


def negate(spec: Specialization) -> Specialization:
    """p_n -> -p_n."""
    if spec.kind == "neg":
        return spec.children[0]
    return Specialization("neg", (), (spec,))


_UNION_SPLIT = re.compile(r"\+(?=\s*[a-z])")


def parse_specialization(text: str) -> Specialization:
    """Parse the literal syntax, e.g. ``tp:a=0.3,0.2;b=0.1;g=0.4+single:0.5``."""
    text = text.strip()
    if not text:
        raise ValueError("empty specialization literal")
    pieces = _UNION_SPLIT.split(text)
    if len(pieces) > 1:
        return union(*(parse_specialization(p) for p in pieces))
    head, _, body = text.partition(":")
    head = head.strip().lower()
    try:
        if head == "trivial" and not body:
            return trivial()
        if head == "single":
            return single(_maybe_real(_parse_complex(body)))
        if head == "rho":
            key, _, val = body.partition("=")
            if key.strip() != "mu":
                raise ValueError("rho literal needs mu=")
            return rho(_maybe_real(_parse_complex(val)))
        if head == "tp":
            alpha: list[float] = []
            beta: list[float] = []
            drift = 0.0
            for field_ in filter(None, (f.strip() for f in body.split(";"))):
                key, _, val = field_.partition("=")
                vals = [float(v) for v in val.split(",") if v.strip()]
                key = key.strip()
                if key == "a":
                    alpha = vals
                elif key == "b":
                    beta = vals
                elif key == "g" and len(vals) == 1:
                    drift = vals[0]
                else:
                    raise ValueError(f"bad tp field {field_!r}")
            return tp(alpha, beta, drift)
        if head == "scale":
            q, star, rest = body.partition("*")
            if not star:
                raise ValueError("scale literal needs q*spec")
            return scale(_maybe_real(_parse_complex(q)), parse_specialization(rest))
        if head == "neg":
            return negate(parse_specialization(body))
    except ValueError as exc:
        raise ValueError(f"bad specialization literal {text!r}: {exc}") from None
    raise ValueError(f"bad specialization literal {text!r}")


def _maybe_real(v: complex):
    return v.real if v.imag == 0 else v


def complete_homogeneous_list(spec: Specialization, nmax: int) -> np.ndarray:
    """h_0 .. h_nmax from the Newton recursion n h_n = sum_m p_m h_{n-m}."""
    h = np.zeros(nmax + 1, dtype=complex)
    h[0] = 1
    if nmax == 0:
        return h
    p = spec.power_sum(np.arange(1, nmax + 1))
    for n in range(1, nmax + 1):
        h[n] = np.dot(p[:n], h[n - 1 :: -1][:n]) / n
    return h


def complete_homogeneous(spec: Specialization, n: int) -> complex:
    if n < 0:
        return 0j
    return complex(complete_homogeneous_list(spec, n)[n])


def skew_schur(lam, mu, spec: Specialization, h: np.ndarray | None = None) -> complex:
    """s_{lam/mu}(spec) by the Jacobi-Trudi determinant det[h_{lam_i - i - mu_j + j}].

    ``h`` may carry precomputed complete homogeneous values (index = degree).
    """
    lam, mu = as_partition(lam), as_partition(mu)
    if not contains(lam, mu):
        return 0j
    if lam == mu:
        return 1 + 0j
    r = max(lam.length, mu.length)
    deg = lam.norm - mu.norm
    if h is None or len(h) <= deg:
        h = complete_homogeneous_list(spec, deg)
    idx = np.array([[lam[i] - i - mu[j] + j for j in range(r)] for i in range(r)])
    mat = np.where(idx >= 0, h[np.clip(idx, 0, len(h) - 1)], 0)
    mat = np.where(idx > deg, 0, mat)
    return complex(np.linalg.det(mat))


def skew_schur_single(lam, mu, x) -> complex:
    """Strip rule: s_{lam/mu}(x) = x^{|lam|-|mu|} if lam/mu is a horizontal strip."""
    lam, mu = as_partition(lam), as_partition(mu)
    if not is_horizontal_strip(lam, mu):
        return 0j
    return complex(x) ** (lam.norm - mu.norm)


def cauchy_H(a: Specialization, b: Specialization, tol: float = 1e-17) -> complex:
    """H(a; b) = exp(sum_n n a_n(a) a_n(b))."""
    if a.is_trivial or b.is_trivial:
        return 1 + 0j
    prod_r = a.growth_radius * b.growth_radius
    if prod_r >= 1:
        raise ValueError("Cauchy series diverges: product of growth radii >= 1")
    if prod_r == 0:
        nterms = 2
    else:
        nterms = max(2, int(math.ceil(math.log(tol) / math.log(prod_r))) + 2)
    n = np.arange(1, nterms + 1)
    return complex(cmath.exp(np.sum(n * a.a(n) * b.a(n))))


def tp_generating(alpha: Sequence[float], beta: Sequence[float], drift: float, u) -> complex:
    """e^{drift u} prod(1 + beta_i u) / prod(1 - alpha_i u)."""
    u = complex(u)
    den = 1 + 0j
    for al in alpha:
        den *= 1 - al * u
    if den == 0:
        raise ZeroDivisionError("pole of the TP generating function")
    num = cmath.exp(drift * u)
    for be in beta:
        num *= 1 + be * u
    return num / den
