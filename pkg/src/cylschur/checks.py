"""Quick verification suites behind ``cylschur check``.

Each check compares two independent evaluation paths and reports the
residual against a fixed threshold.  They are scaled-down versions of the
acceptance tests and finish in seconds.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

Check = Callable[[], tuple[float, float]]  # returns (residual, threshold)


def _qseries_checks() -> dict[str, Check]:
    from .qseries import (
        frobenius_det_check,
        ramanujan_rhs,
        ramanujan_sum_lhs,
        theta1,
        theta1_product,
        theta3,
        theta3_product,
    )

    rng = np.random.default_rng(7)
    t = 0.35

    def ramanujan():
        worst = 0.0
        for _ in range(10):
            z = complex(np.exp(rng.uniform(-0.5, 0.5) + 1j * rng.uniform(-2, 2)))
            y_out = complex(np.exp(rng.uniform(0.1, -math.log(t) - 0.1) + 1j * rng.uniform(-3, 3)))
            y_in = complex(np.exp(rng.uniform(math.log(t) + 0.1, -0.1) + 1j * rng.uniform(-3, 3)))
            for y, side in ((y_out, "outer"), (y_in, "inner")):
                lhs = ramanujan_sum_lhs(y, z, t, side)
                worst = max(worst, abs(lhs - complex(ramanujan_rhs(y, z, t))))
        return worst, 1e-9

    def frobenius():
        worst = 0.0
        for _ in range(5):
            zs = np.exp(rng.uniform(-0.2, 0.2, 2) + 1j * rng.uniform(-3, 3, 2))
            es = np.exp(rng.uniform(-0.2, 0.2, 2) + 1j * rng.uniform(-3, 3, 2))
            zhat = complex(np.exp(rng.uniform(-0.3, 0.3) + 1j * rng.uniform(-3, 3)))
            lhs, rhs = frobenius_det_check(zs, es, zhat, t)
            worst = max(worst, abs(lhs - rhs))
        return worst, 1e-9

    def theta_paths():
        x = np.exp(rng.uniform(-1, 1, 8) + 1j * rng.uniform(-3, 3, 8))
        r3 = np.max(np.abs(theta3(x, t) - theta3_product(x, t)))
        r1 = np.max(np.abs(theta1(x, t) - theta1_product(x, t)))
        return float(max(r3, r1)), 1e-12

    return {"ramanujan": ramanujan, "frobenius-det": frobenius, "theta-sum-vs-product": theta_paths}


def _process_checks() -> dict[str, Check]:
    from .process import ProcessSpec, correlation_oracle, partition_function_formula, partition_function_oracle
    from .symfunc import single

    def partition_function():
        spec = ProcessSpec(1, 0.3, [single(0.4)], [single(0.5)])
        return abs(partition_function_formula(spec) - partition_function_oracle(spec, 24)), 1e-8

    def uniform_factorization():
        t, z = 0.5, 1.3
        spec = ProcessSpec.uniform(t, z=z)
        pts = [(1, 0.5), (1, -1.5)]
        exact = np.prod([z * t ** x / (1 + z * t ** x) for _, x in pts])
        return abs(correlation_oracle(spec, pts, True, 40) - exact), 1e-8

    return {"partition-function": partition_function, "uniform-factorization": uniform_factorization}


def _kernel_checks() -> dict[str, Check]:
    from .kernels import correlation_det, correlation_unmixed, lk_residual
    from .process import ProcessSpec, correlation_oracle
    from .symfunc import single

    spec = ProcessSpec(1, 0.3, [single(0.4)], [single(0.5)])

    def det_vs_oracle():
        pts = [(1, 0.5), (1, -0.5)]
        return abs(correlation_det(spec, pts) - correlation_oracle(spec, pts, True, 18)), 1e-6

    def unmixed_vs_oracle():
        pts = [(1, 0.5)]
        return abs(correlation_unmixed(spec, pts) - correlation_oracle(spec, pts, False, 18)), 1e-6

    def lk():
        return lk_residual(ProcessSpec(1, 0.4, [single(0.5)], [single(0.5)]), 12), 1e-6

    return {"det-vs-oracle": det_vs_oracle, "unmixed-vs-oracle": unmixed_vs_oracle, "(1+L)K=L": lk}


def _cylindric_checks() -> dict[str, Check]:
    from .cylindric import count_cylindric, generating_function_formula, parse_profile, staircase_profile

    def identity(profile):
        def run():
            brute = count_cylindric(profile, 10)
            formula = generating_function_formula(profile, 10)
            return float(sum(abs(a - b) for a, b in zip(brute, formula))), 0.5

        return run

    return {
        "staircase-counts": identity(staircase_profile(1)),
        "N7-profile-counts": identity(parse_profile("A=1011010;mark=7")),
    }


def _bulk_checks() -> dict[str, Check]:
    from . import bulk
    from .cylindric import staircase_profile

    def staircase_density():
        prof = staircase_profile(1)
        worst = max(
            abs(bulk.cylindric_bulk_density(prof, g) - 1 / math.sqrt(1 + 4 * math.exp(g))) for g in (-1, 0, 1)
        )
        return worst, 1e-8

    def slow():
        return abs(bulk.slow_density(1.0, 0.0) - 1 / 3), 1e-10

    def corner():
        worst = 0.0
        for corner in ("outer", "inner"):
            g = bulk.corner_gammas(0.4, 1.0, corner)
            worst = max(worst, abs(bulk.corner_solve_c(0.4, g, corner) - 1.0))
        return worst, 1e-10

    def no_density():
        worst = max(
            abs(bulk.no_bulk_density(0.8, 1.0, g) - bulk.no_bulk_kernel(0.8, 1.0, g, 0).real) for g in (-1, 0, 1)
        )
        return worst, 1e-8

    def sine():
        from .symfunc import tp

        a = [tp(alpha=[0.3], drift=0.2)]
        b = [tp(beta=[0.4])]
        worst = max(
            abs(bulk.sine_extension_kernel(a, b, 1.2, 1, 1, d) - math.sin(1.2 * d) / (math.pi * d)) for d in range(1, 6)
        )
        return worst, 1e-10

    return {
        "staircase-density": staircase_density,
        "slow-density": slow,
        "corner-round-trip": corner,
        "no-density": no_density,
        "sine-equal-time": sine,
    }


def _no_checks() -> dict[str, Check]:
    from .nekrasov_okounkov import NOSpec, hook_identity_sides, no_normalization, plancherel_limit_check
    from .partitions import enumerate_partitions

    def lemma():
        parts = enumerate_partitions(3)
        worst = 0.0
        for mu in (0.7j, 0.3 + 0.2j):
            for k in parts:
                for lam in parts:
                    lhs, rhs = hook_identity_sides(k, lam, mu)
                    worst = max(worst, abs(lhs - rhs))
        return worst, 1e-10

    def normalization():
        return abs(no_normalization(NOSpec.imaginary(0.6, 0.35), 20) - 1), 1e-6

    def plancherel():
        worst = 0.0
        for lam in ((), (1,), (2, 1), (2, 2)):
            a, b = plancherel_limit_check(1.0, 1000.0, lam)
            worst = max(worst, abs(a - b) / b)
        return worst, 1e-2

    return {"hook-identity": lemma, "normalization": normalization, "plancherel": plancherel}


_SUITES = {
    "qseries": _qseries_checks,
    "process": _process_checks,
    "kernel": _kernel_checks,
    "cylindric": _cylindric_checks,
    "bulk": _bulk_checks,
    "no": _no_checks,
}


def run_suites(name: str) -> list[tuple[str, str, bool, str]]:
    names = list(_SUITES) if name == "all" else [name]
    report = []
    for suite in names:
        for check, func in _SUITES[suite]().items():
            try:
                residual, threshold = func()
                ok = bool(residual < threshold)
                detail = f"residual={residual:.3g} threshold={threshold:g}"
            except Exception as exc:  # a crash is a failed check, reported with its cause
                ok, detail = False, f"error: {type(exc).__name__}: {exc}"
            report.append((suite, check, ok, detail))
    return report
