"""Acceptance criteria, one test and one printed PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` (the summary lines appear at the
end of the session) or ``python3 tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from cylschur import bulk
from cylschur.cylindric import (
    corner_profile,
    count_cylindric,
    generating_function_formula,
    parse_profile,
    staircase_profile,
)
from cylschur.kernels import (
    correlation_det,
    correlation_frobenius,
    correlation_unmixed,
    cylindric_kernel,
    kernel,
    lk_residual,
)
from cylschur.nekrasov_okounkov import NOSpec, hook_identity_sides, no_normalization, plancherel_limit_check
from cylschur.partitions import enumerate_partitions
from cylschur.process import ProcessOracle, ProcessSpec, partition_function_formula
from cylschur.qseries import frobenius_det_check, ramanujan_rhs, ramanujan_sum_lhs
from cylschur.symfunc import single, tp, trivial

SINGLE = ProcessSpec(1, 0.3, [single(0.5)], [single(0.5)])
MIXED = ProcessSpec(2, 0.3, [single(0.4), trivial()], [trivial(), single(0.3)])
EXAMPLE = [tp(drift=1.0)]
RS = (0.2, 0.1, 0.05)

RESULTS: dict[str, tuple[bool, str]] = {}


def record(key: str, ok: bool, detail: str) -> bool:
    RESULTS[key] = (bool(ok), detail)
    return bool(ok)


def summary_lines() -> list[str]:
    lines = []
    for key in sorted(RESULTS, key=lambda k: (int(k.split("-")[0]), k)):
        ok, detail = RESULTS[key]
        lines.append(f"criterion {key:>6}: {'PASS' if ok else 'FAIL'}  {detail}")
    return lines


@pytest.fixture(scope="module", autouse=True)
def _print_summary(request):
    yield
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    if reporter is None:
        return
    reporter.ensure_newline()
    reporter.write_sep("=", "acceptance criteria")
    for line in summary_lines():
        reporter.write_line(line)


# -- 1 ---------------------------------------------------------------------------


def criterion_1() -> bool:
    start = time.perf_counter()
    profiles = [staircase_profile(1), parse_profile("A=1011010;mark=7"), corner_profile(3, 3)]
    ok = all(count_cylindric(p, 14) == generating_function_formula(p, 14) for p in profiles)
    elapsed = time.perf_counter() - start
    return record("1", ok and elapsed < 60, f"exact counts equal formula to norm 14 on 3 profiles ({elapsed:.2f} s)")


def test_criterion_1():
    assert criterion_1()


# -- 2 ---------------------------------------------------------------------------


def _partition_function_residuals(max_norm: int) -> list[float]:
    return [abs(partition_function_formula(s) - ProcessOracle(s, max_norm).partition_function) for s in (SINGLE, MIXED)]


def criterion_2(max_norm: int = 18) -> bool:
    start = time.perf_counter()
    res = _partition_function_residuals(max_norm)
    elapsed = time.perf_counter() - start
    ok = max(res) < 1e-8 and elapsed < 30
    detail = f"truncation {max_norm}: residuals N=1 {res[0]:.2g}, N=2 {res[1]:.2g} ({elapsed:.2f} s)"
    if not ok:
        detail += "; the truncation tail alone exceeds 1e-8 at t=0.3 (see ledger)"
    return record("2" if max_norm == 18 else f"2-M{max_norm}", ok, detail)


@pytest.mark.xfail(strict=True, reason="truncation 18 leaves a tail above 1e-8 at t=0.3; see ledger")
def test_criterion_2():
    assert criterion_2(18)


def test_criterion_2_companion_truncation_24():
    assert criterion_2(24)


# -- 3 ---------------------------------------------------------------------------


def criterion_3() -> bool:
    t, z = 0.5, 1.3
    spec = ProcessSpec.uniform(t, z=z)
    oracle = ProcessOracle(spec, 40)
    bern = lambda x: z * t ** x / (1 + z * t ** x)  # noqa: E731
    sets = [[0.5], [-1.5], [2.5], [0.5, -0.5], [1.5, -2.5], [-0.5, 0.5, 1.5], [-1.5, 0.5, 2.5]]
    worst_oracle = max(abs(oracle.rho_shift_mixed([(1, x) for x in xs]) - np.prod([bern(x) for x in xs])) for xs in sets)
    worst_kernel = max(abs(kernel(spec, (1, x), (1, x)) - bern(x)) for x in np.arange(-4.5, 5.0, 1.0))
    ok = worst_oracle < 1e-8 and worst_kernel < 1e-9
    return record("3", ok, f"Bernoulli factorization k<=3 {worst_oracle:.2g}, kernel diagonal {worst_kernel:.2g}")


def test_criterion_3():
    assert criterion_3()


# -- 4 ---------------------------------------------------------------------------


def criterion_4() -> bool:
    worst = 0.0
    for spec, pts1, pts2 in (
        (SINGLE, [(1, 0.5)], [(1, 0.5), (1, -1.5)]),
        (MIXED, [(2, -0.5)], [(1, 0.5), (2, -0.5)]),
    ):
        oracle = ProcessOracle(spec, 20)
        for pts in (pts1, pts2):
            worst = max(worst, abs(correlation_det(spec, pts) - oracle.rho_shift_mixed(pts)))
            worst = max(worst, abs(correlation_unmixed(spec, pts) - oracle.rho(pts)))
    return record("4", worst < 1e-6, f"rho1, rho2 (mixed and unmixed) vs oracle, max {worst:.2g}")


def test_criterion_4():
    assert criterion_4()


# -- 5 ---------------------------------------------------------------------------


def criterion_5() -> bool:
    worst = 0.0
    for spec, cases in (
        (ProcessSpec.uniform(0.4), ([(1, 0.5)], [(1, 0.5), (1, -1.5)])),
        (SINGLE, ([(1, 0.5)], [(1, 0.5), (1, -0.5)])),
        (MIXED, ([(2, -0.5)], [(1, 0.5), (2, -0.5)])),
    ):
        for pts in cases:
            worst = max(worst, abs(correlation_frobenius(spec, pts) - correlation_unmixed(spec, pts)))
    return record("5", worst < 1e-6, f"Frobenius n=1,2 vs unmixed determinant, max {worst:.2g}")


def test_criterion_5():
    assert criterion_5()


# -- 6 ---------------------------------------------------------------------------


def criterion_6() -> bool:
    rng = np.random.default_rng(20261014)
    worst_r = 0.0
    for _ in range(100):
        t = rng.uniform(0.1, 0.7)
        z = complex(np.exp(rng.uniform(-0.7, 0.7) + 1j * rng.uniform(-math.pi, math.pi)))
        side = "outer" if rng.random() < 0.5 else "inner"
        span = -math.log(t)
        radius = rng.uniform(0.05, span - 0.05) * (1 if side == "outer" else -1)
        y = complex(np.exp(radius + 1j * rng.uniform(-math.pi, math.pi)))
        lhs = ramanujan_sum_lhs(y, z, t, side)
        worst_r = max(worst_r, abs(lhs - complex(ramanujan_rhs(y, z, t))) / max(1.0, abs(lhs)))
    worst_f = 0.0
    for i in range(20):
        n = 2 + i % 2
        t = 0.4
        zs = np.exp(rng.uniform(-0.1, 0.1, n) + 1j * rng.uniform(-math.pi, math.pi, n))
        es = np.exp(rng.uniform(-0.1, 0.1, n) + 1j * rng.uniform(-math.pi, math.pi, n))
        zhat = complex(np.exp(rng.uniform(-0.3, 0.3) + 1j * rng.uniform(-math.pi, math.pi)))
        lhs, rhs = frobenius_det_check(zs, es, zhat, t)
        worst_f = max(worst_f, abs(lhs - rhs) / max(1.0, abs(rhs)))
    ok = worst_r < 1e-9 and worst_f < 1e-9
    return record("6", ok, f"Ramanujan 100 points {worst_r:.2g}, Frobenius 20 points {worst_f:.2g}")


def test_criterion_6():
    assert criterion_6()


# -- 7 ---------------------------------------------------------------------------

FLOOR = 1e-10  # residuals below this are rounding level and no longer order


def criterion_7() -> bool:
    specs = {
        "uniform": ProcessSpec.uniform(0.4),
        "single": ProcessSpec(1, 0.4, [single(0.5)], [single(0.5)]),
        "mixed": MIXED,
    }
    ok, parts = True, []
    for name, spec in specs.items():
        res = [lk_residual(spec, m) for m in (8, 12, 16)]
        decreasing = all(b < a or max(a, b) < FLOOR for a, b in zip(res, res[1:]))
        ok &= res[1] < 1e-6 and decreasing
        parts.append(f"{name} " + "/".join(f"{r:.1g}" for r in res))
    return record("7", ok, "m=8/12/16: " + ", ".join(parts))


def test_criterion_7():
    assert criterion_7()


# -- 8 ---------------------------------------------------------------------------


def criterion_8() -> bool:
    parts = enumerate_partitions(5)
    worst = 0.0
    for mu in (0.7j, 0.3 + 0.2j, 1.4j):
        for kappa in parts:
            for lam in parts:
                lhs, rhs = hook_identity_sides(kappa, lam, mu)
                worst = max(worst, abs(lhs - rhs))
    norm_err = abs(no_normalization(NOSpec.imaginary(0.6, 0.35), 20) - 1)
    ok = worst < 1e-10 and norm_err < 1e-6
    return record("8", ok, f"hook identity {len(parts) ** 2 * 3} cases max {worst:.2g}, normalization {norm_err:.2g}")


def test_criterion_8():
    assert criterion_8()


# -- 9 ---------------------------------------------------------------------------


def _convergence(finite, limit, strict_ds):
    gaps = [[abs(finite(r, d) - limit[d]) for d in range(3)] for r in RS]
    monotone = all(
        (g0[d] > g1[d]) if d in strict_ds else (g0[d] >= g1[d]) for g0, g1 in zip(gaps, gaps[1:]) for d in range(3)
    )
    return monotone, max(gaps[-1])


def criterion_9() -> bool:
    ex_limit = [bulk.bulk_kernel_t31(EXAMPLE, EXAMPLE, bulk.BulkPoint(1, 1, d)) for d in range(3)]
    ex_ok, ex_gap = _convergence(
        lambda r, d: kernel(ProcessSpec(1, math.exp(-r), EXAMPLE, EXAMPLE), (1, 0.5 + d), (1, 0.5)), ex_limit, {0, 1, 2}
    )
    # off-diagonal uniform values vanish at every t, so only d = 0 can decrease strictly
    un_ok, un_gap = _convergence(
        lambda r, d: kernel(ProcessSpec.uniform(math.exp(-r)), (1, 0.5 + d), (1, 0.5)), [0.5, 0.0, 0.0], {0}
    )
    prof = staircase_profile(1)
    cy_limit = [bulk.cylindric_bulk_kernel(prof, 0.0, 1, 1, d) for d in range(3)]
    cy_ok, cy_gap = _convergence(
        lambda r, d: cylindric_kernel(prof, math.exp(-r), (1, 0.5 + d), (1, 0.5)), cy_limit, {0, 1, 2}
    )
    ok = ex_ok and un_ok and cy_ok and max(ex_gap, un_gap, cy_gap) < 2e-2
    detail = f"final gaps: example {ex_gap:.2g}, uniform {un_gap:.2g}, staircase {cy_gap:.2g}; monotone over r=0.2/0.1/0.05"
    return record("9", ok, detail)


def test_criterion_9():
    assert criterion_9()


# -- 10 ---------------------------------------------------------------------------


def criterion_10() -> bool:
    prof = staircase_profile(1)
    stair = max(abs(bulk.cylindric_bulk_density(prof, g) - 1 / math.sqrt(1 + 4 * math.exp(g))) for g in (-1, 0, 1))
    slow = max(abs(bulk.solve_phi(1.0, 0.0) - math.pi / 3), abs(bulk.slow_density(1.0, 0.0) - 1 / 3))
    no = max(abs(bulk.no_bulk_density(0.8, 1.0, g) - bulk.no_bulk_kernel(0.8, 1.0, g, 0).real) for g in (-1, 0, 1))
    corner = max(
        abs(bulk.corner_solve_c(0.4, bulk.corner_gammas(0.4, 1.0, side), side) - 1.0) for side in ("outer", "inner")
    )
    ok = stair < 1e-8 and slow < 1e-10 and no < 1e-8 and corner < 1e-10
    return record("10", ok, f"staircase {stair:.2g}, slope one {slow:.2g}, N-O {no:.2g}, corner round trip {corner:.2g}")


def test_criterion_10():
    assert criterion_10()


# -- 11 ---------------------------------------------------------------------------


def criterion_11() -> bool:
    c = 1.2
    a = [tp(alpha=[0.3], drift=0.2), tp(beta=[0.5])]
    b = [tp(beta=[0.4]), tp(alpha=[0.2], drift=0.6)]
    sine = max(abs(bulk.sine_extension_kernel(a, b, c, 1, 1, d) - math.sin(c * d) / (math.pi * d)) for d in range(1, 6))
    sine = max(sine, abs(bulk.sine_extension_kernel(a, b, c, 1, 1, 0) - c / math.pi))
    no = max(
        abs(abs(bulk.no_bulk_kernel(200.0, 1.0, 100.0 * math.pi, d)) - abs(math.sin(math.pi / 4 * d)) / (math.pi * d))
        for d in (1, 2)
    )
    big = [tp(drift=400.0)]
    ex = max(
        abs(bulk.bulk_kernel_t31(big, big, bulk.BulkPoint(1, 1, d, 400.0)) - math.sin(math.acos(0.5) * d) / (math.pi * d))
        for d in (1, 2, 3)
    )
    ok = sine < 1e-10 and no < 1e-2 and ex < 1e-2
    return record("11", ok, f"equal-time sine {sine:.2g}, N-O large mu0 {no:.2g}, example large drift {ex:.2g}")


def test_criterion_11():
    assert criterion_11()


# -- 12 ---------------------------------------------------------------------------


def criterion_12() -> bool:
    worst = 0.0
    for lam in enumerate_partitions(4):
        no_value, planch = plancherel_limit_check(1.0, 1000.0, lam)
        worst = max(worst, abs(no_value - planch) / planch)
    return record("12", worst < 1e-2, f"relative weight error over |lam| <= 4: {worst:.2g}")


def test_criterion_12():
    assert criterion_12()


if __name__ == "__main__":
    for number in range(1, 13):
        globals()[f"criterion_{number}"]()
    criterion_2(24)
    print("\n".join(summary_lines()))
