import math

import numpy as np
import pytest

from cylschur import bulk
from cylschur.bulk import (
    BranchError,
    BulkPoint,
    DomainError,
    GammaCurve,
    bulk_kernel_t31,
    corner_gamma_range,
    corner_gammas,
    corner_solve_c,
    cylindric_bulk_density,
    cylindric_bulk_kernel,
    cylindric_slow_kernel,
    f_kappa,
    gamma_curve_point,
    gamma0,
    no_bulk_density,
    no_bulk_kernel,
    sine_extension_kernel,
    sine_extension_via_t31,
    slow_density,
    solve_phi,
)
from cylschur.cylindric import parse_profile, staircase_profile
from cylschur.kernels import cylindric_kernel, kernel
from cylschur.process import ProcessSpec
from cylschur.qseries import qpoch
from cylschur.symfunc import tp, trivial

EXAMPLE = [tp(drift=1.0)]
RS = (0.2, 0.1, 0.05)


def _sinc(c, d):
    return c / math.pi if d == 0 else math.sin(c * d) / (math.pi * d)


# -- general bulk kernel --------------------------------------------------------------


def test_trivial_specs_degenerate():
    for gamma, z in ((0.0, 1.0), (0.7, 1.4), (-1.2, 0.8)):
        for d in range(-2, 3):
            value = bulk_kernel_t31([trivial()], [trivial()], BulkPoint(1, 1, d, gamma, z))
            expected = 1 / (1 + math.exp(gamma) / z) if d == 0 else 0.0
            assert abs(value - expected) < 1e-12


def test_example_bulk_values():
    values = [bulk_kernel_t31(EXAMPLE, EXAMPLE, BulkPoint(1, 1, d)) for d in range(3)]
    assert values[0] == pytest.approx(0.5, abs=1e-12)
    assert values[1].real == pytest.approx(0.202919, abs=1e-6)
    assert abs(values[2]) < 1e-3


def test_example_finite_t_close_at_small_r():
    r = 0.025
    spec = ProcessSpec(1, math.exp(-r), EXAMPLE, EXAMPLE)
    limit = bulk_kernel_t31(EXAMPLE, EXAMPLE, BulkPoint(1, 1, 0))
    assert abs(kernel(spec, (1, 0.5), (1, 0.5)) - limit) < 2e-2


def test_example_sine_degeneration():
    big = [tp(drift=400.0)]
    for d in (1, 2, 3):
        value = bulk_kernel_t31(big, big, BulkPoint(1, 1, d, gamma=400.0))
        assert abs(value - math.sin(math.acos(0.5) * d) / (math.pi * d)) < 1e-2


def test_t31_rejects_bad_parameters():
    with pytest.raises(DomainError):
        bulk_kernel_t31(EXAMPLE, EXAMPLE, BulkPoint(1, 1, 0, z=-1.0))


def test_uniform_limit_shape():
    for u in np.linspace(-3, 3, 10):
        assert abs(bulk.limit_shape_v([trivial()], [trivial()], u) - (u + 2 * math.log1p(math.exp(-u)))) < 1e-8


def test_limit_shape_matches_density():
    # rho = (1 - v') / 2
    h = 1e-5
    for u in (-1.0, 0.0, 1.5):
        slope = (bulk.limit_shape_v(EXAMPLE, EXAMPLE, u + h) - bulk.limit_shape_v(EXAMPLE, EXAMPLE, u - h)) / (2 * h)
        assert abs((1 - slope) / 2 - bulk.bulk_density(EXAMPLE, EXAMPLE, u)) < 1e-6


# -- finite t towards the bulk -------------------------------------------------------------


def _gaps(finite, limit):
    return [[abs(finite(r, d) - limit[d]) for d in range(3)] for r in RS]


def test_example_convergence_monotone():
    limit = [bulk_kernel_t31(EXAMPLE, EXAMPLE, BulkPoint(1, 1, d)) for d in range(3)]
    gaps = _gaps(lambda r, d: kernel(ProcessSpec(1, math.exp(-r), EXAMPLE, EXAMPLE), (1, 0.5 + d), (1, 0.5)), limit)
    for d in range(3):
        assert gaps[0][d] > gaps[1][d] > gaps[2][d]
    assert max(gaps[-1]) < 2e-2


def test_uniform_convergence_monotone():
    limit = [0.5, 0.0, 0.0]
    gaps = _gaps(lambda r, d: kernel(ProcessSpec.uniform(math.exp(-r)), (1, 0.5 + d), (1, 0.5)), limit)
    assert gaps[0][0] > gaps[1][0] > gaps[2][0]
    for d in (1, 2):
        assert gaps[0][d] >= gaps[1][d] >= gaps[2][d]
    assert max(gaps[-1]) < 2e-2


# -- sine-kernel extensions -------------------------------------------------------------


def test_sine_equal_time():
    c = 1.1
    a = [tp(alpha=[0.3], beta=[0.2], drift=0.5), tp(drift=0.7)]
    b = [tp(alpha=[0.4]), tp(beta=[0.6], drift=0.1)]
    for d in range(0, 6):
        assert abs(sine_extension_kernel(a, b, c, 1, 1, d) - _sinc(c, d)) < 1e-10


def test_incomplete_beta_kernel():
    c = 1.1
    a, b = [trivial()] * 3, [tp(alpha=[1.0])] * 3
    for sigma, tau, d in ((0, 2, 1), (0, 3, -1), (1, 2, 3)):
        n = tau - sigma
        expected = sum(math.comb(n, j) * (-1) ** j * _sinc(c, d - j) for j in range(n + 1))
        assert abs(sine_extension_kernel(a, b, c, sigma, tau, d) - expected) < 1e-12


def test_sine_extension_via_general_kernel():
    c = 1.1
    a, b = [tp(drift=0.3), tp(drift=0.5)], [tp(drift=0.2), tp(drift=0.4)]
    for sigma, tau, d in ((1, 2, 0), (1, 2, 1), (2, 1, 1), (1, 1, 2)):
        direct = sine_extension_kernel(a, b, c, sigma, tau, d)
        assert abs(direct - sine_extension_via_t31(a, b, c, sigma, tau, d)) < 1e-6


def test_sine_rejects_inadmissible():
    with pytest.raises(DomainError):
        sine_extension_kernel([tp(alpha=[1.5])], [trivial()], 1.0, 0, 1, 0)


# -- curve and fixed-period cylindric limit ------------------------------------------------


def test_gamma_curve_unit_circle_and_maximum():
    for phi in np.linspace(-1.5, 1.5, 9):  # |phi| < pi/2 for kappa = 1
        assert abs(abs(gamma_curve_point(1.0, phi)) - 1) < 1e-14
    for kappa in (0.5, 1.0, 2.5):
        expected = math.log(1 + kappa) + kappa * math.log(1 + 1 / kappa)
        assert abs(f_kappa(kappa, -1 / kappa) - expected) < 1e-13
        curve = GammaCurve(kappa)
        assert abs(curve.f_max - expected) < 1e-13
        values = [f_kappa(curve, gamma_curve_point(curve, phi)) for phi in np.linspace(-0.9, 0.9, 7) * curve.phi_max]
        assert max(abs(v.imag) for v in values) < 1e-12
    assert abs(f_kappa(1.0, -1.0) - 2 * math.log(2)) < 1e-14
    with pytest.raises(BranchError):
        f_kappa(1.0, 2.0)


@pytest.mark.parametrize("gamma", [-1.0, 0.0, 1.0])
def test_staircase_density(gamma):
    assert abs(cylindric_bulk_density(staircase_profile(1), gamma) - 1 / math.sqrt(1 + 4 * math.exp(gamma))) < 1e-8


def test_density_rotation_invariant():
    prof = parse_profile("A=1011010;mark=7")
    values = [cylindric_bulk_kernel(prof, 0.3, tau, tau, 0).real for tau in range(1, 8)]
    assert max(values) - min(values) < 1e-9


def test_density_depends_on_d_l_only():
    first = cylindric_bulk_density(parse_profile("A=1100;mark=4"), 0.4)
    second = cylindric_bulk_density(parse_profile("A=1010;mark=4"), 0.4)
    assert abs(first - second) < 1e-10


def test_staircase_limit_shape_derivative():
    h = 1e-5
    for u in (-1.0, 0.0, 2.0):
        slope = (bulk.staircase_limit_shape(u + h) - bulk.staircase_limit_shape(u - h)) / (2 * h)
        assert abs(slope - (1 - 2 / math.sqrt(1 + 4 * math.exp(u)))) < 1e-7


def test_cylindric_finite_s_convergence():
    prof = staircase_profile(1)
    limit = [cylindric_bulk_kernel(prof, 0.0, 1, 1, d) for d in range(3)]
    gaps = _gaps(lambda r, d: cylindric_kernel(prof, math.exp(-r), (1, 0.5 + d), (1, 0.5)), limit)
    for d in range(3):
        assert gaps[0][d] > gaps[1][d] > gaps[2][d]
    assert max(gaps[-1]) < 2e-2


# -- slowly growing period ----------------------------------------------------------------------


def test_slope_one_values():
    assert abs(solve_phi(1.0, 0.0) - math.pi / 3) < 1e-12
    assert abs(slow_density(1.0, 0.0) - 1 / 3) < 1e-10
    assert abs(gamma0(1.0) + math.log(2)) < 1e-14


def test_slow_density_matches_kernel():
    for kappa, gamma in ((1.0, 0.0), (0.7, 0.2), (2.0, -0.1)):
        phi = solve_phi(kappa, gamma)
        assert abs(slow_density(kappa, gamma) - (1 - (1 + kappa) * phi / math.pi)) < 1e-12
        assert abs(cylindric_slow_kernel(0, 0, kappa, gamma, 0) - slow_density(kappa, gamma)) < 1e-10


def test_slow_equal_time_closed_form():
    kappa, gamma = 0.7, 0.2
    phi = solve_phi(kappa, gamma)
    for d in range(1, 4):
        cf = (math.sin(kappa * phi) / math.sin(phi)) ** d * math.sin((math.pi - (1 + kappa) * phi) * d) / (math.pi * d)
        assert abs(cylindric_slow_kernel(0, 0, kappa, gamma, d) - cf) < 1e-12


def test_slow_degenerate_regimes():
    below = gamma0(1.0) - 0.5
    assert cylindric_slow_kernel(0, 0, 1.0, below, 0) == pytest.approx(1.0)
    assert cylindric_slow_kernel(0, 0, 1.0, below, 2) == pytest.approx(0.0)


def test_fixed_period_approaches_slow_growth():
    gamma_hat, worst = 0.1, []
    for N in (4, 8, 16):
        prof = staircase_profile(N // 2)
        A, B = prof.count_A(1, 3), prof.count_B(1, 3)
        worst.append(
            max(
                max(
                    abs(cylindric_bulk_kernel(prof, gamma_hat * N, 1, 3, d) - cylindric_slow_kernel(A, B, 1.0, gamma_hat, d)),
                    abs(cylindric_bulk_kernel(prof, gamma_hat * N, 3, 1, d) - cylindric_slow_kernel(A, B, 1.0, gamma_hat, d, False)),
                )
                for d in range(4)
            )
        )
    assert worst[0] > worst[1] > worst[2]


def test_periodic_profile_reduction():
    for gamma in (-0.3, 0.0, 0.6):
        for A, B, le in ((0, 0, True), (1, 1, True), (1, 0, False)):
            for d in range(3):
                arc = bulk.periodic_profile_kernel(gamma, A, B, d, le)
                slow = cylindric_slow_kernel(A, B, 1.0, gamma, d, le)
                assert abs(arc - slow) < 1e-6


# -- corners -----------------------------------------------------------------------------------


@pytest.mark.parametrize("corner", ["outer", "inner"])
def test_corner_round_trip(corner):
    assert abs(corner_solve_c(0.4, corner_gammas(0.4, 1.0, corner), corner) - 1.0) < 1e-10


def test_corner_minimum_gamma():
    t = 0.4
    expected = 2 * math.log(abs(qpoch(-math.sqrt(t), t)) / abs(qpoch(-1.0, t)))
    assert abs(corner_gamma_range(t, "outer")[0] - expected) < 1e-12
    assert abs(corner_gammas(t, math.pi - 1e-9, "outer") - expected) < 1e-8


def test_corner_small_t():
    assert abs(corner_solve_c(1e-4, 0.0, "outer") - math.acos(0.5)) < 1e-2


def test_corner_kernel_and_degenerate_arc():
    t, gamma = 0.4, corner_gammas(0.4, 1.0, "outer")
    assert abs(bulk.corner_density(t, gamma, "outer") - 1 / math.pi) < 1e-10
    assert abs(bulk.corner_kernel(t, gamma, "outer", 0, 0, 2) - _sinc(1.0, 2)) < 1e-10
    with pytest.raises(DomainError):
        bulk.arc_kernel(0.0, 1, 0, 1, sigma_le_tau=False)


# -- Nekrasov-Okounkov bulk -------------------------------------------------------------------


@pytest.mark.parametrize("gamma", [-1.0, 0.0, 1.0])
def test_no_density_closed_form(gamma):
    assert abs(no_bulk_density(0.8, 1.0, gamma) - no_bulk_kernel(0.8, 1.0, gamma, 0).real) < 1e-8


def test_no_transpose_symmetry():
    for d in (-2, 1, 3):
        assert abs(no_bulk_kernel(0.8, 1.0, 0.3, d) - no_bulk_kernel(-0.8, 1.0, 0.3, -d)) < 1e-10


def test_no_sine_degeneration():
    mu0 = 200.0
    for d in (1, 2):
        value = abs(no_bulk_kernel(mu0, 1.0, mu0 * math.pi / 2, d))
        assert abs(value - abs(math.sin(math.pi / 4 * d)) / (math.pi * d)) < 1e-2


def test_no_rejects_nonpositive_z():
    with pytest.raises(DomainError):
        no_bulk_kernel(0.8, -1.0, 0.0, 0)


def test_densities_in_unit_interval():
    grid = np.linspace(-3, 3, 50)
    prof = staircase_profile(1)
    families = [
        lambda g: cylindric_bulk_density(prof, g),
        lambda g: slow_density(0.8, g),
        lambda g: bulk.corner_density(0.4, g, "outer"),
        lambda g: no_bulk_density(0.8, 1.0, g),
        lambda g: bulk.bulk_density(EXAMPLE, EXAMPLE, g),
    ]
    for family in families:
        values = [family(g) for g in grid]
        assert min(values) >= -1e-12 and max(values) <= 1 + 1e-12
