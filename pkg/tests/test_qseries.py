import cmath
import math

import numpy as np
import pytest

from cylschur.qseries import (
    Nome,
    dilog,
    frobenius_det_check,
    frobenius_theta_kernel,
    qpoch,
    qpoch_euler,
    ramanujan_rhs,
    ramanujan_sum_lhs,
    theta1,
    theta1_product,
    theta3,
    theta3_product,
)

rng = np.random.default_rng(2024)


def test_qpoch_examples():
    assert qpoch(0, 0.3) == pytest.approx(1)
    assert abs(qpoch(1, 0.3)) < 1e-15
    direct = math.prod(1 - 0.5 ** n for n in range(1, 80))
    assert qpoch(0.5, Nome(0.5)) == pytest.approx(direct, rel=1e-15)
    assert qpoch_euler(0.5) == pytest.approx(direct, rel=1e-15)


def test_theta3_symmetry_zero_and_paths():
    z, t = 0.7 + 0.2j, 0.4
    assert abs(theta3(z, t) - theta3(1 / z, t)) < 1e-13
    assert abs(theta3(-math.sqrt(t), t)) < 1e-13
    assert abs(theta3(z, t) - theta3_product(z, t)) < 1e-12


def test_theta1_zeros_and_paths():
    t = 0.3
    assert abs(theta1(1.0, t)) < 1e-14
    assert abs(theta1(t, t)) < 1e-14
    assert abs(theta1(0.6, t) - theta1_product(0.6, t)) < 1e-12


def test_theta_paths_random_grid():
    for _ in range(50):
        t = rng.uniform(0.05, 0.8)
        z = complex(np.exp(rng.uniform(-1, 1) + 1j * rng.uniform(-math.pi, math.pi)))
        assert abs(theta3(z, t) - theta3_product(z, t)) < 1e-11 * max(1, abs(theta3_product(z, t)))
        assert abs(theta1(z, t) - theta1_product(z, t)) < 1e-11 * max(1, abs(theta1_product(z, t)))


@pytest.mark.parametrize("y,side", [(1.1, "outer"), (0.9, "inner")])
def test_ramanujan_examples(y, side):
    lhs = ramanujan_sum_lhs(y, 1.3, 0.4, side)
    assert abs(lhs - ramanujan_rhs(y, 1.3, 0.4)) < 1e-10


def test_ramanujan_inversion_maps_sides():
    y, z, t = 1.1 + 0.2j, 1.3 - 0.1j, 0.4
    outer = ramanujan_sum_lhs(y, z, t, "outer")
    mirrored = ramanujan_sum_lhs(1 / y, 1 / z, t, "inner")
    assert abs(outer + mirrored) < 1e-12
    assert abs(ramanujan_rhs(y, z, t) + ramanujan_rhs(1 / y, 1 / z, t)) < 1e-12


def test_ramanujan_small_t_limit():
    # corrections enter at order t^(1/2)
    y = 1.7
    for t in (1e-6, 1e-9, 1e-12):
        assert abs(ramanujan_rhs(y, 1.3, t) - cmath.sqrt(y) / (y - 1)) < 5 * math.sqrt(t)


def test_frobenius_n1_is_kernel():
    zeta, eta, zhat, t = 1.05, 1 / 1.02, -1.3 * math.sqrt(0.4), 0.4
    lhs, rhs = frobenius_det_check([zeta], [eta], zhat, t)
    assert abs(lhs - rhs) < 1e-12
    assert abs(lhs - frobenius_theta_kernel(zeta * eta, zhat, t)) < 1e-12 * max(1, abs(lhs))


@pytest.mark.parametrize("n,tol", [(2, 1e-10), (3, 1e-9), (4, 1e-8)])
def test_frobenius_identity(n, tol):
    t, zhat = 0.4, -1.3 * math.sqrt(0.4)
    for _ in range(5):
        zs = 1.05 * np.exp(1j * rng.uniform(-math.pi, math.pi, n))
        es = 1.02 * np.exp(1j * rng.uniform(-math.pi, math.pi, n))
        lhs, rhs = frobenius_det_check(zs, es, zhat, t)
        assert abs(lhs - rhs) < tol * max(1, abs(rhs))


def test_dilog_values():
    assert dilog(0) == 0
    assert abs(dilog(1) - math.pi ** 2 / 6) < 1e-14
    assert abs(dilog(-1) + math.pi ** 2 / 12) < 1e-14
    assert abs(dilog(0.5) - (math.pi ** 2 / 12 - math.log(2) ** 2 / 2)) < 1e-14


def test_dilog_inversion():
    for x in -np.exp(rng.uniform(-3, 3, 20)):
        lhs = dilog(x) + dilog(1 / x)
        rhs = -math.pi ** 2 / 6 - math.log(-x) ** 2 / 2
        assert abs(lhs - rhs) < 1e-10


def test_dilog_reflection():
    for x in (0.2, 0.7, 0.3 + 0.4j):
        lhs = dilog(x) + dilog(1 - x)
        rhs = math.pi ** 2 / 6 - cmath.log(x) * cmath.log(1 - x)
        assert abs(lhs - rhs) < 1e-12
