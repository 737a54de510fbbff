import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from qtoda.bethe import (
    MorseProblem,
    bae_residual,
    check_bounds,
    gradient_flow,
    in_alcove,
    k_bounds,
    k_bounds_as_printed,
    morse_grad,
    morse_hess,
    morse_value,
    schur_point,
    solve_bethe,
    v_antiderivative,
    v_integral,
    v_prime,
)
from qtoda.lattice import LatticeConfig, Partition, enumerate_partitions
from qtoda.measures import ModelParams

P = ModelParams(0.3, 0.2, 0.2, 0.2, 0.2)


def _v_by_quadrature(a, z):
    # v_a(z) = int_0^z (1 - a^2) / (1 - 2 a cos t + a^2) dt
    return quad(lambda t: (1 - a * a) / (1 - 2 * a * math.cos(t) + a * a), 0, z, epsabs=1e-14)[0]


@given(st.floats(-0.95, 0.95), st.floats(-6.0, 6.0))
def test_v_matches_quadrature(a, z):
    assert float(v_integral(a, z)) == pytest.approx(_v_by_quadrature(a, z), abs=1e-10)


@given(st.floats(-0.9, 0.9), st.floats(-3.0, 3.0))
def test_v_antiderivative_matches_quadrature(a, z):
    ref = quad(lambda t: float(v_integral(a, t)), 0, z, epsabs=1e-13)[0]
    assert float(v_antiderivative(a, z)) == pytest.approx(ref, abs=1e-9)


def test_v_basic_values():
    assert float(v_integral(0.0, 1.3)) == pytest.approx(1.3, abs=1e-15)
    for a in (-0.7, 0.2, 0.9):
        assert float(v_integral(a, math.pi)) == pytest.approx(math.pi, abs=1e-14)
        assert float(v_integral(a, -0.4)) == pytest.approx(-float(v_integral(a, 0.4)), abs=1e-15)
        assert float(v_prime(a, 0.0)) == pytest.approx((1 + a) / (1 - a), rel=1e-14)


def _problem(n, m, params, kappa):
    return MorseProblem(LatticeConfig(n, m), params, Partition(kappa, n))


def test_kappa_box_validated():
    with pytest.raises(ValueError):
        MorseProblem(LatticeConfig(2, 3), P, Partition((1, 0), 2))


def test_schur_limit_closed_form():
    for n, m in [(1, 1), (2, 3), (3, 2), (4, 4)]:
        cfg = LatticeConfig(n, m)
        for kappa in enumerate_partitions(cfg.transpose()):
            prob = MorseProblem(cfg, ModelParams(), kappa)
            sol = solve_bethe(prob)
            j = np.arange(1, m + 1)
            np.testing.assert_allclose(
                sol.xi, np.pi * (m + 1 - j + np.array(kappa.parts)) / (m + n + 1), atol=1e-13
            )


def test_one_particle_one_site_schur():
    cfg = LatticeConfig(1, 1)
    xs = {k.parts: solve_bethe(MorseProblem(cfg, ModelParams(), k)).xi[0] for k in enumerate_partitions(cfg.transpose())}
    assert xs[(0,)] == pytest.approx(math.pi / 3, abs=1e-14)
    assert xs[(1,)] == pytest.approx(2 * math.pi / 3, abs=1e-14)


def _alcove_point(rng, m):
    return np.sort(rng.uniform(0.05, math.pi - 0.05, m))[::-1]


@pytest.mark.parametrize("n, m, kappa", [(2, 2, (1, 0)), (3, 3, (2, 2, 1)), (1, 4, (1, 1, 0, 0))])
def test_grad_and_hessian_by_differences(n, m, kappa, params, rng):
    prob = _problem(n, m, params, kappa)
    h = 1e-6
    for _ in range(5):
        x = _alcove_point(rng, m)
        e = np.eye(m)
        fd_grad = np.array([(morse_value(x + h * e[i], prob) - morse_value(x - h * e[i], prob)) / (2 * h) for i in range(m)])
        assert np.max(np.abs(fd_grad - morse_grad(x, prob))) <= 1e-6
        fd_hess = np.array([(morse_grad(x + h * e[i], prob) - morse_grad(x - h * e[i], prob)) / (2 * h) for i in range(m)])
        assert np.max(np.abs(fd_hess - morse_hess(x, prob))) <= 1e-5


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-3.0, 3.0), min_size=3, max_size=3))
def test_hessian_floor_everywhere(x):
    for params in (P, ModelParams(-0.5, 0.6, -0.5, 0.25, 0.6)):
        prob = _problem(2, 3, params, (2, 1, 0))
        k_minus, _ = k_bounds(params, prob.cfg)
        assert np.linalg.eigvalsh(morse_hess(np.array(x), prob))[0] >= 2 * (2 + k_minus) * (1 - 1e-12)


def test_k_bounds_reduce_at_zero():
    km, kp = k_bounds(ModelParams(), LatticeConfig(3, 4))
    assert km == kp == pytest.approx(3 + 2)
    pm, pp = k_bounds_as_printed(ModelParams(), LatticeConfig(3, 4))
    assert (pm, pp) == (km, kp)
    a, b = k_bounds(ModelParams(0.0, 0.0, 0.0, 0.0, 0.5), LatticeConfig(1, 1))
    c, d = k_bounds_as_printed(ModelParams(0.0, 0.0, 0.0, 0.0, 0.5), LatticeConfig(1, 1))
    assert a < c and b > d


@pytest.mark.parametrize("n, m", [(2, 2), (2, 3), (3, 2), (4, 3)])
def test_solutions_certified(n, m, params):
    cfg = LatticeConfig(n, m)
    k_minus, _ = k_bounds(params, cfg)
    for kappa in enumerate_partitions(cfg.transpose()):
        prob = MorseProblem(cfg, params, kappa)
        sol = solve_bethe(prob)
        assert sol.grad_norm <= 1e-12
        assert in_alcove(sol.xi)
        assert check_bounds(sol.xi, prob)
        assert sol.bae_residual <= 1e-12
        assert sol.hessian_min_eig >= 2 * (n + k_minus) * (1 - 1e-12)


def test_newton_from_far_start():
    prob = _problem(3, 3, ModelParams(0.6, 0.6, 0.6, -0.5, -0.5), (3, 1, 0))
    ref = solve_bethe(prob)
    far = solve_bethe(prob, x0=[-2.0, 5.0, 0.1])
    np.testing.assert_allclose(far.xi, ref.xi, atol=1e-12)


def test_bae_residual_detects_non_solutions():
    cfg = LatticeConfig(2, 2)
    assert bae_residual([2.0, 1.0], cfg, P) > 1e-3


def test_gradient_flow_converges(params):
    prob = _problem(2, 3, params, (2, 1, 0))
    sol = solve_bethe(prob)
    flow = gradient_flow(prob)
    assert np.max(np.abs(flow.final - sol.xi)) <= 1e-8
    assert flow.grad_norm[-1] < flow.grad_norm[0]
    assert flow.xi.shape == (201, 3)


def test_schur_point_start():
    prob = _problem(2, 2, P, (2, 0))
    np.testing.assert_allclose(schur_point(prob), [np.pi * 4 / 5, np.pi / 5])
