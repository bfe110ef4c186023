"""
Tests for the rank condition, the paths, the spiral and the local steering
"""
import numpy as np
import pytest

from ckm.core import (
    EngineParameters,
    RegionClass,
    SatelliteState,
    StateVector,
    admissible,
    angular_momentum,
    classify,
    laplace_vector,
    perigee_apogee,
    state_from_scalars,
)
from ckm.errors import EndpointOutsideRegion, NotInPMinus, ZeroVelocity
from ckm.solvers.controllability import (
    PathMode,
    get_gramian,
    get_path_table,
    get_rank,
    linearize,
    meoe_path,
    rank_condition,
    spiral_construct,
    verify_local_steer,
)
from ckm.solvers.differential import propagate
from ckm.systems.base import KeplerSystem
from ckm.systems.controls import SteeringControl

from .utils import random_periodic_states


def test_rank_condition_random_states():
    for x in random_periodic_states(10000, seed=3):
        assert rank_condition(x) == 6


def test_symbolic_jacobian_matches_analytic():
    for x in random_periodic_states(5, seed=4):
        analytic = linearize(x, method="analytic")
        symbolic = linearize(x, method="symbolic")
        np.testing.assert_allclose(symbolic.A, analytic.A, rtol=1e-12, atol=1e-24)
        np.testing.assert_equal(analytic.B, np.vstack((np.zeros((3, 3)), np.eye(3))))


def test_get_rank():
    assert get_rank(np.zeros((3, 3))) == 0
    assert get_rank(np.diag([1.0, 1.0, 1e-12])) == 2
    assert get_rank(np.eye(4)) == 4


def test_stable_path_has_affine_perigee(constants):
    x_i = state_from_scalars(constants.r_e + 300000.0, 7728.2, 0.0)
    x_f = StateVector(r=[5.0e6, 5.0e6, 1.0e6], v=[-5300.0, 5000.0, 900.0])
    assert classify(x_f, constants) is RegionClass.P_PLUS

    states = meoe_path(x_i, x_f, PathMode.STABLE_P_PLUS, n=51, constants=constants)
    assert len(states) == 51
    r_p_i = perigee_apogee(x_i)[0]
    r_p_f = perigee_apogee(x_f)[0]
    for lamb, x in zip(np.linspace(0.0, 1.0, 51), states):
        assert classify(x, constants) is RegionClass.P_PLUS
        np.testing.assert_allclose(perigee_apogee(x)[0], (1.0 - lamb) * r_p_i + lamb * r_p_f, rtol=1e-9)

    # endpoints are reproduced
    np.testing.assert_allclose(states[0].r, x_i.r, rtol=1e-9, atol=1e-3)
    np.testing.assert_allclose(states[-1].r, x_f.r, rtol=1e-9, atol=1e-3)


def test_admissible_path(constants, x_i):
    x_f = StateVector(r=[5.0e6, 5.0e6, 1.0e6], v=[-5300.0, 5000.0, 900.0])
    states = meoe_path(x_i, x_f, PathMode.ADMISSIBLE_A, n=41, constants=constants)
    r_i = np.linalg.norm(x_i.r)
    r_f = np.linalg.norm(x_f.r)
    for lamb, x in zip(np.linspace(0.0, 1.0, 41), states):
        assert admissible(x, constants)
        np.testing.assert_allclose(np.linalg.norm(x.r), (1.0 - lamb) * r_i + lamb * r_f, rtol=1e-9)


def test_path_endpoint_outside_region(constants, x_i, x_elliptic):
    with pytest.raises(EndpointOutsideRegion):
        meoe_path(x_i, x_elliptic, PathMode.STABLE_P_PLUS, constants=constants)


def test_path_table(constants, x_elliptic):
    x_f = StateVector(r=[5.0e6, 5.0e6, 1.0e6], v=[-5300.0, 5000.0, 900.0])
    table = get_path_table(meoe_path(x_elliptic, x_f, n=11, constants=constants))
    np.testing.assert_equal(table.shape, (11, 15))
    np.testing.assert_allclose(table[:, 0], np.linspace(0.0, 1.0, 11))
    assert np.all(np.isnan(table[:, 7]))
    assert np.all(table[:, 11] > constants.r_c)


def test_spiral_closed_forms(x_i, constants):
    engine = EngineParameters(isp=2000.0)
    result = spiral_construct(x_i, 150.0, engine, constants)

    C0 = np.sqrt(np.linalg.norm(x_i.r)) * np.linalg.norm(x_i.v)
    np.testing.assert_allclose(result.C0, C0)
    np.testing.assert_allclose(result.radius[0], np.linalg.norm(x_i.r))
    np.testing.assert_allclose(np.linalg.norm(result.velocity[0]), np.linalg.norm(x_i.v), rtol=1e-12)

    for r, v in zip(result.position[::20], result.velocity[::20]):
        x = StateVector(r=r, v=v)
        r_norm = np.linalg.norm(r)
        np.testing.assert_allclose(np.linalg.norm(angular_momentum(x)), C0 * np.sqrt(r_norm / 2.0), rtol=1e-10)
        L = laplace_vector(x, constants.mu)
        np.testing.assert_allclose(L.dot(r) / r_norm, C0**2 / 2.0 - constants.mu, rtol=1e-10)
        np.testing.assert_allclose(perigee_apogee(x, constants.mu)[0], result.C1 * r_norm, rtol=1e-10)

    # perigee leaves the atmosphere with finite thrust
    assert perigee_apogee(result.terminal_state.x, constants.mu)[0] > constants.r_c
    assert np.isfinite(result.tau_bar)
    np.testing.assert_allclose(np.max(np.linalg.norm(result.tau, axis=1)), result.tau_bar, rtol=1e-12)
    assert np.all(np.diff(result.mass) < 0.0)


def test_spiral_matches_integration(x_i, constants):
    engine = EngineParameters(isp=2000.0)
    result = spiral_construct(x_i, 150.0, engine, constants, num_samples=11)
    k_2 = result.C0**2 / 2.0
    u_r = constants.mu - k_2 * (result.a**2 / 2.0 + result.b**2)
    u_t = result.a * result.b * k_2 / 2.0

    def func_tau(t, r, v, m):
        r_norm = np.linalg.norm(r)
        r_hat = r / r_norm
        h = np.cross(r, v)
        r_perp = np.cross(h / np.linalg.norm(h), r_hat)
        return m / r_norm**2 * (u_r * r_hat + u_t * r_perp)

    system = KeplerSystem.from_parts(constants, EngineParameters(isp=2000.0, tau_bound=result.tau_bar * (1.0 + 1e-9)))
    trajectory = propagate(
        SatelliteState(x=StateVector(r=result.position[0], v=result.velocity[0]), m=150.0),
        SteeringControl(func_tau),
        result.duration,
        system=system,
    )
    s_f = trajectory.final_state
    np.testing.assert_array_less(np.linalg.norm(s_f.x.r - result.position[-1]) / result.radius[-1], 1e-8)
    np.testing.assert_array_less(np.linalg.norm(s_f.x.v - result.velocity[-1]) / np.linalg.norm(result.velocity[-1]), 1e-8)
    np.testing.assert_allclose(s_f.m, result.mass[-1], rtol=1e-8)


def test_spiral_matched_coefficients(x_i, constants):
    result = spiral_construct(x_i, 150.0, constants=constants, coefficients="matched")
    np.testing.assert_allclose(result.velocity[0], x_i.v, rtol=1e-10, atol=1e-9)
    assert perigee_apogee(result.terminal_state.x, constants.mu)[0] > constants.r_c


def test_spiral_trajectory(x_i, constants):
    result = spiral_construct(x_i, 150.0, constants=constants, num_samples=21)
    trajectory = result.to_trajectory()
    np.testing.assert_equal(len(trajectory), 21)
    np.testing.assert_allclose(trajectory.final_state.m, result.mass[-1])


def test_spiral_errors(x_elliptic):
    with pytest.raises(NotInPMinus):
        spiral_construct(x_elliptic, 100.0)
    with pytest.raises(ZeroVelocity):
        spiral_construct(StateVector(r=[6.5e6, 0.0, 0.0], v=[0.0, 0.0, 0.0]), 100.0)


def test_gramian_is_positive_definite(x_elliptic):
    W = get_gramian(x_elliptic, num_nodes=201)
    np.testing.assert_allclose(W, W.T)
    assert np.linalg.eigvalsh(W)[0] > 0.0


def test_local_steering(x_elliptic):
    target = StateVector(r=x_elliptic.r + np.array([10.0, -5.0, 2.0]), v=x_elliptic.v + np.array([0.01, 0.0, -0.005]))
    result = verify_local_steer(x_elliptic, target, eps=1e-3, num_nodes=201)
    assert result.success
    assert result.miss < 0.1 * result.offset
    assert result.peak <= 1e-3
    np.testing.assert_equal(result.u.shape, (201, 3))


def test_local_steering_bound_not_met(x_elliptic):
    target = StateVector(r=x_elliptic.r + np.array([10.0, 0.0, 0.0]), v=x_elliptic.v)
    result = verify_local_steer(x_elliptic, target, eps=1e-15, num_nodes=101)
    assert not result.success
