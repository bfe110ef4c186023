"""
Tests for the first integrals, the geometry and the classification of states
"""
import numpy as np
import pytest

from ckm.core import (
    MU,
    EngineParameters,
    PhysicalConstants,
    RegionClass,
    SatelliteState,
    StateVector,
    admissible,
    angular_momentum,
    classify,
    eccentricity,
    flight_path_angle,
    laplace_vector,
    orbital_period,
    perigee_apogee,
    rotate_state,
    semi_major_axis,
    specific_energy,
    state_from_scalars,
)
from ckm.errors import DegenerateBasis, NonPositiveMass, NotPeriodic, OriginSingularity, ZeroVelocity

from .utils import random_periodic_states


def test_default_constants():
    constants = PhysicalConstants()
    np.testing.assert_equal(constants.mu, 3.9860047e14)
    np.testing.assert_equal(constants.r_e, 6.374e6)
    np.testing.assert_almost_equal(constants.r_c, 6.464e6)
    np.testing.assert_almost_equal(EngineParameters(isp=2000.0).beta, 5.102e-5, decimal=8)


def test_invalid_constants():
    with pytest.raises(ValueError):
        PhysicalConstants(r_c=6.0e6)
    with pytest.raises(ValueError):
        EngineParameters(isp=0.0)


def test_invalid_states():
    with pytest.raises(OriginSingularity):
        StateVector(r=[0.0, 0.0, 0.0], v=[1.0, 0.0, 0.0])
    with pytest.raises(NonPositiveMass):
        SatelliteState(x=StateVector(r=[7.0e6, 0.0, 0.0], v=[0.0, 7.5e3, 0.0]), m=0.0)


def test_circular_orbit(x_circular):
    r = np.linalg.norm(x_circular.r)
    np.testing.assert_almost_equal(eccentricity(x_circular), 0.0, decimal=12)
    np.testing.assert_allclose(semi_major_axis(x_circular), r, rtol=1e-12)
    r_p, r_a = perigee_apogee(x_circular)
    np.testing.assert_allclose([r_p, r_a], [r, r], rtol=1e-10)
    np.testing.assert_allclose(orbital_period(x_circular), 2.0 * np.pi * np.sqrt(r**3 / MU), rtol=1e-12)
    assert classify(x_circular) is RegionClass.P_PLUS


def test_perigee_apogee_identities(x_elliptic):
    r_p, r_a = perigee_apogee(x_elliptic)
    a = semi_major_axis(x_elliptic)
    e = eccentricity(x_elliptic)
    np.testing.assert_allclose(r_p + r_a, 2.0 * a, rtol=1e-12)
    np.testing.assert_allclose(r_p, a * (1.0 - e), rtol=1e-10)
    assert r_p <= np.linalg.norm(x_elliptic.r) <= r_a


def test_laplace_vector_orthogonal_to_angular_momentum(x_elliptic):
    L = laplace_vector(x_elliptic)
    h = angular_momentum(x_elliptic)
    np.testing.assert_almost_equal(np.dot(L, h) / (np.linalg.norm(L) * np.linalg.norm(h)), 0.0, decimal=12)


def test_classification_order(constants):
    # escape speed gives a non-elliptic state
    r = constants.r_e + 500000.0
    escape = StateVector(r=[r, 0.0, 0.0], v=[0.0, np.sqrt(2.0 * MU / r) * 1.01, 0.0])
    assert classify(escape, constants) is RegionClass.NON_ELLIPTIC

    radial = StateVector(r=[r, 0.0, 0.0], v=[1000.0, 0.0, 0.0])
    assert classify(radial, constants) is RegionClass.COLINEAR

    inside = state_from_scalars(constants.r_e + 50000.0, 7800.0, 0.0)
    assert classify(inside, constants) is RegionClass.P_INSIDE_ATMOSPHERE
    assert not admissible(inside, constants)


def test_insertion_point_is_unstable(x_i, constants):
    assert classify(x_i, constants) is RegionClass.P_MINUS
    r_p, _ = perigee_apogee(x_i, constants.mu)
    assert r_p < constants.r_c
    assert admissible(x_i, constants)


def test_not_periodic():
    x = StateVector(r=[7.0e6, 0.0, 0.0], v=[0.0, 12000.0, 0.0])
    with pytest.raises(NotPeriodic):
        semi_major_axis(x)
    with pytest.raises(NotPeriodic):
        perigee_apogee(x)


def test_state_from_scalars():
    x = state_from_scalars(7.0e6, 7500.0, np.deg2rad(3.0))
    np.testing.assert_allclose(np.linalg.norm(x.r), 7.0e6)
    np.testing.assert_allclose(np.linalg.norm(x.v), 7500.0)
    np.testing.assert_allclose(flight_path_angle(x), np.deg2rad(3.0), rtol=1e-12)

    b_1 = np.array([0.0, 1.0, 0.0])
    b_2 = np.array([0.0, 0.0, 1.0])
    x = state_from_scalars(7.0e6, 7500.0, 0.0, plane_basis=(b_1, b_2))
    np.testing.assert_allclose(angular_momentum(x) / np.linalg.norm(angular_momentum(x)), [1.0, 0.0, 0.0], atol=1e-15)


def test_state_from_scalars_errors():
    with pytest.raises(DegenerateBasis):
        state_from_scalars(7.0e6, 7500.0, 0.0, plane_basis=([1.0, 0.0, 0.0], [1.0, 1.0, 0.0]))
    with pytest.raises(ZeroVelocity):
        state_from_scalars(7.0e6, 0.0, 0.0)


def test_flight_path_angle_zero_velocity():
    with pytest.raises(ZeroVelocity):
        flight_path_angle(StateVector(r=[7.0e6, 0.0, 0.0], v=[0.0, 0.0, 0.0]))


def test_same_orbit_points(constants):
    # rounded scalars of later points of the insertion orbit
    states = [
        state_from_scalars(constants.r_e + 110000.0, 7879.5, np.deg2rad(5.0)),
        state_from_scalars(constants.r_e + 379494.0, 7562.0, np.deg2rad(4.3517)),
        state_from_scalars(constants.r_e + 599351.0, 7312.0, np.deg2rad(3.0132)),
    ]
    r_ps = [perigee_apogee(x, constants.mu)[0] for x in states]
    np.testing.assert_allclose(r_ps, r_ps[0], rtol=1e-2)
    for x in states:
        assert classify(x, constants) is RegionClass.P_MINUS


def test_rotation_invariance():
    rng = np.random.default_rng(7)
    for x in random_periodic_states(50, seed=11):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0.0:
            q[:, 0] = -q[:, 0]
        y = rotate_state(x, q)
        np.testing.assert_allclose(specific_energy(y), specific_energy(x), rtol=1e-12)
        np.testing.assert_allclose(eccentricity(y), eccentricity(x), rtol=1e-9, atol=1e-12)
        np.testing.assert_allclose(perigee_apogee(y), perigee_apogee(x), rtol=1e-10)
        assert classify(y) is classify(x)
