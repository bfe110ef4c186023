"""
Tests for the propagation of the controlled two-body system
"""
import numpy as np
import pytest

from ckm.core import (
    EngineParameters,
    PhysicalConstants,
    SatelliteState,
    StateVector,
    angular_momentum,
    flight_path_angle,
    laplace_vector,
    orbital_period,
    specific_energy,
)
from ckm.elements import Coe, state_from_coe
from ckm.errors import BoundViolated, NonPositiveMass
from ckm.solvers.base import Event, EventKind, TerminalReason
from ckm.solvers.differential import Propagator, propagate, rescale_control
from ckm.systems.base import Direction, KeplerSystem
from ckm.systems.controls import ConstantControl, SteeringControl, ZeroControl


def get_system(tau_bound=0.0, isp=2000.0, m_dry=1.0):
    return KeplerSystem.from_parts(PhysicalConstants(), EngineParameters(isp=isp, tau_bound=tau_bound, m_dry=m_dry))


def tangential(c):
    return SteeringControl(lambda t, r, v, m: c * v / np.linalg.norm(v))


def test_zero_thrust_conservation(x_elliptic):
    t_p = orbital_period(x_elliptic)
    trajectory = propagate(SatelliteState(x=x_elliptic, m=100.0), ZeroControl(), t_p)

    assert trajectory.terminal_reason is TerminalReason.TIME_EXHAUSTED
    np.testing.assert_allclose(trajectory.t_f, t_p)
    np.testing.assert_equal(trajectory.y[:, 6], 100.0)
    np.testing.assert_equal(trajectory.tau, 0.0)

    E_0 = specific_energy(x_elliptic)
    h_0 = angular_momentum(x_elliptic)
    L_0 = laplace_vector(x_elliptic)
    for _, s, _ in trajectory.samples:
        np.testing.assert_array_less(abs(specific_energy(s.x) - E_0) / abs(E_0), 1e-10)
        np.testing.assert_array_less(np.linalg.norm(angular_momentum(s.x) - h_0) / np.linalg.norm(h_0), 1e-10)
        np.testing.assert_array_less(np.linalg.norm(laplace_vector(s.x) - L_0) / np.linalg.norm(L_0), 1e-8)

    # periodicity
    x_f = trajectory.final_state.x
    np.testing.assert_array_less(np.linalg.norm(x_f.r - x_elliptic.r) / np.linalg.norm(x_elliptic.r), 1e-8)
    np.testing.assert_array_less(np.linalg.norm(x_f.v - x_elliptic.v) / np.linalg.norm(x_elliptic.v), 1e-8)


def test_rk45_periodicity(x_elliptic):
    t_p = orbital_period(x_elliptic)
    trajectory = propagate(SatelliteState(x=x_elliptic, m=1.0), ZeroControl(), t_p, params={"ode_method": "RK45", "ode_rtol": 1e-10})
    x_f = trajectory.final_state.x
    np.testing.assert_array_less(np.linalg.norm(x_f.r - x_elliptic.r) / np.linalg.norm(x_elliptic.r), 1e-6)


def test_backward_equivalence(x_elliptic):
    c = 0.5
    system = get_system(tau_bound=c)
    t_f = 3000.0

    forward = propagate(SatelliteState(x=x_elliptic, m=50.0), tangential(c), t_f, system=system)
    s_f = forward.final_state
    assert s_f.m < 50.0

    # time-reversed run from the reflected final state
    s_b = SatelliteState(x=StateVector(r=s_f.x.r, v=-s_f.x.v), m=s_f.m)
    backward = propagate(s_b, tangential(-c), t_f, direction=Direction.BACKWARD_MASS_GROWING, system=system)
    y = backward.final_state.to_array()

    np.testing.assert_array_less(np.linalg.norm(y[:3] - x_elliptic.r) / np.linalg.norm(x_elliptic.r), 1e-6)
    np.testing.assert_array_less(np.linalg.norm(-y[3:6] - x_elliptic.v) / np.linalg.norm(x_elliptic.v), 1e-6)
    np.testing.assert_allclose(y[6], 50.0, rtol=1e-6)

    # reversal of the backward run is a forward run
    reversed_run = backward.reversed()
    assert reversed_run.direction is Direction.FORWARD
    np.testing.assert_allclose(reversed_run.t[0], 0.0)
    np.testing.assert_allclose(reversed_run.y[-1, :3], s_f.x.r, rtol=1e-12)
    np.testing.assert_allclose(reversed_run.y[-1, 3:6], s_f.x.v, rtol=1e-12)


def test_mass_depletion_rate(x_elliptic):
    c = 2.0
    isp = 300.0
    trajectory = propagate(SatelliteState(x=x_elliptic, m=10.0), tangential(c), 600.0, system=get_system(tau_bound=c, isp=isp))
    beta = EngineParameters(isp=isp).beta
    np.testing.assert_allclose(trajectory.final_state.m, 10.0 - beta * c * 600.0, rtol=1e-9)


def test_perigee_match_stops_at_perigee(x_elliptic):
    t_p = orbital_period(x_elliptic)
    trajectory = propagate(SatelliteState(x=x_elliptic, m=1.0), ZeroControl(), 2.0 * t_p, events=[EventKind.PERIGEE_MATCH])

    assert trajectory.terminal_reason is TerminalReason.PERIGEE_MATCH
    assert trajectory.t_f < t_p
    records = trajectory.events_of(EventKind.PERIGEE_MATCH)
    assert len(records) == 1
    assert abs(records[0].residual) < 1e-3
    np.testing.assert_almost_equal(flight_path_angle(trajectory.final_state.x), 0.0, decimal=9)


def test_perigee_start_stops_at_next_perigee():
    c = Coe(a=7.2e6, e=0.05, i=0.4, omega=0.3, Omega=0.2, theta=0.0)
    x = state_from_coe(c)
    t_p = orbital_period(x)
    trajectory = propagate(SatelliteState(x=x, m=1.0), ZeroControl(), 1.5 * t_p, events=[EventKind.PERIGEE_MATCH])

    assert trajectory.terminal_reason is TerminalReason.PERIGEE_MATCH
    np.testing.assert_allclose(trajectory.t_f, t_p, rtol=1e-6)


def test_circular_start_fires_immediately(x_circular):
    trajectory = propagate(SatelliteState(x=x_circular, m=1.0), ZeroControl(), 1000.0, events=[EventKind.PERIGEE_MATCH])

    assert trajectory.terminal_reason is TerminalReason.PERIGEE_MATCH
    assert trajectory.t_f == 0.0
    assert len(trajectory) == 1


def test_atmosphere_crossing(x_i, constants):
    t_p = orbital_period(x_i)
    trajectory = propagate(SatelliteState(x=x_i, m=150.0), ZeroControl(), t_p, events=[Event(EventKind.ATMOSPHERE_CROSSING)])

    assert trajectory.terminal_reason is TerminalReason.ATMOSPHERE_CROSSING
    np.testing.assert_allclose(np.linalg.norm(trajectory.final_state.x.r), constants.r_c, atol=1e-5)


def test_non_terminal_events_are_recorded(x_i):
    t_p = orbital_period(x_i)
    trajectory = propagate(SatelliteState(x=x_i, m=150.0), ZeroControl(), t_p, events=[Event(EventKind.ATMOSPHERE_CROSSING, terminal=False)])

    assert trajectory.terminal_reason is TerminalReason.TIME_EXHAUSTED
    assert len(trajectory.events_of(EventKind.ATMOSPHERE_CROSSING)) == 1
    np.testing.assert_allclose(trajectory.t_f, t_p)


def test_mass_floor(x_elliptic):
    c = 1000.0
    trajectory = propagate(
        SatelliteState(x=x_elliptic, m=100.0),
        tangential(c),
        100.0,
        events=[EventKind.MASS_FLOOR],
        system=get_system(tau_bound=c, isp=300.0, m_dry=99.9),
    )

    assert trajectory.terminal_reason is TerminalReason.MASS_FLOOR
    np.testing.assert_allclose(trajectory.final_state.m, 99.9, atol=1e-5)


def test_bound_violated(x_elliptic):
    with pytest.raises(BoundViolated):
        propagate(SatelliteState(x=x_elliptic, m=100.0), ConstantControl([10.0, 0.0, 0.0]), 100.0, system=get_system(tau_bound=5.0))


def test_non_positive_mass(x_elliptic):
    with pytest.raises(NonPositiveMass):
        propagate(SatelliteState(x=x_elliptic, m=-1.0), ZeroControl(), 100.0)


def test_invalid_parameters():
    with pytest.raises(AssertionError):
        Propagator(KeplerSystem(), params={"ode_method": "LSODA"})
    with pytest.raises(AssertionError):
        KeplerSystem(params={"isp": 0.0})


def test_system_from_parts():
    constants = PhysicalConstants()
    system = KeplerSystem.from_parts(constants, EngineParameters(isp=3000.0, tau_bound=5.0, m_dry=2.0))
    np.testing.assert_allclose(
        [system.constants.mu, system.constants.r_e, system.constants.r_c, system.constants.g0],
        [constants.mu, constants.r_e, constants.r_c, constants.g0]
    )
    assert (system.engine.isp, system.engine.tau_bound, system.engine.m_dry) == (3000.0, 5.0, 2.0)
    np.testing.assert_allclose(system.engine.beta, 1.0 / (3000.0 * constants.g0))

    # the system only carries parameters
    assert sorted(vars(system)) == ["constants", "engine", "params"]


def test_normalized_and_rescaled_runs_agree(x_elliptic):
    eps = 1e-3
    m_i = 100.0
    t_f = 2000.0
    u_law = tangential(eps)

    normalized = propagate(SatelliteState(x=x_elliptic, m=1.0), u_law, t_f, direction=Direction.NORMALIZED)
    np.testing.assert_equal(normalized.y[:, 6], 1.0)

    law = rescale_control(u_law, eps, m_i, tau_bound=eps * m_i)
    rescaled = propagate(SatelliteState(x=x_elliptic, m=m_i), law, t_f, system=get_system(tau_bound=eps * m_i))

    np.testing.assert_array_less(np.linalg.norm(rescaled.final_state.x.r - normalized.final_state.x.r) / np.linalg.norm(x_elliptic.r), 1e-8)
    beta = EngineParameters().beta
    np.testing.assert_allclose(rescaled.final_state.m, m_i * np.exp(-beta * eps * t_f), rtol=1e-9)


def test_rescale_control_bound():
    with pytest.raises(BoundViolated):
        rescale_control(ZeroControl(), eps=1e-3, m_i=100.0, tau_bound=0.05)


def test_trajectory_table(x_elliptic):
    trajectory = propagate(SatelliteState(x=x_elliptic, m=1.0), ZeroControl(), 1000.0)
    table = trajectory.to_array()
    np.testing.assert_equal(table.shape, (len(trajectory), 15))
    np.testing.assert_equal(table[:, 0], trajectory.t)
    assert np.all(np.diff(trajectory.t) > 0.0)
