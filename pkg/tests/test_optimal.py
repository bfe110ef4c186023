"""
Tests for the perigee-maximizing optimal control problems
"""
import logging

import numpy as np
import pytest

from ckm.core import EngineParameters, StateVector, flight_path_angle, perigee_apogee, state_from_scalars
from ckm.errors import NoConvergence, NonPositiveMass
from ckm.scenario import ScenarioFile
from ckm.solvers.base import EventKind, TerminalReason
from ckm.solvers.optimal import OCPSolver, OcpKind, OcpScenario, shooting_s, solve_ocp
from ckm.systems.base import Direction

from .utils import OCP_PARAMS, scenario_path


def get_oip(x_i, m_i=150.0):
    return OcpScenario(kind=OcpKind.OIP, anchor_state=x_i, anchor_mass=m_i, engine=EngineParameters(isp=2000.0), name="oip")


def get_dop(constants):
    x_ei = state_from_scalars(constants.r_e + 122000.0, 7879.5, np.deg2rad(-15.0))
    return OcpScenario.from_entry_interface(x_ei, 95254.38, EngineParameters(isp=313.0), constants, name="dop")


@pytest.fixture(scope="module")
def weak_solution():
    x_i = state_from_scalars(6.374e6 + 110000.0, 7879.5, np.deg2rad(5.0))
    return solve_ocp(get_oip(x_i), 1e-6, OCP_PARAMS)


def test_weak_thrust_keeps_perigee(weak_solution, x_i, constants):
    r_p, _ = perigee_apogee(x_i, constants.mu)
    assert weak_solution.trajectory.terminal_reason is TerminalReason.PERIGEE_MATCH
    np.testing.assert_array_less(abs(weak_solution.terminal_rp - r_p), 1.0)
    assert weak_solution.s < 0.0

    # the coast crosses the atmosphere once before the perigee
    assert len(weak_solution.trajectory.events_of(EventKind.ATMOSPHERE_CROSSING)) == 1
    np.testing.assert_almost_equal(flight_path_angle(weak_solution.trajectory.final_state.x), 0.0, decimal=6)


def test_summary_record(weak_solution):
    record = weak_solution.summary_record("abc")
    assert sorted(record.keys()) == sorted(["scenario_hash", "kind", "tau", "t_f", "terminal_rp", "s", "converged", "iterations", "optimality", "m_f"])
    assert record["scenario_hash"] == "abc"
    assert record["kind"] == "OIP"
    np.testing.assert_allclose(record["s"], weak_solution.terminal_rp - weak_solution.r_c)
    np.testing.assert_allclose(record["m_f"], weak_solution.trajectory.y[-1, 6])
    assert record["m_f"] < 150.0


def test_warm_start(weak_solution, x_i):
    solution = solve_ocp(get_oip(x_i), 2e-6, OCP_PARAMS, warm=weak_solution.profile)
    assert len(solution.diagnostics["start_objectives"]) == 1
    np.testing.assert_allclose(solution.terminal_rp, weak_solution.terminal_rp, atol=1.0)


def test_strong_thrust_leaves_atmosphere(x_i):
    assert shooting_s(get_oip(x_i), 20.0, OCP_PARAMS) > 0.0


def test_full_thrust_along_trajectory(x_i, constants):
    solution = solve_ocp(get_oip(x_i), 20.0, OCP_PARAMS)
    trajectory = solution.trajectory
    np.testing.assert_allclose(np.linalg.norm(trajectory.tau, axis=1), 20.0, rtol=1e-12)

    # the reported perigee is the one of the final sample
    r_p, _ = perigee_apogee(trajectory.final_state.x, constants.mu)
    np.testing.assert_allclose(solution.terminal_rp, r_p, rtol=1e-10)
    np.testing.assert_array_less(abs(np.linalg.norm(trajectory.final_state.x.r) - r_p), 1.0)


def test_warm_start_skips_multi_start(weak_solution, x_i, monkeypatch):
    calls = list()
    optimize_profile = OCPSolver.optimize_profile

    def counted(self, tau, m_0, profile):
        calls.append(len(profile.knots))
        return optimize_profile(self, tau, m_0, profile)

    monkeypatch.setattr(OCPSolver, "optimize_profile", counted)
    params = dict(OCP_PARAMS, knots_initial=2, knots_final=4)

    solve_ocp(get_oip(x_i), 2e-6, params, warm=weak_solution.profile)
    assert calls == [4]

    calls.clear()
    solve_ocp(get_oip(x_i), 2e-6, dict(params, warm_refine_only=False), warm=weak_solution.profile)
    assert calls == [2, 4]


def test_require_convergence(x_i):
    params = dict(OCP_PARAMS, opt_maxiter=1, require_convergence=True)
    with pytest.raises(NoConvergence) as error:
        solve_ocp(get_oip(x_i), 20.0, params)
    assert "iterations" in error.value.diagnostics


def test_scenario_hash(x_i):
    assert get_oip(x_i).scenario_hash == get_oip(x_i).scenario_hash
    assert get_oip(x_i).scenario_hash != get_oip(x_i, m_i=151.0).scenario_hash


def test_entry_interface_scenario(constants):
    sc = get_dop(constants)
    assert sc.kind is OcpKind.DOP
    assert sc.direction is Direction.BACKWARD_MASS_GROWING
    # reversed velocity climbs out of the atmosphere
    assert flight_path_angle(sc.anchor_state) > 0.0
    np.testing.assert_equal(sc.get_system(100.0).engine.tau_bound, 100.0)


def test_invalid_scenarios(x_i):
    with pytest.raises(NonPositiveMass):
        get_oip(x_i, m_i=0.0)
    with pytest.raises(AssertionError):
        OCPSolver(get_oip(x_i), {"knots_initial": 8, "knots_final": 4})
    with pytest.raises(AssertionError):
        OCPSolver(get_oip(x_i), {"opt_method": "Nelder-Mead"})
    with pytest.raises(AssertionError):
        OCPSolver(get_oip(x_i), {"mass_iterations": 0})
    with pytest.raises(AssertionError):
        solve_ocp(get_oip(x_i), 0.0, OCP_PARAMS)


@pytest.mark.slow
def test_deorbit_terminal_mass(constants):
    sc = get_dop(constants)
    tau = 14004.62
    solution = solve_ocp(sc, tau, OCP_PARAMS)

    # the backward run grows back to the initial mass
    physical = solution.physical_trajectory
    assert physical.direction is Direction.FORWARD
    np.testing.assert_allclose(physical.y[0, 6], 95254.38, rtol=1e-5)
    np.testing.assert_allclose(solution.diagnostics["m_f"], 95254.38 - sc.engine.beta * tau * solution.t_f, rtol=1e-5)

    # the physical run ends at the entry interface
    x_ei = StateVector(r=physical.y[-1, :3], v=physical.y[-1, 3:6])
    np.testing.assert_allclose(x_ei.r, sc.anchor_state.r, rtol=1e-12)
    np.testing.assert_allclose(x_ei.v, - sc.anchor_state.v, rtol=1e-12)


@pytest.mark.slow
def test_deorbit_mass_iteration_cap_warns(constants, caplog):
    params = dict(OCP_PARAMS, mass_iterations=1)
    with caplog.at_level(logging.WARNING, logger="ckm.solvers.OCPSolver"):
        solution = solve_ocp(get_dop(constants), 14004.62, params)
    assert solution.diagnostics["mass_iterations"] == 1
    assert solution.diagnostics["mass_residual"] > 0.0
    assert any("Terminal mass not converged" in record.getMessage() for record in caplog.records)


@pytest.mark.slow
def test_perigee_grows_with_thrust():
    scenario = ScenarioFile.load(scenario_path("oip_x_i"))
    sc = scenario.get_ocp_scenario()
    low = solve_ocp(sc, 6.0, scenario.solver)
    high = solve_ocp(sc, 10.0, scenario.solver)
    assert high.terminal_rp > low.terminal_rp
    assert low.s < 0.0 < high.s
