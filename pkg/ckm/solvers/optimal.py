#!/usr/bin/env python3
# -*- coding: utf-8 -*-

r"""Module to solve the perigee-maximizing optimal control problems.

For a thrust bound :math:`\tau`, the orbit-insertion problem (OIP) steers the mass-depleting system from an initial state and the de-orbit problem (DOP) steers the mass-growing time-reversed system from the reversed entry state, both maximizing the perigee distance :math:`r_{p}` at the first time :math:`t_{f}` at which :math:`\|r(t_{f})\| = r_{p}(x(t_{f}))`. The shooting function of the outer loop is :math:`s(\tau) = r_{p}(x(t_{f})) - r_{c}`.

The control has full magnitude :math:`\tau` and its direction is parameterized by cubic splines of the steering angles on uniform knots. The knot values are optimized by a quasi-Newton method with finite-difference gradients from several initial profiles, then refined on a finer grid.
"""

__name__ = 'ckm.solvers.optimal'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-12"
__updated__ = "2026-10-19"

# dependencies
from dataclasses import dataclass, field, replace
import enum
import hashlib
import json
import numpy as np
import scipy.optimize as so

# ckm modules
from ..core import EngineParameters, PhysicalConstants, RegionClass, SatelliteState, StateVector, classify, orbital_period
from ..errors import CKMError, EventNeverFires, NoConvergence, NonPositiveMass
from ..io import Updater
from ..systems.base import Direction, KeplerSystem
from ..systems.controls import SplineSteeringControl, SteeringProfile
from .base import Event, EventKind, Trajectory, get_orbit_columns, run_in_processes
from .differential import Propagator

# set constants
PENALTY = 10.0
"""float : Objective of the profiles without a perigee match."""
FINAL_RTOL = 1e-12
"""float : Relative tolerance of the reported propagation."""

class OcpKind(enum.Enum):
    """Kind of the optimal control problem."""

    OIP = 'OIP'
    """Orbit insertion with the mass-depleting system."""
    DOP = 'DOP'
    """De-orbit with the mass-growing time-reversed system."""

@dataclass(frozen=True, eq=False)
class OcpScenario:
    """Scenario of an optimal control problem.

    Parameters
    ----------
    kind : :class:`ckm.solvers.optimal.OcpKind`
        Kind of the problem.
    anchor_state : :class:`ckm.core.StateVector`
        Initial state of the integrated system, ``x_i`` for the OIP and ``(r_f, - v_f)`` for the DOP.
    anchor_mass : float
        Initial mass ``m_i`` in kg. For the DOP, this is the mass at the end of the backward run.
    engine : :class:`ckm.core.EngineParameters`, optional
        Parameters of the engine. Its thrust bound is replaced by the thrust of each solve.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.
    name : str, optional
        Name of the scenario.
    """

    kind: OcpKind
    anchor_state: StateVector
    anchor_mass: float
    engine: EngineParameters = field(default_factory=EngineParameters)
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'kind', OcpKind(self.kind))
        if not self.anchor_mass > 0.0:
            raise NonPositiveMass("Anchor mass should be positive, got {}".format(self.anchor_mass))

    @classmethod
    def from_entry_interface(cls, x_ei:StateVector, m_i:float, engine:EngineParameters=None, constants:PhysicalConstants=None, name:str=''):
        """Method to build a de-orbit scenario from the state at the entry interface.

        Parameters
        ----------
        x_ei : :class:`ckm.core.StateVector`
            State at the entry interface.
        m_i : float
            Initial mass of the de-orbit in kg.
        engine : :class:`ckm.core.EngineParameters`, optional
            Parameters of the engine.
        constants : :class:`ckm.core.PhysicalConstants`, optional
            Physical constants.
        name : str, optional
            Name of the scenario.

        Returns
        -------
        scenario : :class:`ckm.solvers.optimal.OcpScenario`
            De-orbit scenario anchored at ``(r_f, - v_f)``.
        """

        return cls(
            kind=OcpKind.DOP,
            anchor_state=StateVector(r=x_ei.r, v=- x_ei.v),
            anchor_mass=m_i,
            engine=engine if engine is not None else EngineParameters(),
            constants=constants if constants is not None else PhysicalConstants(),
            name=name
        )

    @property
    def direction(self):
        """:class:`ckm.systems.base.Direction` : Direction of the integrated system."""

        return Direction.FORWARD if self.kind is OcpKind.OIP else Direction.BACKWARD_MASS_GROWING

    @property
    def scenario_hash(self):
        """str : Digest of the values of the scenario."""

        values = {
            'kind': self.kind.value,
            'anchor_state': [repr(float(value)) for value in self.anchor_state.to_array()],
            'anchor_mass': repr(float(self.anchor_mass)),
            'engine': [repr(float(getattr(self.engine, key))) for key in ['isp', 'g0', 'm_dry']],
            'constants': [repr(float(getattr(self.constants, key))) for key in ['mu', 'r_e', 'r_c']]
        }

        return hashlib.sha256(json.dumps(values, sort_keys=True).encode('utf-8')).hexdigest()[:16]

    def get_system(self, tau:float):
        """Method to obtain the controlled system with thrust bound ``tau``."""

        return KeplerSystem.from_parts(
            constants=self.constants,
            engine=replace(self.engine, tau_bound=float(tau))
        )

@dataclass(frozen=True, eq=False)
class OcpSolution:
    """Solution of an optimal control problem.

    Parameters
    ----------
    kind : :class:`ckm.solvers.optimal.OcpKind`
        Kind of the problem.
    tau : float
        Thrust bound in N.
    trajectory : :class:`ckm.solvers.base.Trajectory`
        Optimal trajectory of the integrated system, ending at the perigee match.
    t_f : float
        Final time in s.
    terminal_rp : float
        Perigee distance at the final time in m.
    r_c : float
        Radius of the atmosphere in m.
    converged : bool
        Whether the optimizer met its convergence criteria.
    profile : :class:`ckm.systems.controls.SteeringProfile`
        Optimal steering profile, used to warm-start nearby solves.
    diagnostics : dict
        Diagnostics of the optimizer.
    """

    kind: OcpKind
    tau: float
    trajectory: Trajectory
    t_f: float
    terminal_rp: float
    r_c: float
    converged: bool
    profile: SteeringProfile
    diagnostics: dict = field(default_factory=dict)

    @property
    def s(self):
        """float : Value of the shooting function ``terminal_rp - r_c`` in m."""

        return self.terminal_rp - self.r_c

    @property
    def physical_trajectory(self):
        """:class:`ckm.solvers.base.Trajectory` : Trajectory of the mass-depleting system, reversed for the DOP."""

        return self.trajectory.reversed() if self.kind is OcpKind.DOP else self.trajectory

    def summary_record(self, scenario_hash:str=None):
        """Method to obtain the summary of the solution as a flat record.

        Parameters
        ----------
        scenario_hash : str, optional
            Digest of the solved scenario.

        Returns
        -------
        record : dict
            Summary record.
        """

        return {
            'scenario_hash': scenario_hash,
            'kind': self.kind.value,
            'tau': float(self.tau),
            't_f': float(self.t_f),
            'terminal_rp': float(self.terminal_rp),
            's': float(self.s),
            'converged': bool(self.converged),
            'iterations': int(self.diagnostics.get('iterations', 0)),
            'optimality': float(self.diagnostics.get('optimality', np.nan)),
            'm_f': float(self.diagnostics.get('m_f', np.nan))
        }

class _Stalled(Exception):
    pass

class OCPSolver():
    """Class to solve the perigee-maximizing optimal control problems.

    Initializes ``scenario``, ``params`` and ``updater``.

    Parameters
    ----------
    scenario : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    params : dict, optional
        Parameters for the solver. Refer to **Notes** below for all available options.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.

    Notes
    -----
        The ``params`` dictionary currently supports the following keys:
            ====================    ====================================================
            key                     value
            ====================    ====================================================
            'show_progress'         (*bool*) option to display the progress of the solver. Default is ``False``.
            'knots_initial'         (*int*) number of knots of the multi-start stage. Default is ``16``.
            'knots_final'           (*int*) number of knots of the refinement stage. Default is ``64``.
            'starts'                (*list*) constant in-plane angles in rad of the initial profiles. Default is tangential, antitangential and ``+- pi / 4``.
            'opt_method'            (*str*) method of :func:`scipy.optimize.minimize`. Options are ``'BFGS'`` (fallback), ``'CG'`` and ``'L-BFGS-B'``.
            'opt_gtol'              (*float*) tolerance of the gradient norm. Default is ``1e-10``.
            'opt_eps'               (*float*) step of the finite-difference gradients in rad. Default is ``1e-6``.
            'opt_maxiter'           (*int*) maximum number of iterations per stage. Default is ``200``.
            'stall_tol'             (*float*) improvement of the perigee distance in m below which the objective has stalled. Default is ``1e-4``.
            'stall_iterations'      (*int*) number of iterations over which the stall is measured. Default is ``5``.
            'horizon_factor'        (*float*) ratio of the refined knot horizon to the final time. Default is ``1.05``.
            'warm_refine_only'      (*bool*) option to skip the multi-start stage for warm starts and optimize the warm profile directly on the refinement knots. Default is ``True``.
            't_max_periods'         (*float*) time cap of the propagations in periods of the anchor state. Default is ``10``.
            'planar'                (*bool*) option to fix the out-of-plane angle to zero. Default is ``True``.
            'relax_magnitude'       (*bool*) option to optimize a throttle as well, as a diagnostic of the full-thrust structure. Default is ``False``.
            'mass_iterations'       (*int*) maximum number of fixed-point iterations of the terminal mass of the DOP. Default is ``6``.
            'mass_tol'              (*float*) relative tolerance of the terminal mass. Default is ``1e-9``.
            'search_rtol'           (*float*) relative tolerance of the propagations during the optimization. Default is ``1e-10``.
            'parallel'              (*bool*) option to run the starts in parallel processes. Default is ``False``.
            'num_processes'         (*int*) number of parallel processes. Default is the number of available cores.
            'require_convergence'   (*bool*) option to raise :class:`ckm.errors.NoConvergence` if the optimizer fails to converge. Default is ``False``.
            ====================    ====================================================
    """

    # attributes
    name = 'OCPSolver'
    """str : Name of the solver."""
    desc = "Perigee-Maximizing Optimal Control Solver"
    """str : Description of the solver."""
    opt_methods = ['BFGS', 'CG', 'L-BFGS-B']
    """list : Available methods of :func:`scipy.optimize.minimize`."""
    solver_defaults = {
        'show_progress': False,
        'knots_initial': 16,
        'knots_final': 64,
        'starts': [0.0, np.pi, np.pi / 4.0, - np.pi / 4.0],
        'opt_method': 'BFGS',
        'opt_gtol': 1e-10,
        'opt_eps': 1e-6,
        'opt_maxiter': 200,
        'stall_tol': 1e-4,
        'stall_iterations': 5,
        'horizon_factor': 1.05,
        'warm_refine_only': True,
        't_max_periods': 10.0,
        'planar': True,
        'relax_magnitude': False,
        'mass_iterations': 6,
        'mass_tol': 1e-9,
        'search_rtol': 1e-10,
        'parallel': False,
        'num_processes': None,
        'require_convergence': False
    }
    """dict : Default parameters of the solver."""

    def __init__(self, scenario:OcpScenario, params:dict={}, cb_update=None):
        """Class constructor for OCPSolver."""

        # set constants
        self.scenario = scenario
        self.t_p = orbital_period(scenario.anchor_state, scenario.constants.mu)

        # set parameters
        self.set_params(params)

        # set updater
        self.updater = Updater(
            name='ckm.solvers.' + self.name,
            cb_update=cb_update
        )

        # validate anchor
        if scenario.kind is OcpKind.OIP and classify(scenario.anchor_state, scenario.constants) is not RegionClass.P_MINUS:
            self.updater.update_warning(
                message="Initial state of the OIP does not lie in the atmosphere-crossing region"
            )

        self._propagators = dict()

    def set_params(self, params:dict):
        """Method to validate and set the solver parameters.

        Parameters
        ----------
        params : dict
            Parameters of the solver.
        """

        # validate parameters
        _params = dict()
        for key in self.solver_defaults:
            _params[key] = params.get(key, self.solver_defaults[key])
        assert _params['knots_initial'] >= 2, "Parameter ``'knots_initial'`` should be at least 2"
        assert _params['knots_final'] >= _params['knots_initial'], "Parameter ``'knots_final'`` should not be less than ``'knots_initial'``"
        assert len(_params['starts']) >= 1, "Parameter ``'starts'`` should contain at least one angle"
        assert _params['opt_method'] in self.opt_methods, "Parameter ``'opt_method'`` should assume one of ``{}``".format(self.opt_methods)
        for key in ['opt_gtol', 'opt_eps', 'stall_tol', 'mass_tol', 'search_rtol', 't_max_periods']:
            assert _params[key] > 0.0, "Parameter ``'{}'`` should be positive".format(key)
        assert _params['horizon_factor'] >= 1.0, "Parameter ``'horizon_factor'`` should be at least 1"
        assert _params['mass_iterations'] >= 1, "Parameter ``'mass_iterations'`` should be at least 1"

        # set solver parameters
        self.params = _params

    def get_propagator(self, tau:float, rtol:float):
        """Method to obtain a cached propagator for a thrust bound and a tolerance."""

        key = (float(tau), float(rtol))
        if key not in self._propagators:
            self._propagators[key] = Propagator(
                system=self.scenario.get_system(tau),
                params={
                    'ode_rtol': rtol
                }
            )

        return self._propagators[key]

    def propagate_profile(self, tau:float, m_0:float, profile:SteeringProfile, rtol:float=FINAL_RTOL):
        """Method to propagate the anchor state under a steering profile.

        The atmosphere crossings are recorded without stopping the propagation.

        Parameters
        ----------
        tau : float
            Thrust bound in N.
        m_0 : float
            Initial mass of the integrated system in kg.
        profile : :class:`ckm.systems.controls.SteeringProfile`
            Steering profile.
        rtol : float, optional
            Relative tolerance of the integrator.

        Returns
        -------
        trajectory : :class:`ckm.solvers.base.Trajectory`
            Trajectory ending at the first perigee match, the mass floor or the time cap.
        """

        return self.get_propagator(tau, rtol).propagate(
            s0=SatelliteState(x=self.scenario.anchor_state, m=m_0),
            law=SplineSteeringControl(tau, profile),
            t_max=self.params['t_max_periods'] * self.t_p,
            events=[
                Event(EventKind.PERIGEE_MATCH),
                Event(EventKind.ATMOSPHERE_CROSSING, terminal=False),
                Event(EventKind.MASS_FLOOR)
            ],
            direction=self.scenario.direction
        )

    def get_objective(self, tau:float, m_0:float, profile:SteeringProfile):
        """Method to obtain the objective ``- r_p(x(t_f)) / r_c`` of a steering profile.

        Profiles whose propagation fails or misses the perigee match are penalized.

        Parameters
        ----------
        tau : float
            Thrust bound in N.
        m_0 : float
            Initial mass of the integrated system in kg.
        profile : :class:`ckm.systems.controls.SteeringProfile`
            Steering profile.

        Returns
        -------
        objective : float
            Nondimensional objective.
        """

        try:
            trajectory = self.propagate_profile(tau, m_0, profile, self.params['search_rtol'])
        except CKMError as error:
            self.updater.update_debug(
                message="Penalized profile: {}".format(error)
            )
            return PENALTY

        if not trajectory.events_of(EventKind.PERIGEE_MATCH):
            return PENALTY
        r_p = get_orbit_columns(trajectory.final_state.x, self.scenario.constants.mu)[0]

        return PENALTY if np.isnan(r_p) else - r_p / self.scenario.constants.r_c

    def optimize_profile(self, tau:float, m_0:float, profile:SteeringProfile):
        """Method to optimize the knot values of a steering profile.

        Parameters
        ----------
        tau : float
            Thrust bound in N.
        m_0 : float
            Initial mass of the integrated system in kg.
        profile : :class:`ckm.systems.controls.SteeringProfile`
            Initial steering profile.

        Returns
        -------
        result : dict
            Optimized ``'profile'``, ``'objective'``, ``'iterations'``, ``'evaluations'``, ``'optimality'``, ``'message'`` and ``'converged'``.
        """

        # extract frequently used variables
        r_c = self.scenario.constants.r_c
        stall_iterations = self.params['stall_iterations']
        cache = dict()
        best = {
            'objective': np.inf,
            'z': profile.to_vector()
        }
        history = list()

        def func(z):
            key = z.tobytes()
            if key not in cache:
                cache[key] = self.get_objective(tau, m_0, profile.from_vector(z))
                if cache[key] < best['objective']:
                    best['objective'] = cache[key]
                    best['z'] = np.array(z, copy=True)
            return cache[key]

        def callback(zk):
            history.append(func(zk))
            self.updater.update_debug(
                message="Iteration {}: r_p = {:.6f} m".format(len(history), - history[-1] * r_c)
            )
            if len(history) > stall_iterations and (history[- stall_iterations - 1] - history[-1]) * r_c < self.params['stall_tol']:
                raise _Stalled

        try:
            res = so.minimize(
                fun=func,
                x0=profile.to_vector(),
                method=self.params['opt_method'],
                callback=callback,
                options={
                    'gtol': self.params['opt_gtol'],
                    'eps': self.params['opt_eps'],
                    'maxiter': self.params['opt_maxiter']
                }
            )
            # precision loss at the optimum counts as converged
            converged = bool(res.success or res.status == 2)
            message = str(res.message)
            optimality = float(np.linalg.norm(res.jac)) if getattr(res, 'jac', None) is not None else np.nan
            iterations = int(res.nit)
        except _Stalled:
            converged = True
            message = "Objective stalled"
            optimality = np.nan
            iterations = len(history)

        return {
            'profile': profile.from_vector(best['z']),
            'objective': float(best['objective']),
            'iterations': iterations,
            'evaluations': len(cache),
            'optimality': optimality,
            'message': message,
            'converged': converged
        }

    def get_initial_profiles(self, horizon:float, warm:SteeringProfile=None):
        """Method to obtain the initial profiles of the multi-start stage.

        Parameters
        ----------
        horizon : float
            Time span of the knots in s.
        warm : :class:`ckm.systems.controls.SteeringProfile`, optional
            Profile of a nearby solve. If provided, it is the only start.

        Returns
        -------
        profiles : list
            Initial profiles.
        """

        # extract frequently used variables
        K = self.params['knots_initial']
        planar = self.params['planar']
        relax = self.params['relax_magnitude']

        if warm is not None:
            return [warm.resample(K, planar=planar, relax=relax)]

        return [SteeringProfile.constant(alpha, K, horizon, planar).resample(K, relax=relax) for alpha in self.params['starts']]

    def run_stages(self, tau:float, m_0:float, warm:SteeringProfile=None):
        """Method to run the multi-start stage and the refinement stage.

        With ``'warm_refine_only'``, a warm profile is optimized on the refinement knots only.

        Parameters
        ----------
        tau : float
            Thrust bound in N.
        m_0 : float
            Initial mass of the integrated system in kg.
        warm : :class:`ckm.systems.controls.SteeringProfile`, optional
            Profile of a nearby solve.

        Returns
        -------
        result : dict
            Result of the refinement stage with the objectives of the starts under ``'start_objectives'``.
        """

        # warm refinement
        if warm is not None and self.params['warm_refine_only']:
            profile = warm.resample(self.params['knots_final'], planar=self.params['planar'], relax=self.params['relax_magnitude'])
            start_objective = self.get_objective(tau, m_0, profile)
            refined = self.optimize_profile(tau, m_0, profile)
            refined['start_objectives'] = [start_objective]
            return refined

        # multi-start stage
        profiles = self.get_initial_profiles(self.t_p, warm)
        if self.params['parallel'] and len(profiles) > 1:
            payloads = [(self.scenario, self.params, tau, m_0, profile) for profile in profiles]
            results = run_in_processes(_optimize_start, payloads, self.params['num_processes'])
        else:
            results = list()
            for i, profile in enumerate(profiles):
                if self.params['show_progress']:
                    self.updater.update_progress(
                        pos=i,
                        dim=len(profiles) + 1,
                        status="-" * 21 + "Optimizing Starts"
                    )
                results.append(self.optimize_profile(tau, m_0, profile))

        # best objective then lowest index
        idx = min(range(len(results)), key=lambda i: (results[i]['objective'], i))
        best = results[idx]
        self.updater.update_debug(
            message="Start {} selected with objectives {}".format(idx, [result['objective'] for result in results])
        )

        # refinement stage
        horizon = best['profile'].horizon
        if best['objective'] < PENALTY:
            t_f = self.propagate_profile(tau, m_0, best['profile'], self.params['search_rtol']).t_f
            horizon = self.params['horizon_factor'] * t_f
        refined = self.optimize_profile(tau, m_0, best['profile'].resample(self.params['knots_final'], horizon=horizon, relax=self.params['relax_magnitude']))
        if refined['objective'] > best['objective']:
            refined['profile'] = best['profile']
            refined['objective'] = best['objective']
        refined['iterations'] += sum(result['iterations'] for result in results)
        refined['evaluations'] += sum(result['evaluations'] for result in results)
        refined['start_objectives'] = [result['objective'] for result in results]

        return refined

    def solve(self, tau:float, warm:SteeringProfile=None):
        """Method to solve the optimal control problem for a thrust bound.

        Parameters
        ----------
        tau : float
            Thrust bound in N.
        warm : :class:`ckm.systems.controls.SteeringProfile`, optional
            Profile of a nearby solve to start from.

        Returns
        -------
        solution : :class:`ckm.solvers.optimal.OcpSolution`
            Solution of the problem.
        """

        # validate parameters
        assert tau > 0.0, "Parameter ``tau`` should be positive"

        # extract frequently used variables
        sc = self.scenario
        m_i = sc.anchor_mass
        beta = sc.engine.beta

        # update log
        self.updater.update_info(
            status="-" * 21 + "Solving {} at tau = {:.6g} N".format(sc.kind.value, tau)
        )

        # terminal mass fixed point for the backward run
        m_0 = m_i
        mass_iterations = 0
        mass_residual = 0.0
        for _ in range(self.params['mass_iterations'] if sc.kind is OcpKind.DOP else 1):
            result = self.run_stages(tau, m_0, warm)
            mass_iterations += 1
            if sc.kind is OcpKind.OIP or result['objective'] >= PENALTY:
                break

            # update terminal mass
            t_f = self.propagate_profile(tau, m_0, result['profile'], self.params['search_rtol']).t_f
            m_f = m_i - beta * tau * t_f
            if not m_f > 0.0:
                raise NonPositiveMass("Terminal mass {:g} kg of the DOP is not positive at tau = {:g} N".format(m_f, tau))
            mass_residual = abs(m_f - m_0)
            m_0 = m_f
            warm = result['profile']
            self.updater.update_debug(
                message="Terminal mass {:.9g} kg after {} iterations".format(m_f, mass_iterations)
            )
            if mass_residual <= self.params['mass_tol'] * m_i:
                break
        else:
            self.updater.update_warning(
                message="Terminal mass not converged after {} iterations at tau = {:g} N: last change {:.3e} kg".format(mass_iterations, tau, mass_residual)
            )

        # reported propagation
        trajectory = self.propagate_profile(tau, m_0, result['profile'], FINAL_RTOL)
        if not trajectory.events_of(EventKind.PERIGEE_MATCH):
            raise EventNeverFires("Perigee match not reached within {} periods at tau = {:g} N (terminal reason {})".format(self.params['t_max_periods'], tau, trajectory.terminal_reason.value))

        # diagnostics
        diagnostics = {
            'iterations': result['iterations'],
            'evaluations': result['evaluations'],
            'optimality': result['optimality'],
            'message': result['message'],
            'start_objectives': result['start_objectives'],
            'mass_iterations': mass_iterations,
            'mass_residual': mass_residual,
            'm_f': trajectory.y[0, 6] if sc.kind is OcpKind.DOP else trajectory.y[-1, 6],
            'atmosphere_crossings': len(trajectory.events_of(EventKind.ATMOSPHERE_CROSSING))
        }
        if self.params['relax_magnitude']:
            law = SplineSteeringControl(tau, result['profile'])
            diagnostics['min_throttle'] = float(min(law.get_throttle(t) for t in trajectory.t))
            self.updater.update_info(
                status="-" * 21 + "Minimum throttle {:.6f}".format(diagnostics['min_throttle'])
            )

        solution = OcpSolution(
            kind=sc.kind,
            tau=float(tau),
            trajectory=trajectory,
            t_f=trajectory.t_f,
            terminal_rp=float(get_orbit_columns(trajectory.final_state.x, sc.constants.mu)[0]),
            r_c=sc.constants.r_c,
            converged=result['converged'],
            profile=result['profile'],
            diagnostics=diagnostics
        )

        # check convergence
        if not solution.converged:
            self.updater.update_warning(
                message="Optimizer did not converge at tau = {:g} N: {}".format(tau, result['message'])
            )
            if self.params['require_convergence']:
                raise NoConvergence("Optimizer did not converge at tau = {:g} N".format(tau), diagnostics)

        self.updater.update_info(
            status="-" * 21 + "t_f = {:.6f} s, r_p - r_c = {:.6f} m".format(solution.t_f, solution.s)
        )

        return solution

def _optimize_start(payload):
    scenario, params, tau, m_0, profile = payload
    return OCPSolver(scenario, params).optimize_profile(tau, m_0, profile)

def solve_ocp(sc:OcpScenario, tau:float, params:dict={}, warm:SteeringProfile=None, cb_update=None):
    """Function to solve the optimal control problem of a scenario.

    Parameters
    ----------
    sc : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    tau : float
        Thrust bound in N.
    params : dict, optional
        Parameters for the solver. Refer to **Notes** of :class:`ckm.solvers.optimal.OCPSolver`.
    warm : :class:`ckm.systems.controls.SteeringProfile`, optional
        Profile of a nearby solve to start from.
    cb_update : callable, optional
        Callback function to update status and progress.

    Returns
    -------
    solution : :class:`ckm.solvers.optimal.OcpSolution`
        Solution of the problem.
    """

    return OCPSolver(sc, params, cb_update).solve(tau, warm)

def shooting_s(sc:OcpScenario, tau:float, params:dict={}, warm:SteeringProfile=None):
    """Function to obtain the shooting function ``r_p(x(t_f)) - r_c`` in m.

    Parameters
    ----------
    sc : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    tau : float
        Thrust bound in N.
    params : dict, optional
        Parameters for the solver.
    warm : :class:`ckm.systems.controls.SteeringProfile`, optional
        Profile of a nearby solve to start from.

    Returns
    -------
    s : float
        Value of the shooting function.
    """

    return solve_ocp(sc, tau, params, warm).s
