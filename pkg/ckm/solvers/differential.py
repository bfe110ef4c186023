#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module to propagate the controlled two-body system with event detection."""

__name__ = 'ckm.solvers.differential'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-06"
__updated__ = "2026-10-18"

# dependencies
import numpy as np
import scipy.integrate as si

# ckm modules
from ..core import SatelliteState, StateVector, is_colinear, perigee_apogee, specific_energy
from ..errors import BoundViolated, NonPositiveMass, OriginSingularity, StepSizeUnderflow
from ..io import Updater
from ..systems.base import ORIGIN_GUARD, Direction, KeplerSystem
from ..systems.controls import ControlLaw, RescaledControl
from .base import Event, EventKind, EventRecord, TerminalReason, Trajectory, get_orbit_columns

# set constants
BOUND_TOL = 1e-12
"""float : Tolerance of the thrust bound."""

class Propagator():
    r"""Class to propagate the controlled two-body system with event detection.

    The integration is performed in the nondimensional variables of :class:`ckm.systems.base.KeplerSystem` with a step-by-step explicit Runge-Kutta stepper of :mod:`scipy.integrate`. After each accepted step, the monitored event functions are checked for sign changes and the crossings are located by bisection on the dense output of the step.

    Initializes ``system``, ``params`` and ``updater``.

    Parameters
    ----------
    system : :class:`ckm.systems.base.KeplerSystem`
        Controlled two-body system.
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
            'show_progress'         (*bool*) option to display the progress of the integration. Default is ``False``.
            'ode_method'            (*str*) embedded Runge-Kutta pair. Options are ``'DOP853'`` (fallback) and ``'RK45'``.
            'ode_rtol'              (*float*) relative tolerance of the integrator. Default is ``1e-12``.
            'ode_atol_position'     (*float*) absolute tolerance of the position in m. Default is ``1e-6``.
            'ode_atol_velocity'     (*float*) absolute tolerance of the velocity in m/s. Default is ``1e-9``.
            'ode_atol_mass'         (*float*) absolute tolerance of the mass in kg. Default is ``1e-9``.
            'event_tol'             (*float*) tolerance of the located event functions in m (or kg). Default is ``1e-6``.
            'event_max_iter'        (*int*) maximum number of bisections to locate an event. Default is ``60``.
            'max_steps'             (*int*) maximum number of accepted steps. Default is ``1000000``.
            ====================    ====================================================

        The perigee match :math:`\|r\| = r_{p}(x)` is a touching zero of the non-negative function :math:`\|r\| - r_{p}(x)`. It is located as the sign change of the radial distance rate :math:`r^{T} v / \|v\|` from negative to positive. The event is armed only after the rate has left the band of ``'event_tol'`` around zero, so that a propagation starting at a perigee stops at the next one. A propagation starting on a circular orbit stops immediately.
    """

    # attributes
    name = 'Propagator'
    """str : Name of the solver."""
    desc = "Controlled Two-Body Propagator"
    """str : Description of the solver."""
    ode_methods = {
        'DOP853': si.DOP853,
        'RK45': si.RK45
    }
    """dict : Available stepper classes of :mod:`scipy.integrate`."""
    solver_defaults = {
        'show_progress': False,
        'ode_method': 'DOP853',
        'ode_rtol': 1e-12,
        'ode_atol_position': 1e-6,
        'ode_atol_velocity': 1e-9,
        'ode_atol_mass': 1e-9,
        'event_tol': 1e-6,
        'event_max_iter': 60,
        'max_steps': 1000000
    }
    """dict : Default parameters of the solver."""

    def __init__(self, system:KeplerSystem, params:dict={}, cb_update=None):
        """Class constructor for Propagator."""

        # set constants
        self.system = system

        # set parameters
        self.set_params(params)

        # set updater
        self.updater = Updater(
            name='ckm.solvers.' + self.name,
            cb_update=cb_update
        )

    def set_params(self, params:dict):
        """Method to validate and set the solver parameters.

        Parameters
        ----------
        params : dict
            Parameters of the solver.
        """

        # validate parameters
        assert params.get('ode_method', self.solver_defaults['ode_method']) in self.ode_methods, "Parameter ``'ode_method'`` should assume one of ``{}``".format(list(self.ode_methods.keys()))
        for key in ['ode_rtol', 'ode_atol_position', 'ode_atol_velocity', 'ode_atol_mass', 'event_tol']:
            assert params.get(key, self.solver_defaults[key]) > 0.0, "Parameter ``'{}'`` should be positive".format(key)

        # set solver parameters
        self.params = dict()
        for key in self.solver_defaults:
            self.params[key] = params.get(key, self.solver_defaults[key])

    def get_func_rates(self, law:ControlLaw, direction:Direction, scales:dict, bound:float):
        """Method to obtain the nondimensional rates of the controlled system.

        Parameters
        ----------
        law : :class:`ckm.systems.controls.ControlLaw`
            Control law in SI units.
        direction : :class:`ckm.systems.base.Direction`
            Direction of the dynamics.
        scales : dict
            Scales of the nondimensional variables. Refer to :func:`ckm.systems.base.KeplerSystem.get_scales`.
        bound : float
            Bound on the norm of the law. If ``None``, the bound is not checked.

        Returns
        -------
        func : callable
            Rates formatted as ``func(t, y)``.
        """

        # extract frequently used variables
        L, V, T, M = scales['L'], scales['V'], scales['T'], scales['M']
        r_guard = ORIGIN_GUARD / L
        normalized = direction is Direction.NORMALIZED
        mass_sign = - 1.0 if direction is Direction.FORWARD else 1.0
        beta_bar = self.system.engine.beta * V
        c_acc = T / V
        c_mass = T / (M * V)
        limit = None if bound is None else bound * (1.0 + BOUND_TOL) + BOUND_TOL
        rates = np.empty(7, dtype=np.float64)

        def func(t, y):
            r = y[:3]
            r_norm = np.sqrt(r.dot(r))
            if r_norm < r_guard:
                raise OriginSingularity("Radius {:g} m is below the origin guard".format(r_norm * L))
            if not y[6] > 0.0:
                raise NonPositiveMass("Mass should be positive, got {:g} kg".format(y[6] * M))

            # control in SI units
            ctrl = np.asarray(law(t * T, r * L, y[3:6] * V, y[6] * M), dtype=np.float64)
            ctrl_norm = np.sqrt(ctrl.dot(ctrl))
            if limit is not None and ctrl_norm > limit:
                raise BoundViolated("Control norm {:.15g} exceeds the bound {:.15g}".format(ctrl_norm, bound))

            # rates
            rates[:3] = y[3:6]
            if normalized:
                rates[3:6] = - r / r_norm**3 + ctrl * c_acc
                rates[6] = 0.0
            else:
                rates[3:6] = - r / r_norm**3 + ctrl * c_mass / y[6]
                rates[6] = mass_sign * beta_bar * ctrl_norm * c_mass

            return rates.copy()

        return func

    def get_func_event(self, kind:EventKind, scales:dict):
        """Method to obtain an event function of the nondimensional variables.

        Parameters
        ----------
        kind : :class:`ckm.solvers.base.EventKind`
            Kind of the event.
        scales : dict
            Scales of the nondimensional variables.

        Returns
        -------
        func : callable
            Event function formatted as ``func(y)`` returning a value in m (or kg).
        sign : int
            Direction of the detected crossings, ``1`` for increasing and ``-1`` for decreasing.
        """

        # extract frequently used variables
        L, M = scales['L'], scales['M']
        r_c = self.system.constants.r_c
        m_dry = self.system.engine.m_dry

        if kind is EventKind.PERIGEE_MATCH:
            return (lambda y: L * y[:3].dot(y[3:6]) / np.sqrt(y[3:6].dot(y[3:6]))), 1
        if kind is EventKind.ATMOSPHERE_CROSSING:
            return (lambda y: L * np.sqrt(y[:3].dot(y[:3])) - r_c), - 1

        return (lambda y: M * y[6] - m_dry), - 1

    def get_residual(self, kind:EventKind, s:SatelliteState):
        """Method to obtain the residual of an event at a state in m (or kg)."""

        if kind is EventKind.PERIGEE_MATCH:
            return float(np.linalg.norm(s.x.r) - get_orbit_columns(s.x, self.system.constants.mu)[0])
        if kind is EventKind.ATMOSPHERE_CROSSING:
            return float(np.linalg.norm(s.x.r) - self.system.constants.r_c)

        return float(s.m - self.system.engine.m_dry)

    def locate(self, func_g, sol, t_a:float, t_b:float, g_a:float):
        """Method to locate a crossing of an event function by bisection.

        Parameters
        ----------
        func_g : callable
            Event function formatted as ``func_g(y)``.
        sol : callable
            Dense output of the step formatted as ``sol(t)``.
        t_a : float
            Time before the crossing.
        t_b : float
            Time after the crossing.
        g_a : float
            Value of the event function at ``t_a``.

        Returns
        -------
        t_e : float
            Located time.
        """

        # extract frequently used variables
        tol = self.params['event_tol']
        t_e = t_b

        for _ in range(int(self.params['event_max_iter'])):
            t_m = 0.5 * (t_a + t_b)
            g_m = func_g(sol(t_m))
            if abs(g_m) <= tol:
                return t_m
            if (g_m < 0.0) == (g_a < 0.0):
                t_a, g_a = t_m, g_m
            else:
                t_b = t_m
            t_e = t_b

        # update log
        self.updater.update_debug(
            message="Event located without reaching the tolerance after {} bisections".format(self.params['event_max_iter'])
        )

        return t_e

    def propagate(self, s0:SatelliteState, law:ControlLaw, t_max:float, events:list=[], direction:Direction=Direction.FORWARD, bound:float=None):
        """Method to propagate a state until the time cap or the first terminal event.

        Parameters
        ----------
        s0 : :class:`ckm.core.SatelliteState`
            Initial state.
        law : :class:`ckm.systems.controls.ControlLaw`
            Control law in SI units.
        t_max : float
            Time cap in s.
        events : list, optional
            Monitored events as :class:`ckm.solvers.base.Event` or :class:`ckm.solvers.base.EventKind` (terminal).
        direction : :class:`ckm.systems.base.Direction`, optional
            Direction of the dynamics.
        bound : float, optional
            Bound on the norm of the law. Default is the thrust bound of the engine, or no bound for the normalized direction.

        Returns
        -------
        trajectory : :class:`ckm.solvers.base.Trajectory`
            Sampled trajectory at the accepted steps.
        """

        # validate parameters
        assert t_max > 0.0, "Parameter ``t_max`` should be positive"
        events = [event if isinstance(event, Event) else Event(kind=EventKind(event)) for event in events]
        if bound is None and direction is not Direction.NORMALIZED:
            bound = self.system.engine.tau_bound

        # nondimensional variables
        scales = self.system.get_scales(s0.m)
        L, V, T, M = scales['L'], scales['V'], scales['T'], scales['M']
        to_si = np.array([L] * 3 + [V] * 3 + [M])
        y_0 = s0.to_array() / to_si
        t_bound = t_max / T
        atol = np.array([self.params['ode_atol_position'] / L] * 3 + [self.params['ode_atol_velocity'] / V] * 3 + [self.params['ode_atol_mass'] / M])

        # initialize events
        funcs = [self.get_func_event(event.kind, scales) for event in events]
        g_prevs = [func(y_0) for func, _ in funcs]
        tol = self.params['event_tol']
        armed = [event.kind is not EventKind.PERIGEE_MATCH or abs(g_prevs[i]) > tol for i, event in enumerate(events)]

        # initialize samples
        ts = [0.0]
        ys = [y_0]
        records = list()
        reason = TerminalReason.TIME_EXHAUSTED

        # circular start
        if any(event.kind is EventKind.PERIGEE_MATCH and event.terminal for event in events) and self._is_circular(s0.x):
            records.append(EventRecord(
                t=0.0,
                kind=EventKind.PERIGEE_MATCH,
                residual=self.get_residual(EventKind.PERIGEE_MATCH, s0),
                state=s0
            ))
            return self._get_trajectory(ts, ys, law, records, TerminalReason.PERIGEE_MATCH, direction, to_si, T)

        # initialize stepper
        stepper = self.ode_methods[self.params['ode_method']](
            fun=self.get_func_rates(law, direction, scales, bound),
            t0=0.0,
            y0=y_0,
            t_bound=t_bound,
            rtol=self.params['ode_rtol'],
            atol=atol
        )

        num_steps = 0
        while stepper.status == 'running':
            # step
            message = stepper.step()
            if stepper.status == 'failed':
                raise StepSizeUnderflow("Integration failed at t = {:g} s: {}".format(stepper.t * T, message))
            num_steps += 1
            if num_steps > self.params['max_steps']:
                raise StepSizeUnderflow("Maximum number of steps {} exceeded at t = {:g} s".format(self.params['max_steps'], stepper.t * T))

            # extract frequently used variables
            t_prev, t_new, y_new = ts[-1], stepper.t, stepper.y.copy()

            # detect crossings
            sol = None
            hits = list()
            for i, (func, sign) in enumerate(funcs):
                g_new = func(y_new)
                if armed[i] and ((sign > 0 and g_prevs[i] < 0.0 <= g_new) or (sign < 0 and g_prevs[i] > 0.0 >= g_new)):
                    sol = stepper.dense_output() if sol is None else sol
                    hits.append((self.locate(func, sol, t_prev, t_new, g_prevs[i]), i))
                if not armed[i] and abs(g_new) > tol:
                    armed[i] = True
                g_prevs[i] = g_new

            # record events
            stop = False
            for t_e, i in sorted(hits):
                y_e = sol(t_e)
                s_e = SatelliteState.from_array(y_e * to_si)
                records.append(EventRecord(
                    t=t_e * T,
                    kind=events[i].kind,
                    residual=self.get_residual(events[i].kind, s_e),
                    state=s_e
                ))
                self.updater.update_debug(
                    message="{} at t = {:.9g} s".format(events[i].kind.value, t_e * T)
                )
                if events[i].terminal:
                    if t_e > ts[-1]:
                        ts.append(t_e)
                        ys.append(y_e)
                    else:
                        ys[-1] = y_e
                    reason = TerminalReason(events[i].kind.value)
                    stop = True
                    break
            if stop:
                break

            # update samples
            ts.append(t_new)
            ys.append(y_new)

            # display progress
            if self.params['show_progress']:
                self.updater.update_progress(
                    pos=int(1000 * t_new / t_bound),
                    dim=1001,
                    status="-" * 18 + "Propagating (scipy.integrate." + self.params['ode_method'] + ")"
                )

        return self._get_trajectory(ts, ys, law, records, reason, direction, to_si, T)

    def _is_circular(self, x:StateVector):
        mu = self.system.constants.mu
        if specific_energy(x, mu) >= 0.0 or is_colinear(x):
            return False
        r_p, r_a = perigee_apogee(x, mu)
        return r_a - r_p <= self.params['event_tol']

    def _get_trajectory(self, ts, ys, law, records, reason, direction, to_si, T):
        # samples in SI units
        t = np.asarray(ts) * T
        y = np.asarray(ys) * to_si
        tau = np.array([law(t[i], y[i, :3], y[i, 3:6], y[i, 6]) for i in range(len(t))], dtype=np.float64).reshape(len(t), 3)

        return Trajectory(
            t=t,
            y=y,
            tau=tau,
            events=tuple(records),
            terminal_reason=reason,
            direction=direction
        )

def propagate(s0:SatelliteState, law:ControlLaw, t_max:float, events:list=[], direction:Direction=Direction.FORWARD, system:KeplerSystem=None, params:dict={}, bound:float=None, cb_update=None):
    """Function to propagate a state until the time cap or the first terminal event.

    Parameters
    ----------
    s0 : :class:`ckm.core.SatelliteState`
        Initial state.
    law : :class:`ckm.systems.controls.ControlLaw`
        Control law in SI units.
    t_max : float
        Time cap in s.
    events : list, optional
        Monitored events. Refer to :func:`ckm.solvers.differential.Propagator.propagate`.
    direction : :class:`ckm.systems.base.Direction`, optional
        Direction of the dynamics.
    system : :class:`ckm.systems.base.KeplerSystem`, optional
        Controlled two-body system. Default is the system with default parameters.
    params : dict, optional
        Parameters for the solver. Refer to **Notes** of :class:`ckm.solvers.differential.Propagator`.
    bound : float, optional
        Bound on the norm of the law.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.

    Returns
    -------
    trajectory : :class:`ckm.solvers.base.Trajectory`
        Sampled trajectory.
    """

    return Propagator(
        system=system if system is not None else KeplerSystem(),
        params=params,
        cb_update=cb_update
    ).propagate(
        s0=s0,
        law=law,
        t_max=t_max,
        events=events,
        direction=direction,
        bound=bound
    )

def rescale_control(u_law:ControlLaw, eps:float, m_i:float, tau_bound:float):
    """Function to obtain the thrust law ``tau(t) = u(t) m(t)`` equivalent to an acceleration law of the mass-normalized system.

    Parameters
    ----------
    u_law : :class:`ckm.systems.controls.ControlLaw`
        Acceleration law with norm bounded by ``eps``.
    eps : float
        Bound on the acceleration in m/s^2.
    m_i : float
        Initial mass in kg.
    tau_bound : float
        Bound on the thrust in N.

    Returns
    -------
    law : :class:`ckm.systems.controls.RescaledControl`
        Thrust law, evaluated with the mass of the propagated state.
    """

    if tau_bound < eps * m_i:
        raise BoundViolated("Thrust bound {:g} N is below eps m_i = {:g} N".format(tau_bound, eps * m_i))

    return RescaledControl(
        u_law=u_law,
        eps=eps
    )
