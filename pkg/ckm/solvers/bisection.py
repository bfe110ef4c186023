#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module to find the limiting thrust by bisection on the shooting function."""

__name__ = 'ckm.solvers.bisection'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-15"
__updated__ = "2026-10-18"

# dependencies
from dataclasses import asdict, dataclass, field
import numpy as np

# ckm modules
from ..errors import BracketFailure, CKMError, InnerSolverFailure
from ..io import Updater
from .base import run_in_processes
from .optimal import OCPSolver, OcpScenario

@dataclass(frozen=True)
class BracketRecord:
    """Bracket of the limiting thrust.

    Parameters
    ----------
    lo : float
        Lower thrust in N.
    hi : float
        Upper thrust in N.
    s_lo : float
        Shooting function at the lower thrust in m.
    s_hi : float
        Shooting function at the upper thrust in m.
    """

    lo: float
    hi: float
    s_lo: float
    s_hi: float

@dataclass(frozen=True, eq=False)
class BisectionReport:
    """Report of the bisection.

    Parameters
    ----------
    tau_max : float
        Midpoint of the final bracket in N.
    tau_interpolated : float
        Root of the secant through the final bracket in N.
    history : list
        Brackets as :class:`ckm.solvers.bisection.BracketRecord`.
    evaluations : int
        Number of evaluations of the shooting function.
    tolerance : float
        Width of the final bracket in N.
    anomalies : list
        Sampled thrusts and shooting values violating the sign ordering.
    converged : bool
        Whether the final bracket is narrower than the requested tolerance.
    """

    tau_max: float
    tau_interpolated: float
    history: list
    evaluations: int
    tolerance: float
    anomalies: list = field(default_factory=list)
    converged: bool = True

    def to_records(self, scenario_hash:str=None):
        """Method to obtain the bracket history and the summary as flat records.

        Parameters
        ----------
        scenario_hash : str, optional
            Digest of the scenario.

        Returns
        -------
        records : list
            Records of each bracket followed by the summary record.
        """

        records = [dict(record='bracket', iteration=i, **asdict(bracket)) for i, bracket in enumerate(self.history)]
        records.append({
            'record': 'summary',
            'scenario_hash': scenario_hash,
            'tau_max': self.tau_max,
            'tau_interpolated': self.tau_interpolated,
            'evaluations': self.evaluations,
            'tolerance': self.tolerance,
            'converged': self.converged,
            'anomalies': self.anomalies
        })

        return records

    def get_table(self):
        """Method to obtain the convergence table of the bracket history as lines of text."""

        lines = ["{:>4s} {:>16s} {:>16s} {:>16s} {:>16s}".format('it', 'lo (N)', 'hi (N)', 's_lo (m)', 's_hi (m)')]
        for i, bracket in enumerate(self.history):
            lines.append("{:>4d} {:>16.6f} {:>16.6f} {:>16.3f} {:>16.3f}".format(i, bracket.lo, bracket.hi, bracket.s_lo, bracket.s_hi))

        return lines

class TauMaxSolver():
    """Class to find the limiting thrust by bisection on a shooting function.

    Initializes ``func``, ``func_batch``, ``params`` and ``updater``.

    Parameters
    ----------
    func : callable
        Shooting function formatted as ``func(tau, warm)``, returning the value in m and the solution of the inner solve. The solution is used to warm-start the nearby solves through its ``profile`` attribute.
    params : dict, optional
        Parameters for the solver. Refer to **Notes** below for all available options.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.
    func_batch : callable, optional
        Batched shooting function formatted as ``func_batch(taus, warms)``, returning a list of values and solutions. Required for the speculative mode.

    Notes
    -----
        The ``params`` dictionary currently supports the following keys:
            ====================    ====================================================
            key                     value
            ====================    ====================================================
            'show_progress'         (*bool*) option to display the progress of the solver. Default is ``False``.
            'tol'                   (*float*) width of the final bracket in N. Default is ``0.005``.
            'max_expansions'        (*int*) maximum number of geometric expansions of the bracket. Default is ``10``.
            'max_iterations'        (*int*) maximum number of bisections. Default is ``60``.
            'warm_start'            (*bool*) option to start each solve from the nearest solved thrust. Default is ``True``.
            'speculative'           (*bool*) option to evaluate the midpoint and both quarter points together and narrow the bracket to a quarter. Default is ``False``.
            ====================    ====================================================
    """

    # attributes
    name = 'TauMaxSolver'
    """str : Name of the solver."""
    desc = "Limiting Thrust Bisection Solver"
    """str : Description of the solver."""
    solver_defaults = {
        'show_progress': False,
        'tol': 0.005,
        'max_expansions': 10,
        'max_iterations': 60,
        'warm_start': True,
        'speculative': False
    }
    """dict : Default parameters of the solver."""

    def __init__(self, func, params:dict={}, cb_update=None, func_batch=None):
        """Class constructor for TauMaxSolver."""

        # set constants
        self.func = func
        self.func_batch = func_batch

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
        assert params.get('tol', self.solver_defaults['tol']) > 0.0, "Parameter ``'tol'`` should be positive"
        assert params.get('max_expansions', self.solver_defaults['max_expansions']) >= 0, "Parameter ``'max_expansions'`` should be non-negative"
        assert not params.get('speculative', False) or self.func_batch is not None, "Parameter ``'speculative'`` requires a batched shooting function"

        # set solver parameters
        self.params = dict()
        for key in self.solver_defaults:
            self.params[key] = params.get(key, self.solver_defaults[key])

    def get_warm(self, tau:float):
        """Method to obtain the profile of the solved thrust nearest to a thrust."""

        if not self.params['warm_start']:
            return None
        solved = [key for key in self.evals if getattr(self.evals[key][1], 'profile', None) is not None]
        if not solved:
            return None

        return self.evals[min(solved, key=lambda key: (abs(key - tau), key))][1].profile

    def evaluate(self, taus:list):
        """Method to evaluate the shooting function at thrusts not yet evaluated.

        Parameters
        ----------
        taus : list
            Thrusts in N.

        Returns
        -------
        values : list
            Values of the shooting function in m.
        """

        pending = [tau for tau in dict.fromkeys(taus) if tau not in self.evals]
        warms = [self.get_warm(tau) for tau in pending]
        current = float('nan')
        try:
            if len(pending) > 1 and self.func_batch is not None:
                results = self.func_batch(pending, warms)
            else:
                results = list()
                for tau, warm in zip(pending, warms):
                    current = tau
                    results.append(self.func(tau, warm))
        except InnerSolverFailure:
            raise
        except CKMError as error:
            raise InnerSolverFailure("Inner solver failed: {}".format(error), getattr(error, 'tau', current)) from error

        for tau, (s, solution) in zip(pending, results):
            self.evals[tau] = (float(s), solution)
            self.updater.update_debug(
                message="s({:.9g} N) = {:.6f} m".format(tau, s)
            )

        return [self.evals[tau][0] for tau in taus]

    def check_order(self, taus:list):
        """Method to check that the shooting function is non-decreasing on sampled thrusts.

        Parameters
        ----------
        taus : list
            Evaluated thrusts in N.
        """

        taus = sorted(taus)
        values = [self.evals[tau][0] for tau in taus]
        if any(values[i + 1] < values[i] for i in range(len(values) - 1)):
            self.anomalies.append({
                'taus': [float(tau) for tau in taus],
                's': values
            })
            self.updater.update_warning(
                message="Shooting function is not non-decreasing on {}: {}".format(taus, values)
            )

    def solve(self, tau_lo:float, tau_hi:float):
        """Method to find the limiting thrust from an initial bracket.

        Parameters
        ----------
        tau_lo : float
            Lower thrust in N.
        tau_hi : float
            Upper thrust in N.

        Returns
        -------
        report : :class:`ckm.solvers.bisection.BisectionReport`
            Report of the bisection.
        """

        # validate parameters
        assert 0.0 < tau_lo < tau_hi, "Parameters ``tau_lo`` and ``tau_hi`` should satisfy ``0 < tau_lo < tau_hi``"

        # extract frequently used variables
        tol = self.params['tol']
        self.evals = dict()
        self.anomalies = list()
        history = list()

        # expand bracket
        lo, hi = float(tau_lo), float(tau_hi)
        s_lo, s_hi = self.evaluate([lo, hi])
        history.append(BracketRecord(lo, hi, s_lo, s_hi))
        expansions = 0
        while not s_lo <= 0.0 <= s_hi:
            if expansions >= self.params['max_expansions']:
                raise BracketFailure("No sign change of the shooting function in [{:g}, {:g}] N after {} expansions".format(lo, hi, expansions), history)
            if s_lo > 0.0 and s_hi < 0.0:
                self.check_order([lo, hi])
                lo, hi = lo / 2.0, hi * 2.0
            elif s_lo > 0.0:
                lo, hi = lo / 2.0, lo
            else:
                lo, hi = hi, hi * 2.0
            s_lo, s_hi = self.evaluate([lo, hi])
            expansions += 1
            history.append(BracketRecord(lo, hi, s_lo, s_hi))
            self.updater.update_debug(
                message="Bracket expanded to [{:.9g}, {:.9g}] N".format(lo, hi)
            )

        # bisect
        iterations = 0
        width = hi - lo
        while hi - lo > tol and iterations < self.params['max_iterations']:
            # display progress
            if self.params['show_progress']:
                self.updater.update_progress(
                    pos=int(np.log2(width / (hi - lo))),
                    dim=int(np.ceil(np.log2(width / tol))) + 1,
                    status="-" * 26 + "Bisecting"
                )

            mid = 0.5 * (lo + hi)
            if self.params['speculative']:
                q_1, q_3 = 0.5 * (lo + mid), 0.5 * (mid + hi)
                s_1, s_mid, s_3 = self.evaluate([q_1, mid, q_3])
                self.check_order([lo, q_1, mid, q_3, hi])
                if s_mid <= 0.0:
                    lo, hi, s_lo, s_hi = (q_3, hi, s_3, s_hi) if s_3 <= 0.0 else (mid, q_3, s_mid, s_3)
                else:
                    lo, hi, s_lo, s_hi = (q_1, mid, s_1, s_mid) if s_1 <= 0.0 else (lo, q_1, s_lo, s_1)
            else:
                s_mid = self.evaluate([mid])[0]
                self.check_order([lo, mid, hi])
                if s_mid <= 0.0:
                    lo, s_lo = mid, s_mid
                else:
                    hi, s_hi = mid, s_mid
            iterations += 1
            history.append(BracketRecord(lo, hi, s_lo, s_hi))

        converged = hi - lo <= tol
        if not converged:
            self.updater.update_warning(
                message="Bracket width {:g} N above the tolerance after {} bisections".format(hi - lo, iterations)
            )

        # roots
        tau_max = 0.5 * (lo + hi)
        tau_interpolated = lo - s_lo * (hi - lo) / (s_hi - s_lo) if s_hi != s_lo else tau_max

        # update log
        self.updater.update_info(
            status="-" * 21 + "tau_max = {:.6f} N after {} evaluations".format(tau_max, len(self.evals))
        )

        return BisectionReport(
            tau_max=tau_max,
            tau_interpolated=tau_interpolated,
            history=history,
            evaluations=len(self.evals),
            tolerance=hi - lo,
            anomalies=self.anomalies,
            converged=converged
        )

def _solve_payload(payload):
    scenario, params, tau, warm = payload
    solution = OCPSolver(scenario, params).solve(tau, warm)
    return solution.s, solution

def find_tau_max(sc:OcpScenario, tau_lo:float, tau_hi:float, tol:float=0.005, params:dict={}, solver_params:dict={}, cb_update=None):
    """Function to find the limiting thrust of a scenario.

    Parameters
    ----------
    sc : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    tau_lo : float
        Lower thrust of the initial bracket in N.
    tau_hi : float
        Upper thrust of the initial bracket in N.
    tol : float, default=0.005
        Width of the final bracket in N.
    params : dict, optional
        Parameters of the :class:`ckm.solvers.bisection.TauMaxSolver`.
    solver_params : dict, optional
        Parameters of the :class:`ckm.solvers.optimal.OCPSolver`.
    cb_update : callable, optional
        Callback function to update status and progress.

    Returns
    -------
    report : :class:`ckm.solvers.bisection.BisectionReport`
        Report of the bisection.
    """

    solver = OCPSolver(sc, solver_params, cb_update)

    def func(tau, warm):
        solution = solver.solve(tau, warm)
        return solution.s, solution

    def func_batch(taus, warms):
        return run_in_processes(_solve_payload, [(sc, solver_params, tau, warm) for tau, warm in zip(taus, warms)])

    return TauMaxSolver(
        func=func,
        params=dict(params, tol=tol),
        cb_update=cb_update,
        func_batch=func_batch if params.get('speculative', False) else None
    ).solve(tau_lo, tau_hi)
