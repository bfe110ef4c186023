#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module for the command-line interface.

Each command reads a scenario file, prints its results and writes CSV or JSON-lines artifacts to the output directory. The output directory is taken from the environment variable ``CKM_OUTPUT_DIR``, the ``--output-dir`` flag or the ``output.directory`` key of the scenario, in that order of priority.
"""

__name__ = 'ckm.cli'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-24"
__updated__ = "2026-10-19"

# dependencies
from dataclasses import replace
import argparse
import logging
import os
import sys
import numpy as np

# ckm modules
from .core import SatelliteState, angular_momentum, classify, eccentricity, is_colinear, orbital_period, perigee_apogee, semi_major_axis, specific_energy
from .elements import coe_from_state, meoe_from_state
from .errors import CKMError, ScenarioError, SingularElements
from .io import FIGURE_KINDS, TRAJECTORY_COLUMNS, Updater, emit_figure_data
from .scenario import ScenarioFile
from .solvers.base import Event, EventKind
from .solvers.bisection import find_tau_max
from .solvers.controllability import PathMode, get_path_table, meoe_path, spiral_construct
from .solvers.differential import propagate
from .solvers.optimal import solve_ocp
from .systems.base import Direction, KeplerSystem
from .systems.controls import ConstantControl, SteeringControl, ZeroControl
from .ui import init_log
from .utils.solvers import run_sweep

# module logger
logger = logging.getLogger(__name__)

# set constants
COMMANDS = ['classify', 'propagate', 'elements', 'spiral', 'path', 'ocp', 'tau-max', 'sweep']
"""list : Available commands."""
EXIT_SUCCESS = 0
EXIT_INVALID = 2
EXIT_FAILURE = 3
ENV_OUTPUT_DIR = 'CKM_OUTPUT_DIR'

def get_parser():
    """Function to obtain the parser of the command-line arguments."""

    parser = argparse.ArgumentParser(
        prog='ckm',
        description='Controlled Keplerian motion and limiting thrusts of orbital insertion and de-orbit'
    )
    parser.add_argument(
        'command', choices=COMMANDS,
        help='Command to run'
    )
    parser.add_argument(
        'scenario',
        help='Path of the scenario YAML file'
    )
    parser.add_argument(
        '--output-dir', default=None,
        help='Output directory of the artifacts'
    )
    parser.add_argument(
        '--tau', type=float, default=None,
        help='Thrust bound in N for the ocp command'
    )
    parser.add_argument(
        '--figure', action='append', choices=list(FIGURE_KINDS.keys()), default=[],
        help='Kind of figure data to emit for the ocp and propagate commands'
    )
    parser.add_argument(
        '--parallel', action='store_true',
        help='Run the independent solves in parallel processes'
    )
    parser.add_argument(
        '--debug', action='store_true',
        help='Enable debug logging'
    )
    parser.add_argument(
        '--log-format', choices=['full', 'short', 'none'], default='short',
        help='Format of the console logs'
    )

    return parser

def main(argv:list=None):
    """Function to run the command-line interface.

    Parameters
    ----------
    argv : list, optional
        Command-line arguments. Default is the arguments of the process.

    Returns
    -------
    status : int
        Exit status.
    """

    args = get_parser().parse_args(argv)
    init_log(
        log_format=args.log_format,
        debug=args.debug
    )

    return run(
        command=args.command,
        scenario_path=args.scenario,
        flags={
            'output_dir': args.output_dir,
            'tau': args.tau,
            'figure': args.figure,
            'parallel': args.parallel
        }
    )

def run(command:str, scenario_path:str, flags:dict={}):
    """Function to run a command on a scenario file.

    Parameters
    ----------
    command : str
        Name of the command. Refer to :data:`ckm.cli.COMMANDS`.
    scenario_path : str
        Path of the scenario file.
    flags : dict, optional
        Flags of the command with the keys ``'output_dir'``, ``'tau'``, ``'figure'`` and ``'parallel'``.

    Returns
    -------
    status : int
        ``0`` on success, ``2`` for invalid inputs and ``3`` for failures of the solvers.
    """

    try:
        if command not in COMMANDS:
            raise ScenarioError("'{}' is not one of {}".format(command, COMMANDS), 'command')
        scenario = ScenarioFile.load(scenario_path)
        runner = CommandRunner(scenario, flags)
        getattr(runner, 'run_' + command.replace('-', '_'))()
    except (ScenarioError, AssertionError, OSError) as error:
        logger.error(str(error))
        print("error: {}".format(error), file=sys.stderr)
        return EXIT_INVALID
    except CKMError as error:
        logger.error("{}: {}".format(type(error).__name__, error))
        print("failure: {}: {}".format(type(error).__name__, error), file=sys.stderr)
        return EXIT_FAILURE

    return EXIT_SUCCESS

class CommandRunner():
    """Class to run the commands on a parsed scenario.

    Parameters
    ----------
    scenario : :class:`ckm.scenario.ScenarioFile`
        Parsed scenario.
    flags : dict
        Flags of the command. Refer to :func:`ckm.cli.run`.
    """

    def __init__(self, scenario:ScenarioFile, flags:dict):
        """Class constructor for CommandRunner."""

        self.scenario = scenario
        self.flags = flags
        self.updater = Updater(name='ckm.cli')

        # output directory
        self.output_dir = os.environ.get(ENV_OUTPUT_DIR) or flags.get('output_dir') or scenario.output.get('directory', '.')
        self.prefix = scenario.output.get('prefix', scenario.name)

    def get_file_path(self, suffix:str, ext:str='csv'):
        """Method to obtain the full path of an artifact."""

        return os.path.join(self.output_dir, '{}_{}.{}'.format(self.prefix, suffix, ext))

    def save_trajectory(self, trajectory, suffix:str):
        """Method to save a trajectory and its requested figure data."""

        file_path = self.get_file_path(suffix)
        self.updater.save_csv(
            file_path=file_path,
            array=trajectory.to_array(mu=self.scenario.constants.mu),
            columns=TRAJECTORY_COLUMNS
        )
        print("trajectory: {}".format(file_path))

        for kind in self.flags.get('figure', []):
            _file_path = self.get_file_path(suffix + '_' + kind)
            emit_figure_data(
                trajectory=trajectory,
                kind=kind,
                file_path=_file_path,
                r_c=self.scenario.constants.r_c,
                mu=self.scenario.constants.mu
            )
            print("figure data: {}".format(_file_path))

    def run_classify(self):
        """Method to print the region and the orbit of the state."""

        # extract frequently used variables
        x = self.scenario.state
        constants = self.scenario.constants
        mu = constants.mu

        region = classify(x, constants)
        E = specific_energy(x, mu)
        print("region: {}".format(region.value))
        print("E: {:.12g} m^2/s^2".format(E))
        print("e: {:.12g}".format(eccentricity(x, mu)))
        if E < 0.0 and not is_colinear(x):
            r_p, r_a = perigee_apogee(x, mu)
            print("a: {:.12g} m".format(semi_major_axis(x, mu)))
            print("r_p: {:.12g} m".format(r_p))
            print("r_a: {:.12g} m".format(r_a))
            print("r_c: {:.12g} m".format(constants.r_c))
            print("t_p: {:.12g} s".format(orbital_period(x, mu)))

        # same-orbit check
        x_ref = self.scenario.reference_state
        if x_ref is not None:
            dE = abs(E - specific_energy(x_ref, mu)) / abs(specific_energy(x_ref, mu))
            dh = abs(np.linalg.norm(angular_momentum(x)) - np.linalg.norm(angular_momentum(x_ref))) / np.linalg.norm(angular_momentum(x_ref))
            de = abs(eccentricity(x, mu) - eccentricity(x_ref, mu))
            logger.info("Relative differences to the reference orbit: E {:.3e}, |h| {:.3e}, e {:.3e} (absolute)".format(dE, dh, de))
            if max(dE, dh) > 1e-3:
                logger.warning("State is not on the orbit of the reference state")
            print("reference: dE {:.3e} dh {:.3e} de {:.3e}".format(dE, dh, de))

    def run_elements(self):
        """Method to print the classical and the modified equinoctial elements of the state."""

        x = self.scenario.state
        mu = self.scenario.constants.mu
        record = dict()

        try:
            coe = coe_from_state(x, mu)
            record['coe'] = {key: float(getattr(coe, key)) for key in ['a', 'e', 'i', 'omega', 'Omega', 'theta']}
            print("coe: " + ", ".join("{} = {:.12g}".format(key, value) for key, value in record['coe'].items()))
        except SingularElements as error:
            logger.warning("Classical elements are undefined: {}".format(error))
            print("coe: singular")
        meoe = meoe_from_state(x, mu)
        record['meoe'] = {key: float(getattr(meoe, key)) for key in ['P', 'ex', 'ey', 'hx', 'hy', 'l']}
        print("meoe: " + ", ".join("{} = {:.12g}".format(key, value) for key, value in record['meoe'].items()))

        file_path = self.get_file_path('elements', 'jsonl')
        self.updater.save_records(file_path, [record])
        print("elements: {}".format(file_path))

    def run_propagate(self):
        """Method to propagate the state with the control of the scenario."""

        # extract frequently used variables
        scenario = self.scenario
        block = scenario.propagation
        x = scenario.state
        engine = scenario.engine

        # time cap
        if 'duration' in block:
            t_max = block['duration']
        else:
            t_max = block.get('periods', 1.0) * orbital_period(x, scenario.constants.mu)

        # control law
        if block['control'] == 'constant':
            law = ConstantControl(block['thrust'])
            magnitude = float(np.linalg.norm(block['thrust']))
        elif block['control'] == 'tangential':
            magnitude = block['thrust']
            law = SteeringControl(lambda t, r, v, m: magnitude * v / np.linalg.norm(v))
        else:
            law = ZeroControl()
            magnitude = 0.0
        engine = replace(engine, tau_bound=max(engine.tau_bound, magnitude))

        events = [Event(EventKind(kind)) for kind in block['events']] + [Event(EventKind(kind), terminal=False) for kind in block['nonterminal_events']]
        trajectory = propagate(
            s0=SatelliteState(x=x, m=scenario.initial_mass if scenario.initial_mass is not None else 1.0),
            law=law,
            t_max=t_max,
            events=events,
            direction=Direction(block['direction']),
            system=KeplerSystem.from_parts(scenario.constants, engine),
            params={key: block[key] for key in ['ode_method', 'ode_rtol'] if key in block}
        )

        print("terminal reason: {}".format(trajectory.terminal_reason.value))
        print("t_f: {:.12g} s".format(trajectory.t_f))
        for record in trajectory.events:
            print("event: {} at t = {:.12g} s, residual {:.6g}".format(record.kind.value, record.t, record.residual))
        self.save_trajectory(trajectory, 'propagate')

    def run_spiral(self):
        """Method to construct the spiral from the state."""

        scenario = self.scenario
        result = spiral_construct(
            x_i=scenario.state,
            m_i=scenario.require('initial_mass'),
            engine=scenario.engine,
            constants=scenario.constants,
            **scenario.spiral
        )

        print("duration: {:.12g} s".format(result.duration))
        print("tau_bar: {:.12g} N".format(result.tau_bar))
        print("C0: {:.12g}".format(result.C0))
        print("C1: {:.12g}".format(result.C1))
        print("final mass: {:.12g} kg".format(result.mass[-1]))
        self.save_trajectory(result.to_trajectory(), 'spiral')

    def run_path(self):
        """Method to sample the path between the initial and the terminal states."""

        scenario = self.scenario
        states = meoe_path(
            x_i=scenario.state,
            x_f=scenario.require('terminal_state'),
            mode=PathMode(scenario.path['mode']),
            n=scenario.path['samples'],
            constants=scenario.constants
        )

        file_path = self.get_file_path('path')
        self.updater.save_csv(
            file_path=file_path,
            array=get_path_table(states, scenario.constants.mu),
            columns=['lambda'] + TRAJECTORY_COLUMNS[1:]
        )
        print("samples: {}".format(len(states)))
        print("path: {}".format(file_path))

    def get_solver_params(self):
        """Method to obtain the parameters of the optimal control solver."""

        return dict(self.scenario.solver, parallel=bool(self.flags.get('parallel', False)))

    def run_ocp(self):
        """Method to solve the optimal control problem at a single thrust."""

        tau = self.flags.get('tau')
        if tau is None:
            tau = self.scenario.require('thrust')
        if not tau > 0.0:
            raise ScenarioError("should be positive", 'thrust')
        sc = self.scenario.get_ocp_scenario()
        solution = solve_ocp(sc, tau, self.get_solver_params())

        record = solution.summary_record(sc.scenario_hash)
        for key in ['kind', 'tau', 't_f', 'terminal_rp', 's', 'converged', 'm_f']:
            print("{}: {}".format(key, record[key]))
        if not solution.converged:
            logger.warning("Optimizer did not converge at tau = {} N".format(tau))

        file_path = self.get_file_path('ocp', 'jsonl')
        self.updater.save_records(file_path, [record])
        print("summary: {}".format(file_path))
        self.save_trajectory(solution.physical_trajectory, 'ocp')

    def run_tau_max(self):
        """Method to find the limiting thrust by bisection."""

        block = dict(self.scenario.bisection)
        tau_lo = block.pop('tau_lo', 1.0)
        tau_hi = block.pop('tau_hi', 50.0)
        reference = block.pop('reference_thrust', None)
        if not tau_lo < tau_hi:
            raise ScenarioError("should be lower than 'tau_hi'", 'bisection.tau_lo')
        sc = self.scenario.get_ocp_scenario()
        report = find_tau_max(
            sc=sc,
            tau_lo=tau_lo,
            tau_hi=tau_hi,
            tol=block.pop('tol', 0.005),
            params=dict(block, speculative=bool(self.flags.get('parallel', False))),
            solver_params=self.scenario.solver
        )

        for line in report.get_table():
            print(line)
        print("tau_max: {:.6f} N".format(report.tau_max))
        print("tau_interpolated: {:.6f} N".format(report.tau_interpolated))
        print("tolerance: {:.6g} N".format(report.tolerance))
        print("evaluations: {}".format(report.evaluations))
        if report.anomalies:
            print("anomalies: {}".format(len(report.anomalies)))
        if reference is not None:
            print("reference thrust: {:.6f} N ({} tau_max)".format(reference, 'above' if reference > report.tau_max else 'not above'))

        file_path = self.get_file_path('tau_max', 'jsonl')
        self.updater.save_records(file_path, report.to_records(sc.scenario_hash))
        print("report: {}".format(file_path))

    def run_sweep(self):
        """Method to sweep the shooting function over the thrust axis."""

        block = self.scenario.sweep
        for key in ['tau_min', 'tau_max']:
            if key not in block:
                raise ScenarioError("missing key '{}'".format(key), 'sweep.' + key)
        looper = run_sweep(
            sc=self.scenario.get_ocp_scenario(),
            params={
                'file_path_prefix': os.path.join(self.output_dir, self.prefix + '_sweep'),
                'value_name': 's',
                'threshold_mode': 'zero',
                'X': {
                    'var': 'tau',
                    'min': block['tau_min'],
                    'max': block['tau_max'],
                    'dim': block.get('dim', 11),
                    'scale': block['scale']
                }
            },
            solver_params=self.scenario.solver,
            parallel=bool(self.flags.get('parallel', False))
        )

        for tau, s in zip(looper.results['X'], looper.results['V']):
            print("{:>16.6f} {:>16.3f}".format(tau, s))
        print("first sign change: {:.6f} N".format(looper.get_thresholds()['X']))
        print("sweep: {}".format(looper.get_full_file_path()))
