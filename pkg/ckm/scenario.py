#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module to parse scenario files.

Scenario files are YAML documents. Every dimensional value is a string with a mandatory unit suffix, for example ``'110 km'``, ``'7879.5 m/s'``, ``'5 deg'`` or ``'[6484, 0, 0] km'`` for vectors. Unknown keys are rejected and every error names the offending field.
"""

__name__ = 'ckm.scenario'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-22"
__updated__ = "2026-10-18"

# dependencies
from dataclasses import dataclass, field
import os
import re
import numpy as np
import yaml

# ckm modules
from .core import EngineParameters, PhysicalConstants, StateVector, state_from_scalars
from .elements import Coe, Meoe, state_from_coe, state_from_meoe
from .errors import CKMError, ScenarioError
from .solvers.optimal import OCPSolver, OcpKind, OcpScenario

# set constants
UNITS = {
    'm': ('length', 1.0),
    'km': ('length', 1e3),
    'm/s': ('speed', 1.0),
    'km/s': ('speed', 1e3),
    'deg': ('angle', np.pi / 180.0),
    'rad': ('angle', 1.0),
    's': ('time', 1.0),
    'min': ('time', 60.0),
    'kg': ('mass', 1.0),
    'N': ('force', 1.0),
    'kN': ('force', 1e3),
    'm3/s2': ('gravitational_parameter', 1.0),
    'km3/s2': ('gravitational_parameter', 1e9),
    'm/s2': ('acceleration', 1.0)
}
"""dict : Accepted unit suffixes with their dimensions and factors to SI units."""
PROBLEMS = ['OIP', 'DOP', 'propagate', 'spiral', 'path']
"""list : Kinds of problems of a scenario."""
_PATTERN = re.compile(r'^\s*(\[[^\]]*\]|[^\s\[\]]+)\s+([A-Za-z0-9/]+)\s*$')

def parse_quantity(value, dimension:str, field:str):
    """Function to parse a scalar quantity with a unit suffix into SI units.

    Parameters
    ----------
    value : str
        Quantity formatted as ``'<number> <unit>'``.
    dimension : str
        Expected dimension of the unit. Refer to :data:`ckm.scenario.UNITS`.
    field : str
        Dotted name of the field.

    Returns
    -------
    value : float
        Value in SI units.
    """

    number, factor = _split(value, dimension, field)
    try:
        return float(number) * factor
    except ValueError:
        raise ScenarioError("'{}' is not a number".format(number), field) from None

def parse_vector(value, dimension:str, field:str):
    """Function to parse a 3-vector quantity formatted as ``'[x, y, z] <unit>'`` into SI units."""

    number, factor = _split(value, dimension, field)
    if not (number.startswith('[') and number.endswith(']')):
        raise ScenarioError("'{}' is not a vector".format(value), field)
    try:
        vector = np.array([float(item) for item in number[1:-1].split(',')], dtype=np.float64)
    except ValueError:
        raise ScenarioError("'{}' contains a non-number".format(number), field) from None
    if vector.shape != (3, ):
        raise ScenarioError("vector should contain 3 components", field)

    return vector * factor

def _split(value, dimension, field):
    if not isinstance(value, str):
        raise ScenarioError("'{}' should be a string with a unit suffix".format(value), field)
    match = _PATTERN.match(value)
    if match is None:
        raise ScenarioError("'{}' should be formatted as '<value> <unit>'".format(value), field)
    number, unit = match.groups()
    if unit not in UNITS:
        raise ScenarioError("unit '{}' is not one of {}".format(unit, list(UNITS.keys())), field)
    if UNITS[unit][0] != dimension:
        raise ScenarioError("unit '{}' is not a unit of {}".format(unit, dimension), field)

    return number, UNITS[unit][1]

def parse_number(value, field:str, integer:bool=False):
    """Function to parse a dimensionless number."""

    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError("'{}' is not a number".format(value), field)
    if integer and int(value) != value:
        raise ScenarioError("'{}' is not an integer".format(value), field)

    return int(value) if integer else float(value)

def parse_bool(value, field:str):
    """Function to parse a boolean."""

    if not isinstance(value, bool):
        raise ScenarioError("'{}' is not a boolean".format(value), field)

    return value

def _get_block(data, keys, field, required=()):
    # validate mapping
    if data is None:
        data = dict()
    if not isinstance(data, dict):
        raise ScenarioError("should be a mapping", field)
    for key in data:
        if key not in keys:
            raise ScenarioError("unknown key '{}'".format(key), _join(field, key))
    for key in required:
        if key not in data:
            raise ScenarioError("missing key '{}'".format(key), _join(field, key))

    return data

def _join(field, key):
    return key if field == '' else field + '.' + str(key)

def parse_state(data, field:str, constants:PhysicalConstants):
    """Function to parse a state in one of the forms ``cartesian``, ``coe``, ``meoe`` or ``scalars``.

    Parameters
    ----------
    data : dict
        Mapping with exactly one form.
    field : str
        Dotted name of the field.
    constants : :class:`ckm.core.PhysicalConstants`
        Physical constants.

    Returns
    -------
    x : :class:`ckm.core.StateVector`
        Cartesian state.
    """

    data = _get_block(data, ['cartesian', 'coe', 'meoe', 'scalars'], field)
    if len(data) != 1:
        raise ScenarioError("should contain exactly one of 'cartesian', 'coe', 'meoe' or 'scalars'", field)
    form, values = next(iter(data.items()))
    _field = _join(field, form)

    try:
        # cartesian
        if form == 'cartesian':
            values = _get_block(values, ['r', 'v'], _field, ['r', 'v'])
            return StateVector(
                r=parse_vector(values['r'], 'length', _join(_field, 'r')),
                v=parse_vector(values['v'], 'speed', _join(_field, 'v'))
            )

        # classical elements
        if form == 'coe':
            keys = ['a', 'e', 'i', 'omega', 'Omega', 'theta']
            values = _get_block(values, keys, _field, keys)
            return state_from_coe(Coe(
                a=parse_quantity(values['a'], 'length', _join(_field, 'a')),
                e=parse_number(values['e'], _join(_field, 'e')),
                **{key: parse_quantity(values[key], 'angle', _join(_field, key)) for key in keys[2:]}
            ), constants.mu)

        # modified equinoctial elements
        if form == 'meoe':
            keys = ['P', 'ex', 'ey', 'hx', 'hy', 'l']
            values = _get_block(values, keys, _field, keys)
            return state_from_meoe(Meoe(
                P=parse_quantity(values['P'], 'length', _join(_field, 'P')),
                l=parse_quantity(values['l'], 'angle', _join(_field, 'l')),
                **{key: parse_number(values[key], _join(_field, key)) for key in keys[1:5]}
            ), constants.mu)

        # scalars
        values = _get_block(values, ['radius', 'altitude', 'speed', 'flight_path_angle', 'plane'], _field, ['speed', 'flight_path_angle'])
        if ('radius' in values) == ('altitude' in values):
            raise ScenarioError("should contain exactly one of 'radius' or 'altitude'", _field)
        if 'radius' in values:
            rnorm = parse_quantity(values['radius'], 'length', _join(_field, 'radius'))
        else:
            rnorm = constants.r_e + parse_quantity(values['altitude'], 'length', _join(_field, 'altitude'))
        plane_basis = None
        if 'plane' in values:
            plane = _get_block(values['plane'], ['b1', 'b2'], _join(_field, 'plane'), ['b1', 'b2'])
            plane_basis = tuple([parse_number(item, _join(_field, 'plane.' + key)) for item in plane[key]] for key in ['b1', 'b2'])
        return state_from_scalars(
            rnorm=rnorm,
            vnorm=parse_quantity(values['speed'], 'speed', _join(_field, 'speed')),
            eta=parse_quantity(values['flight_path_angle'], 'angle', _join(_field, 'flight_path_angle')),
            plane_basis=plane_basis
        )
    except ScenarioError:
        raise
    except (CKMError, ValueError, TypeError) as error:
        raise ScenarioError(str(error), _field) from error

@dataclass(frozen=True, eq=False)
class ScenarioFile:
    """Parsed scenario file.

    Parameters
    ----------
    name : str
        Name of the scenario.
    problem : str
        Kind of the problem. Options are ``'OIP'``, ``'DOP'``, ``'propagate'``, ``'spiral'`` and ``'path'``.
    constants : :class:`ckm.core.PhysicalConstants`
        Physical constants.
    engine : :class:`ckm.core.EngineParameters`
        Parameters of the engine.
    initial_mass : float
        Initial mass in kg.
    state : :class:`ckm.core.StateVector`
        Initial state, or the state at the entry interface for the DOP.
    terminal_state : :class:`ckm.core.StateVector`
        Final state of the paths.
    reference_state : :class:`ckm.core.StateVector`
        State of the consistency check of the classification.
    thrust : float
        Thrust bound in N of a single optimal control solve.
    propagation : dict
        Settings of the propagation.
    solver : dict
        Parameters of the :class:`ckm.solvers.optimal.OCPSolver`.
    bisection : dict
        Settings of the bisection.
    sweep : dict
        Settings of the thrust sweep.
    spiral : dict
        Settings of the spiral.
    path : dict
        Settings of the path.
    output : dict
        Output ``'directory'`` and file ``'prefix'``.
    source : str
        Path of the file.
    """

    name: str
    problem: str
    constants: PhysicalConstants
    engine: EngineParameters
    initial_mass: float = None
    state: StateVector = None
    terminal_state: StateVector = None
    reference_state: StateVector = None
    thrust: float = None
    propagation: dict = field(default_factory=dict)
    solver: dict = field(default_factory=dict)
    bisection: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    spiral: dict = field(default_factory=dict)
    path: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    source: str = None

    @classmethod
    def load(cls, file_path:str):
        """Method to load a scenario file.

        Parameters
        ----------
        file_path : str
            Path of the YAML file.

        Returns
        -------
        scenario : :class:`ckm.scenario.ScenarioFile`
            Parsed scenario.
        """

        try:
            with open(file_path, 'r') as file:
                data = yaml.safe_load(file)
        except yaml.YAMLError as error:
            raise ScenarioError("invalid YAML: {}".format(error), os.path.basename(file_path)) from error

        return cls.from_dict(data, source=file_path)

    @classmethod
    def from_dict(cls, data:dict, source:str=None):
        """Method to parse the tree of a scenario file.

        Parameters
        ----------
        data : dict
            Tree of the scenario file.
        source : str, optional
            Path of the file.

        Returns
        -------
        scenario : :class:`ckm.scenario.ScenarioFile`
            Parsed scenario.
        """

        data = _get_block(data, ['name', 'problem', 'constants', 'engine', 'initial_mass', 'state', 'terminal_state', 'reference_state', 'thrust', 'propagation', 'solver', 'bisection', 'sweep', 'spiral', 'path', 'output'], '', ['problem', 'state'])

        # problem
        problem = data['problem']
        if problem not in PROBLEMS:
            raise ScenarioError("'{}' is not one of {}".format(problem, PROBLEMS), 'problem')

        # constants
        _constants = _get_block(data.get('constants'), ['mu', 'r_e', 'atmosphere_depth', 'g0'], 'constants')
        defaults = PhysicalConstants()
        r_e = parse_quantity(_constants['r_e'], 'length', 'constants.r_e') if 'r_e' in _constants else defaults.r_e
        depth = parse_quantity(_constants['atmosphere_depth'], 'length', 'constants.atmosphere_depth') if 'atmosphere_depth' in _constants else defaults.r_c - defaults.r_e
        g0 = parse_quantity(_constants['g0'], 'acceleration', 'constants.g0') if 'g0' in _constants else defaults.g0
        try:
            constants = PhysicalConstants(
                mu=parse_quantity(_constants['mu'], 'gravitational_parameter', 'constants.mu') if 'mu' in _constants else defaults.mu,
                r_e=r_e,
                r_c=r_e + depth,
                g0=g0
            )
        except ValueError as error:
            raise ScenarioError(str(error), 'constants') from error

        # engine
        _engine = _get_block(data.get('engine'), ['isp', 'm_dry', 'tau_bound'], 'engine')
        try:
            engine = EngineParameters(
                isp=parse_quantity(_engine['isp'], 'time', 'engine.isp') if 'isp' in _engine else EngineParameters.isp,
                g0=g0,
                tau_bound=parse_quantity(_engine['tau_bound'], 'force', 'engine.tau_bound') if 'tau_bound' in _engine else 0.0,
                m_dry=parse_quantity(_engine['m_dry'], 'mass', 'engine.m_dry') if 'm_dry' in _engine else EngineParameters.m_dry
            )
        except ValueError as error:
            raise ScenarioError(str(error), 'engine') from error

        # masses and states
        initial_mass = parse_quantity(data['initial_mass'], 'mass', 'initial_mass') if 'initial_mass' in data else None
        if initial_mass is not None and not initial_mass > 0.0:
            raise ScenarioError("should be positive", 'initial_mass')
        states = {key: parse_state(data[key], key, constants) if key in data else None for key in ['state', 'terminal_state', 'reference_state']}
        thrust = parse_quantity(data['thrust'], 'force', 'thrust') if 'thrust' in data else None

        return cls(
            name=str(data.get('name', os.path.splitext(os.path.basename(source))[0] if source is not None else 'scenario')),
            problem=problem,
            constants=constants,
            engine=engine,
            initial_mass=initial_mass,
            thrust=thrust,
            propagation=_parse_propagation(data.get('propagation')),
            solver=_parse_solver(data.get('solver')),
            bisection=_parse_bisection(data.get('bisection')),
            sweep=_parse_sweep(data.get('sweep')),
            spiral=_parse_spiral(data.get('spiral')),
            path=_parse_path(data.get('path')),
            output=_parse_output(data.get('output')),
            source=source,
            **states
        )

    def require(self, key:str):
        """Method to obtain a field required by a command."""

        value = getattr(self, key)
        if value is None:
            raise ScenarioError("missing key '{}' for problem '{}'".format(key, self.problem), key)

        return value

    def get_ocp_scenario(self):
        """Method to obtain the optimal control scenario.

        Returns
        -------
        scenario : :class:`ckm.solvers.optimal.OcpScenario`
            Scenario anchored at the initial state for the OIP and at the reversed entry state for the DOP.
        """

        if self.problem not in ['OIP', 'DOP']:
            raise ScenarioError("optimal control requires problem 'OIP' or 'DOP'", 'problem')
        if self.problem == 'DOP':
            return OcpScenario.from_entry_interface(
                x_ei=self.state,
                m_i=self.require('initial_mass'),
                engine=self.engine,
                constants=self.constants,
                name=self.name
            )

        return OcpScenario(
            kind=OcpKind.OIP,
            anchor_state=self.state,
            anchor_mass=self.require('initial_mass'),
            engine=self.engine,
            constants=self.constants,
            name=self.name
        )

def _parse_propagation(data):
    data = _get_block(data, ['duration', 'periods', 'control', 'thrust', 'direction', 'events', 'nonterminal_events', 'ode_method', 'ode_rtol'], 'propagation')
    block = dict()
    if 'duration' in data and 'periods' in data:
        raise ScenarioError("should contain only one of 'duration' or 'periods'", 'propagation')
    if 'duration' in data:
        block['duration'] = parse_quantity(data['duration'], 'time', 'propagation.duration')
    if 'periods' in data:
        block['periods'] = parse_number(data['periods'], 'propagation.periods')
    block['control'] = data.get('control', 'zero')
    if block['control'] not in ['zero', 'constant', 'tangential']:
        raise ScenarioError("'{}' is not one of ['zero', 'constant', 'tangential']".format(block['control']), 'propagation.control')
    if block['control'] == 'constant':
        block['thrust'] = parse_vector(data.get('thrust'), 'force', 'propagation.thrust')
    elif block['control'] == 'tangential':
        block['thrust'] = parse_quantity(data.get('thrust'), 'force', 'propagation.thrust')
    block['direction'] = data.get('direction', 'Forward')
    if block['direction'] not in ['Forward', 'BackwardMassGrowing']:
        raise ScenarioError("'{}' is not one of ['Forward', 'BackwardMassGrowing']".format(block['direction']), 'propagation.direction')
    for key in ['events', 'nonterminal_events']:
        block[key] = list(data.get(key, []))
        for item in block[key]:
            if item not in ['PerigeeMatch', 'AtmosphereCrossing', 'MassFloor']:
                raise ScenarioError("'{}' is not an event".format(item), 'propagation.' + key)
    if 'ode_method' in data:
        block['ode_method'] = data['ode_method']
    if 'ode_rtol' in data:
        block['ode_rtol'] = parse_number(data['ode_rtol'], 'propagation.ode_rtol')

    return block

def _parse_solver(data):
    data = _get_block(data, [key for key in OCPSolver.solver_defaults if key != 'parallel'], 'solver')
    block = dict()
    for key, value in data.items():
        _field = 'solver.' + key
        default = OCPSolver.solver_defaults[key]
        if key == 'starts':
            if not isinstance(value, list):
                raise ScenarioError("should be a list of angles", _field)
            block[key] = [parse_quantity(item, 'angle', _field) for item in value]
        elif key == 'stall_tol':
            block[key] = parse_quantity(value, 'length', _field)
        elif key == 'opt_method':
            block[key] = str(value)
        elif isinstance(default, bool):
            block[key] = parse_bool(value, _field)
        else:
            block[key] = parse_number(value, _field, integer=isinstance(default, int) or key == 'num_processes')

    return block

def _parse_bisection(data):
    data = _get_block(data, ['tau_lo', 'tau_hi', 'tol', 'reference_thrust', 'max_expansions', 'max_iterations', 'warm_start'], 'bisection')
    block = dict()
    for key in ['tau_lo', 'tau_hi', 'tol', 'reference_thrust']:
        if key in data:
            block[key] = parse_quantity(data[key], 'force', 'bisection.' + key)
    for key in ['max_expansions', 'max_iterations']:
        if key in data:
            block[key] = parse_number(data[key], 'bisection.' + key, integer=True)
    if 'warm_start' in data:
        block['warm_start'] = parse_bool(data['warm_start'], 'bisection.warm_start')

    return block

def _parse_sweep(data):
    data = _get_block(data, ['tau_min', 'tau_max', 'dim', 'scale'], 'sweep')
    block = dict()
    for key in ['tau_min', 'tau_max']:
        if key in data:
            block[key] = parse_quantity(data[key], 'force', 'sweep.' + key)
    if 'dim' in data:
        block['dim'] = parse_number(data['dim'], 'sweep.dim', integer=True)
    block['scale'] = data.get('scale', 'linear')
    if block['scale'] not in ['linear', 'log']:
        raise ScenarioError("'{}' is not one of ['linear', 'log']".format(block['scale']), 'sweep.scale')

    return block

def _parse_spiral(data):
    data = _get_block(data, ['coefficients', 'num_samples', 'margin'], 'spiral')
    block = {
        'coefficients': data.get('coefficients', 'unit')
    }
    if block['coefficients'] not in ['unit', 'matched']:
        raise ScenarioError("'{}' is not one of ['unit', 'matched']".format(block['coefficients']), 'spiral.coefficients')
    if 'num_samples' in data:
        block['num_samples'] = parse_number(data['num_samples'], 'spiral.num_samples', integer=True)
    if 'margin' in data:
        block['margin'] = parse_number(data['margin'], 'spiral.margin')

    return block

def _parse_path(data):
    data = _get_block(data, ['mode', 'samples'], 'path')
    block = {
        'mode': data.get('mode', 'StablePPlus'),
        'samples': parse_number(data['samples'], 'path.samples', integer=True) if 'samples' in data else 101
    }
    if block['mode'] not in ['AdmissibleA', 'StablePPlus']:
        raise ScenarioError("'{}' is not one of ['AdmissibleA', 'StablePPlus']".format(block['mode']), 'path.mode')

    return block

def _parse_output(data):
    data = _get_block(data, ['directory', 'prefix'], 'output')

    return {key: str(value) for key, value in data.items()}
