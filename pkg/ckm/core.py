#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module containing the physical constants, the state types and the geometry of Keplerian orbits.

All quantities are in SI units. The frame is the geocentric inertial cartesian frame.

References
----------

.. [1] H. D. Curtis, *Orbital Mechanics for Engineering Students*, Butterworth-Heinemann (2013).
"""

__name__ = 'ckm.core'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-02"
__updated__ = "2026-10-19"

# dependencies
from dataclasses import dataclass
import enum
import logging
import numpy as np

# ckm modules
from .errors import DegenerateBasis, NonPositiveMass, NotPeriodic, OriginSingularity, ZeroVelocity

# module logger
logger = logging.getLogger(__name__)

# set constants
MU = 3.9860047e14
"""float : Gravitational parameter of the Earth in m^3/s^2."""
R_E = 6.374e6
"""float : Radius of the Earth in m."""
ATMOSPHERE_DEPTH = 9.0e4
"""float : Depth of the atmosphere in m."""
G0 = 9.8
"""float : Standard gravity in m/s^2."""
COLINEAR_TOL = 1e-12
"""float : Relative tolerance of ``||r x v|| / (||r|| ||v||)`` below which a state is colinear."""

@dataclass(frozen=True)
class PhysicalConstants:
    """Physical constants of the two-body problem.

    Parameters
    ----------
    mu : float
        Gravitational parameter in m^3/s^2.
    r_e : float
        Radius of the Earth in m.
    r_c : float
        Radius of the atmosphere in m.
    g0 : float
        Standard gravity in m/s^2.
    """

    mu: float = MU
    r_e: float = R_E
    r_c: float = R_E + ATMOSPHERE_DEPTH
    g0: float = G0

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ValueError("Gravitational parameter should be positive")
        if not self.r_e > 0.0:
            raise ValueError("Earth radius should be positive")
        if not self.r_c > self.r_e:
            raise ValueError("Atmosphere radius should exceed the Earth radius")
        if not self.g0 > 0.0:
            raise ValueError("Standard gravity should be positive")

@dataclass(frozen=True)
class EngineParameters:
    """Parameters of the engine.

    Parameters
    ----------
    isp : float
        Specific impulse in s.
    g0 : float
        Standard gravity in m/s^2.
    tau_bound : float
        Bound on the thrust magnitude in N.
    m_dry : float
        Minimum (dry) mass in kg.
    """

    isp: float = 2000.0
    g0: float = G0
    tau_bound: float = 0.0
    m_dry: float = 1.0

    def __post_init__(self):
        if not self.isp > 0.0:
            raise ValueError("Specific impulse should be positive")
        if not self.tau_bound >= 0.0:
            raise ValueError("Thrust bound should be non-negative")
        if not self.m_dry > 0.0:
            raise ValueError("Dry mass should be positive")

    @property
    def beta(self):
        """float : Mass-flow coefficient ``1 / (isp g0)`` in s/m."""

        return 1.0 / (self.isp * self.g0)

def _as_vector(value, name:str):
    vector = np.array(value, dtype=np.float64).reshape(-1)
    if vector.shape != (3, ) or not np.all(np.isfinite(vector)):
        raise ValueError("Parameter ``{}`` should be a finite 3-vector".format(name))
    vector.setflags(write=False)
    return vector

@dataclass(frozen=True, eq=False)
class StateVector:
    """Position and velocity of the satellite.

    Parameters
    ----------
    r : array-like
        Position in m. The origin is excluded.
    v : array-like
        Velocity in m/s.
    """

    r: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'r', _as_vector(self.r, 'r'))
        object.__setattr__(self, 'v', _as_vector(self.v, 'v'))
        if not np.linalg.norm(self.r) > 0.0:
            raise OriginSingularity("Position should not be the origin")

    @classmethod
    def from_array(cls, array):
        """Method to build the state from a 6-vector ``(r, v)``."""

        return cls(r=array[:3], v=array[3:6])

    def to_array(self):
        """Method to obtain the 6-vector ``(r, v)``."""

        return np.concatenate((self.r, self.v))

    def __repr__(self):
        return "StateVector(r={}, v={})".format(self.r.tolist(), self.v.tolist())

@dataclass(frozen=True, eq=False)
class SatelliteState:
    """State of the satellite including its mass.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        Position and velocity.
    m : float
        Mass in kg.
    """

    x: StateVector
    m: float

    def __post_init__(self):
        object.__setattr__(self, 'm', float(self.m))
        if not self.m > 0.0:
            raise NonPositiveMass("Mass should be positive, got {}".format(self.m))

    @classmethod
    def from_array(cls, array):
        """Method to build the state from a 7-vector ``(r, v, m)``."""

        return cls(x=StateVector.from_array(array), m=array[6])

    def to_array(self):
        """Method to obtain the 7-vector ``(r, v, m)``."""

        return np.concatenate((self.x.r, self.x.v, [self.m]))

class RegionClass(enum.Enum):
    """Region of the state space containing a state."""

    NON_ELLIPTIC = 'NonElliptic'
    COLINEAR = 'Colinear'
    P_PLUS = 'PPlus'
    P_MINUS = 'PMinus'
    P_INSIDE_ATMOSPHERE = 'PInsideAtmosphere'

def angular_momentum(x:StateVector):
    """Function to obtain the specific angular momentum ``r x v`` in m^2/s."""

    return np.cross(x.r, x.v)

def laplace_vector(x:StateVector, mu:float=MU):
    """Function to obtain the Laplace vector ``v x h - mu r / ||r||`` in m^3/s^2."""

    return np.cross(x.v, angular_momentum(x)) - mu * x.r / np.linalg.norm(x.r)

def specific_energy(x:StateVector, mu:float=MU):
    """Function to obtain the specific mechanical energy ``||v||^2 / 2 - mu / ||r||`` in J/kg."""

    return 0.5 * np.dot(x.v, x.v) - mu / np.linalg.norm(x.r)

def eccentricity(x:StateVector, mu:float=MU):
    """Function to obtain the eccentricity ``||L|| / mu``."""

    return np.linalg.norm(laplace_vector(x, mu)) / mu

def is_colinear(x:StateVector):
    """Function to check whether the position and the velocity are colinear (zero angular momentum)."""

    scale = np.linalg.norm(x.r) * np.linalg.norm(x.v)
    return scale == 0.0 or np.linalg.norm(angular_momentum(x)) <= COLINEAR_TOL * scale

def _validate_periodic(x:StateVector, mu:float):
    if specific_energy(x, mu) >= 0.0:
        raise NotPeriodic("State has non-negative energy")
    if is_colinear(x):
        raise NotPeriodic("State has zero angular momentum")

def semi_major_axis(x:StateVector, mu:float=MU):
    """Function to obtain the semi-major axis ``-mu / (2 E)`` in m.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        Periodic state.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    a : float
        Semi-major axis.
    """

    _validate_periodic(x, mu)

    return - mu / (2.0 * specific_energy(x, mu))

def perigee_apogee(x:StateVector, mu:float=MU):
    r"""Function to obtain the perigee and apogee distances of the osculating orbit.

    The distances are :math:`r_{p} = \|h\|^{2} / (\mu (1 + e))` and :math:`r_{a} = \|h\|^{2} / (\mu (1 - e))`.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        Periodic state.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    r_p : float
        Perigee distance in m.
    r_a : float
        Apogee distance in m.
    """

    _validate_periodic(x, mu)

    # extract frequently used variables
    h_2 = np.dot(angular_momentum(x), angular_momentum(x))
    e = eccentricity(x, mu)

    return h_2 / (mu * (1.0 + e)), h_2 / (mu * (1.0 - e))

def orbital_period(x:StateVector, mu:float=MU):
    """Function to obtain the period ``2 pi sqrt(a^3 / mu)`` of the osculating orbit in s."""

    return 2.0 * np.pi * np.sqrt(semi_major_axis(x, mu)**3 / mu)

def flight_path_angle(x:StateVector):
    """Function to obtain the angle between the velocity and the local horizontal plane.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State with non-zero velocity.

    Returns
    -------
    eta : float
        Flight path angle in rad, in the interval ``[-pi / 2, pi / 2]``.
    """

    v_norm = np.linalg.norm(x.v)
    if v_norm == 0.0:
        raise ZeroVelocity("Flight path angle is undefined for zero velocity")

    return np.arcsin(np.clip(np.dot(x.r, x.v) / (np.linalg.norm(x.r) * v_norm), -1.0, 1.0))

def state_from_scalars(rnorm:float, vnorm:float, eta:float, plane_basis=None):
    """Function to build a state from its radius, speed and flight path angle.

    The position is ``rnorm b_1`` and the velocity is ``vnorm (sin(eta) b_1 + cos(eta) b_2)``.

    Parameters
    ----------
    rnorm : float
        Radius in m.
    vnorm : float
        Speed in m/s.
    eta : float
        Flight path angle in rad.
    plane_basis : tuple, optional
        Orthonormal vectors ``(b_1, b_2)`` spanning the orbital plane. Default is the basis of the equatorial plane.

    Returns
    -------
    x : :class:`ckm.core.StateVector`
        State in the plane.
    """

    # validate parameters
    if not rnorm > 0.0:
        raise OriginSingularity("Radius should be positive")
    if not vnorm > 0.0:
        raise ZeroVelocity("Speed should be positive")
    if abs(eta) > 0.5 * np.pi:
        raise ValueError("Flight path angle should lie in [-pi / 2, pi / 2]")

    # basis vectors
    b_1, b_2 = plane_basis if plane_basis is not None else ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    b_1 = np.asarray(b_1, dtype=np.float64)
    b_2 = np.asarray(b_2, dtype=np.float64)
    gram = np.array([[b_1.dot(b_1), b_1.dot(b_2)], [b_2.dot(b_1), b_2.dot(b_2)]])
    if b_1.shape != (3, ) or b_2.shape != (3, ) or np.max(np.abs(gram - np.eye(2))) > 1e-12:
        raise DegenerateBasis("Plane basis should contain two orthonormal 3-vectors")

    return StateVector(
        r=rnorm * b_1,
        v=vnorm * (np.sin(eta) * b_1 + np.cos(eta) * b_2)
    )

def admissible(x:StateVector, constants:PhysicalConstants=PhysicalConstants()):
    """Function to check whether a state lies in the admissible region (elliptic, above the atmosphere)."""

    return specific_energy(x, constants.mu) < 0.0 and not is_colinear(x) and np.linalg.norm(x.r) > constants.r_c

def classify(x:StateVector, constants:PhysicalConstants=PhysicalConstants()):
    """Function to classify the region containing a state.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State to classify.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.

    Returns
    -------
    region : :class:`ckm.core.RegionClass`
        Region of the state. The checks are performed in the order ``NON_ELLIPTIC``, ``COLINEAR``, ``P_INSIDE_ATMOSPHERE``, ``P_PLUS``, ``P_MINUS``.
    """

    if specific_energy(x, constants.mu) >= 0.0:
        return RegionClass.NON_ELLIPTIC
    if is_colinear(x):
        return RegionClass.COLINEAR
    if np.linalg.norm(x.r) <= constants.r_c:
        return RegionClass.P_INSIDE_ATMOSPHERE

    r_p, _ = perigee_apogee(x, constants.mu)

    return RegionClass.P_PLUS if r_p > constants.r_c else RegionClass.P_MINUS

def rotate_state(x:StateVector, R):
    """Function to rotate both the position and the velocity of a state by a rotation matrix."""

    R = np.asarray(R, dtype=np.float64)

    return StateVector(
        r=R.dot(x.r),
        v=R.dot(x.v)
    )
