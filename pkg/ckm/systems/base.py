#!/usr/bin/env python3
# -*- coding: utf-8 -*-

r"""Module to interface the controlled two-body system.

The mass-depleting controlled system reads

.. math::

    \dot{r} = v, \quad \dot{v} = - \mu r / \|r\|^{3} + \tau / m, \quad \dot{m} = - \beta \|\tau\|,

its mass-growing time-reversal has :math:`\dot{m} = + \beta \|\tau\|` and the mass-normalized system replaces :math:`\tau / m` by a bounded acceleration :math:`u` with constant mass.
"""

__name__ = 'ckm.systems.base'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-04"
__updated__ = "2026-10-19"

# dependencies
import enum
import numpy as np

# ckm modules
from ..core import ATMOSPHERE_DEPTH, G0, MU, R_E, EngineParameters, PhysicalConstants, SatelliteState, StateVector
from ..errors import NonPositiveMass, OriginSingularity

# set constants
ORIGIN_GUARD = 1.0
"""float : Radius in m below which the gravity field is not evaluated."""

class Direction(enum.Enum):
    """Direction of the controlled dynamics."""

    FORWARD = 'Forward'
    """Mass-depleting system."""
    BACKWARD_MASS_GROWING = 'BackwardMassGrowing'
    """Time-reversed system with growing mass."""
    NORMALIZED = 'Normalized'
    """Mass-normalized system with bounded acceleration and constant mass."""

def drift_rhs(x:StateVector, mu:float=MU):
    """Function to obtain the uncontrolled rates ``(v, - mu r / ||r||^3)``.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State of the satellite.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    rates : numpy.ndarray
        Rates of change of the position and the velocity.
    """

    r_norm = np.linalg.norm(x.r)
    if r_norm < ORIGIN_GUARD:
        raise OriginSingularity("Radius {:g} m is below the origin guard".format(r_norm))

    return np.concatenate((x.v, - mu * x.r / r_norm**3))

def controlled_rhs(s:SatelliteState, tau, direction:Direction=Direction.FORWARD, mu:float=MU, beta:float=1.0 / (2000.0 * G0)):
    """Function to obtain the controlled rates of the position, the velocity and the mass.

    Parameters
    ----------
    s : :class:`ckm.core.SatelliteState`
        State of the satellite.
    tau : array-like
        Thrust in N. For the normalized direction, this is the acceleration in m/s^2.
    direction : :class:`ckm.systems.base.Direction`, optional
        Direction of the dynamics.
    mu : float, optional
        Gravitational parameter in m^3/s^2.
    beta : float, optional
        Mass-flow coefficient in s/m.

    Returns
    -------
    rates : numpy.ndarray
        Rates of change of the position, the velocity and the mass.
    """

    # validate mass
    if not s.m > 0.0:
        raise NonPositiveMass("Mass should be positive, got {}".format(s.m))

    # extract frequently used variables
    tau = np.asarray(tau, dtype=np.float64)
    rates = np.empty(7, dtype=np.float64)
    rates[:6] = drift_rhs(s.x, mu)

    if direction is Direction.NORMALIZED:
        rates[3:6] += tau
        rates[6] = 0.0
    else:
        rates[3:6] += tau / s.m
        rates[6] = (- 1.0 if direction is Direction.FORWARD else 1.0) * beta * np.linalg.norm(tau)

    return rates

class KeplerSystem():
    r"""Class to interface the controlled two-body system.

    Initializes ``params``, ``constants`` and ``engine``.

    Parameters
    ----------
    params : dict, optional
        Parameters for the system. Refer to **Notes** below for all available options.

    Notes
    -----
        The ``params`` dictionary currently supports the following keys:
            ====================    ====================================================
            key                     value
            ====================    ====================================================
            'mu'                    (*float*) gravitational parameter in m^3/s^2. Default is ``3.9860047e14``.
            'r_e'                   (*float*) radius of the Earth in m. Default is ``6.374e6``.
            'atmosphere_depth'      (*float*) depth of the atmosphere above the surface in m. Default is ``9.0e4``.
            'g0'                    (*float*) standard gravity in m/s^2. Default is ``9.8``.
            'isp'                   (*float*) specific impulse in s. Default is ``2000.0``.
            'm_dry'                 (*float*) minimum (dry) mass in kg. Default is ``1.0``.
            'tau_bound'             (*float*) bound on the thrust magnitude in N. Default is ``0.0``.
            ====================    ====================================================

        The nondimensional variables used by the integrators are scaled by the atmosphere radius :math:`L = r_{c}`, the circular speed :math:`V = \sqrt{\mu / r_{c}}`, the time :math:`T = L / V` and a reference mass :math:`M`. In these units the gravitational parameter is unity and the mass-flow coefficient is :math:`\beta V`.
    """

    # attributes
    name = 'KeplerSystem'
    """str : Name of the system."""
    desc = "Controlled Two-Body System"
    """str : Description of the system."""
    system_defaults = {
        'mu': MU,
        'r_e': R_E,
        'atmosphere_depth': ATMOSPHERE_DEPTH,
        'g0': G0,
        'isp': 2000.0,
        'm_dry': 1.0,
        'tau_bound': 0.0
    }
    """dict : Default parameters of the system."""

    def __init__(self, params:dict={}):
        """Class constructor for KeplerSystem."""

        # set parameters
        self.set_params(params)

    def set_params(self, params:dict):
        """Method to validate and set the system parameters.

        Parameters
        ----------
        params : dict
            Parameters of the system.
        """

        # update system parameters with new ones
        self.params = dict()
        for key in self.system_defaults:
            self.params[key] = float(params.get(key, self.system_defaults[key]))

        # validate parameters
        for key in ['mu', 'r_e', 'atmosphere_depth', 'g0', 'isp', 'm_dry']:
            assert self.params[key] > 0.0, "Parameter ``'{}'`` should be positive".format(key)
        assert self.params['tau_bound'] >= 0.0, "Parameter ``'tau_bound'`` should be non-negative"

        # set derived values
        self.constants = PhysicalConstants(
            mu=self.params['mu'],
            r_e=self.params['r_e'],
            r_c=self.params['r_e'] + self.params['atmosphere_depth'],
            g0=self.params['g0']
        )
        self.engine = EngineParameters(
            isp=self.params['isp'],
            g0=self.params['g0'],
            tau_bound=self.params['tau_bound'],
            m_dry=self.params['m_dry']
        )

    @classmethod
    def from_parts(cls, constants:PhysicalConstants, engine:EngineParameters):
        """Method to initialize the system from its constants and engine.

        Parameters
        ----------
        constants : :class:`ckm.core.PhysicalConstants`
            Physical constants.
        engine : :class:`ckm.core.EngineParameters`
            Parameters of the engine. Its standard gravity takes precedence.

        Returns
        -------
        system : :class:`ckm.systems.base.KeplerSystem`
            Initialized system.
        """

        return cls(
            params={
                'mu': constants.mu,
                'r_e': constants.r_e,
                'atmosphere_depth': constants.r_c - constants.r_e,
                'g0': engine.g0,
                'isp': engine.isp,
                'm_dry': engine.m_dry,
                'tau_bound': engine.tau_bound
            }
        )

    def get_scales(self, m_ref:float):
        """Method to obtain the scales of the nondimensional variables.

        Parameters
        ----------
        m_ref : float
            Reference mass in kg.

        Returns
        -------
        scales : dict
            Scales of length ``'L'`` in m, speed ``'V'`` in m/s, time ``'T'`` in s, mass ``'M'`` in kg and acceleration ``'A'`` in m/s^2.
        """

        L = self.constants.r_c
        V = np.sqrt(self.constants.mu / L)

        return {
            'L': L,
            'V': V,
            'T': L / V,
            'M': float(m_ref),
            'A': V**2 / L
        }

    def get_A(self, x:StateVector):
        r"""Method to obtain the Jacobian of the drift field.

        The Jacobian is :math:`\begin{bmatrix} 0 & I \\ - \mu / \|r\|^{3} I + 3 \mu r r^{T} / \|r\|^{5} & 0 \end{bmatrix}`.

        Parameters
        ----------
        x : :class:`ckm.core.StateVector`
            State at which the Jacobian is evaluated.

        Returns
        -------
        A : numpy.ndarray
            Drift matrix with shape ``(6, 6)``.
        """

        # extract frequently used variables
        mu = self.constants.mu
        r_norm = np.linalg.norm(x.r)
        if r_norm < ORIGIN_GUARD:
            raise OriginSingularity("Radius {:g} m is below the origin guard".format(r_norm))

        A = np.zeros((6, 6), dtype=np.float64)
        A[:3, 3:] = np.eye(3)
        A[3:, :3] = - mu / r_norm**3 * np.eye(3) + 3.0 * mu / r_norm**5 * np.outer(x.r, x.r)

        return A

    def get_B(self):
        """Method to obtain the constant control matrix ``[0; I]`` with shape ``(6, 3)``."""

        return np.vstack((np.zeros((3, 3)), np.eye(3)))

    def get_rates(self, s:SatelliteState, tau, direction:Direction=Direction.FORWARD):
        """Method to obtain the controlled rates in SI units.

        Parameters
        ----------
        s : :class:`ckm.core.SatelliteState`
            State of the satellite.
        tau : array-like
            Thrust in N, or acceleration in m/s^2 for the normalized direction.
        direction : :class:`ckm.systems.base.Direction`, optional
            Direction of the dynamics.

        Returns
        -------
        rates : numpy.ndarray
            Rates of change of the position, the velocity and the mass.
        """

        return controlled_rhs(
            s=s,
            tau=tau,
            direction=direction,
            mu=self.constants.mu,
            beta=self.engine.beta
        )
