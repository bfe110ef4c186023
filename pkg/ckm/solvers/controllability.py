#!/usr/bin/env python3
# -*- coding: utf-8 -*-

r"""Module containing the controllability constructions of the controlled two-body system.

The linearized pair :math:`(A, B)` of the drift field, its rank condition, the paths of modified equinoctial elements connecting admissible states, the analytic spiral steering a state out of the atmosphere-crossing region and the least-norm steering of the linearized system along one period are implemented here.
"""

__name__ = 'ckm.solvers.controllability'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-08"
__updated__ = "2026-10-18"

# dependencies
from dataclasses import dataclass
from functools import lru_cache
import enum
import logging
import numpy as np
import scipy.integrate as si
import sympy as sp

# ckm modules
from ..core import MU, PhysicalConstants, EngineParameters, RegionClass, SatelliteState, StateVector, admissible, classify, orbital_period, perigee_apogee
from ..elements import Meoe, meoe_from_state, state_from_meoe
from ..errors import EndpointOutsideRegion, GramianSingular, NotInPMinus, ZeroVelocity
from ..systems.base import Direction, KeplerSystem
from ..systems.controls import SteeringControl
from .base import Trajectory, TerminalReason, get_orbit_columns
from .differential import Propagator

# module logger
logger = logging.getLogger(__name__)

# set constants
RANK_TOL = 1e-8
"""float : Relative threshold of the singular values counted in a rank."""
GRAMIAN_TOL = 1e-12
"""float : Relative threshold of the smallest eigenvalue of a non-singular Gramian."""

@dataclass(frozen=True, eq=False)
class LinearizedPair:
    """Drift and control matrices of the linearized system at a state.

    Parameters
    ----------
    A : numpy.ndarray
        Drift matrix with shape ``(6, 6)``.
    B : numpy.ndarray
        Control matrix with shape ``(6, 3)``.
    """

    A: np.ndarray
    B: np.ndarray

@lru_cache(maxsize=None)
def _get_func_jacobian():
    # drift field in symbols
    r = sp.symbols('r_x r_y r_z', real=True)
    v = sp.symbols('v_x v_y v_z', real=True)
    mu = sp.Symbol('mu', positive=True)
    R = sp.sqrt(r[0]**2 + r[1]**2 + r[2]**2)
    f = sp.Matrix(list(v) + [- mu * r_i / R**3 for r_i in r])

    # jacobian
    J = f.jacobian(sp.Matrix(list(r) + list(v)))

    return sp.lambdify(list(r) + list(v) + [mu], J, modules='numpy')

def linearize(x:StateVector, mu:float=MU, method:str='analytic'):
    """Function to obtain the linearized pair of the drift field at a state.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State of the satellite.
    mu : float, optional
        Gravitational parameter in m^3/s^2.
    method : str, default='analytic'
        Method to evaluate the Jacobian. Options are ``'analytic'`` for the closed form and ``'symbolic'`` for the lambdified Jacobian of the symbolic drift field.

    Returns
    -------
    pair : :class:`ckm.solvers.controllability.LinearizedPair`
        Linearized pair.
    """

    # validate parameters
    assert method in ['analytic', 'symbolic'], "Parameter ``method`` should assume one of ``['analytic', 'symbolic']``"

    system = KeplerSystem(params={'mu': mu})
    if method == 'analytic':
        A = system.get_A(x)
    else:
        # reuse the origin guard of the analytic form
        system.get_A(x)
        A = np.array(_get_func_jacobian()(*x.r, *x.v, mu), dtype=np.float64)

    return LinearizedPair(
        A=A,
        B=system.get_B()
    )

def get_rank(M, rel_tol:float=RANK_TOL):
    """Function to obtain the rank of a matrix by thresholding its singular values.

    Parameters
    ----------
    M : numpy.ndarray
        Matrix.
    rel_tol : float, optional
        Threshold relative to the largest singular value.

    Returns
    -------
    rank : int
        Number of singular values above the threshold.
    """

    sigmas = np.linalg.svd(np.asarray(M, dtype=np.float64), compute_uv=False)
    if len(sigmas) == 0 or sigmas[0] == 0.0:
        return 0

    return int(np.sum(sigmas > rel_tol * sigmas[0]))

def rank_condition(x:StateVector, mu:float=MU):
    """Function to obtain the rank of the controllability matrix ``[B_0, B_1]`` of the linearized system at a state.

    As ``B`` is constant, ``B_1 = A B_0``.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State of the satellite.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    rank : int
        Rank of the controllability matrix.
    """

    pair = linearize(x, mu)
    B_0 = pair.B
    B_1 = pair.A.dot(B_0)

    return get_rank(np.hstack((B_0, B_1)))

class PathMode(enum.Enum):
    """Mode of the paths of modified equinoctial elements."""

    ADMISSIBLE_A = 'AdmissibleA'
    """Interpolated radius, staying in the admissible region."""
    STABLE_P_PLUS = 'StablePPlus'
    """Interpolated perigee, staying above the atmosphere."""

def meoe_path(x_i:StateVector, x_f:StateVector, mode:PathMode=PathMode.STABLE_P_PLUS, n:int=101, constants:PhysicalConstants=PhysicalConstants()):
    r"""Function to obtain a continuous path of states connecting two states in a region.

    The eccentricity and inclination components and the true longitude are interpolated linearly in :math:`\lambda \in [0, 1]`. For ``AdmissibleA``, the semi-latus rectum is :math:`P = ((1 - \lambda) \|r_{i}\| + \lambda \|r_{f}\|) W(\lambda)` so that the radius is interpolated. For ``StablePPlus``, it is :math:`P = ((1 - \lambda) r_{p_{i}} + \lambda r_{p_{f}}) (1 + e(\lambda))` so that the perigee distance is interpolated.

    Parameters
    ----------
    x_i : :class:`ckm.core.StateVector`
        Initial state.
    x_f : :class:`ckm.core.StateVector`
        Final state.
    mode : :class:`ckm.solvers.controllability.PathMode`, optional
        Mode of the path.
    n : int, default=101
        Number of samples.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.

    Returns
    -------
    states : list
        Sampled :class:`ckm.core.StateVector` at ``lambda_k = k / (n - 1)``.
    """

    # validate parameters
    assert n >= 2, "Parameter ``n`` should be at least 2"
    mode = PathMode(mode)
    for name, x in [('initial', x_i), ('final', x_f)]:
        if mode is PathMode.ADMISSIBLE_A and not admissible(x, constants):
            raise EndpointOutsideRegion("The {} state is not admissible".format(name))
        if mode is PathMode.STABLE_P_PLUS and classify(x, constants) is not RegionClass.P_PLUS:
            raise EndpointOutsideRegion("The {} state does not lie in the stable region".format(name))

    # extract frequently used variables
    mu = constants.mu
    z_i = meoe_from_state(x_i, mu)
    z_f = meoe_from_state(x_f, mu)
    if mode is PathMode.ADMISSIBLE_A:
        ends = (np.linalg.norm(x_i.r), np.linalg.norm(x_f.r))
    else:
        ends = (perigee_apogee(x_i, mu)[0], perigee_apogee(x_f, mu)[0])

    states = list()
    for lamb in np.linspace(0.0, 1.0, n):
        # interpolated components
        ex, ey, hx, hy, l = [(1.0 - lamb) * getattr(z_i, key) + lamb * getattr(z_f, key) for key in ['ex', 'ey', 'hx', 'hy', 'l']]
        length = (1.0 - lamb) * ends[0] + lamb * ends[1]
        if mode is PathMode.ADMISSIBLE_A:
            P = length * (1.0 + ex * np.cos(l) + ey * np.sin(l))
        else:
            P = length * (1.0 + np.hypot(ex, ey))

        states.append(state_from_meoe(Meoe(P=P, ex=ex, ey=ey, hx=hx, hy=hy, l=l), mu))

    logger.debug("Path of {} samples in mode {}".format(n, mode.value))

    return states

def get_path_table(states:list, mu:float=MU):
    """Function to obtain the table of a path in the columns of a trajectory.

    The parameter ``lambda`` takes the place of the time, the masses are ``NaN`` and the thrusts vanish.

    Parameters
    ----------
    states : list
        Sampled :class:`ckm.core.StateVector`.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    table : numpy.ndarray
        Table with shape ``(n, 15)``.
    """

    table = np.zeros((len(states), 15), dtype=np.float64)
    table[:, 0] = np.linspace(0.0, 1.0, len(states))
    table[:, 7] = np.nan
    for i, x in enumerate(states):
        table[i, 1:7] = x.to_array()
        table[i, 11:] = get_orbit_columns(x, mu)

    return table

@dataclass(frozen=True, eq=False)
class SpiralResult:
    """Samples of the analytic spiral.

    Parameters
    ----------
    duration : float
        Time in s at which the perigee distance reaches the atmosphere radius.
    t : numpy.ndarray
        Sample times in s.
    radius : numpy.ndarray
        Radii in m.
    theta : numpy.ndarray
        Polar angles in rad, measured from the initial position.
    position : numpy.ndarray
        Positions with shape ``(n, 3)``.
    velocity : numpy.ndarray
        Velocities with shape ``(n, 3)``.
    mass : numpy.ndarray
        Masses in kg.
    tau : numpy.ndarray
        Thrusts in N with shape ``(n, 3)``.
    tau_bar : float
        Maximum thrust magnitude in N.
    C0 : float
        Constant ``sqrt(||r_i||) ||v_i||``.
    C1 : float
        Ratio of the perigee distance to the radius.
    a : float
        Radial coefficient.
    b : float
        Transverse coefficient.
    terminal_state : :class:`ckm.core.SatelliteState`
        State at the duration.
    """

    duration: float
    t: np.ndarray
    radius: np.ndarray
    theta: np.ndarray
    position: np.ndarray
    velocity: np.ndarray
    mass: np.ndarray
    tau: np.ndarray
    tau_bar: float
    C0: float
    C1: float
    a: float
    b: float
    terminal_state: SatelliteState

    def to_trajectory(self):
        """Method to obtain the samples as a trajectory."""

        return Trajectory(
            t=self.t,
            y=np.hstack((self.position, self.velocity, self.mass.reshape(-1, 1))),
            tau=self.tau,
            terminal_reason=TerminalReason.TIME_EXHAUSTED,
            direction=Direction.FORWARD
        )

def spiral_construct(x_i:StateVector, m_i:float, engine:EngineParameters=EngineParameters(), constants:PhysicalConstants=PhysicalConstants(), coefficients:str='unit', num_samples:int=201, margin:float=1e-6):
    r"""Function to construct the analytic spiral raising the perigee above the atmosphere.

    The velocity along the spiral is :math:`v = C_{0} / \sqrt{2 r} (a \hat{r} + b \hat{r}_{\perp})` with :math:`C_{0} = \|r_{i}\|^{1/2} \|v_{i}\|`, so that

    .. math::

        r^{3/2} = r_{i}^{3/2} + \frac{3 a C_{0} t}{2 \sqrt{2}}, \quad \theta = \frac{b}{a} \ln \frac{r}{r_{i}}, \quad \|h\| = b C_{0} \sqrt{r / 2}.

    The Laplace vector has constant norm, so that the perigee distance grows as :math:`r_{p} = C_{1} r`. The thrust acceleration :math:`\dot{v} + \mu r / \|r\|^{3}` has norm :math:`c / r^{2}`, which gives the closed form of the mass and the maximum thrust :math:`\bar{\tau} = c m_{i} / r_{i}^{2}` at the start.

    Parameters
    ----------
    x_i : :class:`ckm.core.StateVector`
        Initial state in the atmosphere-crossing region.
    m_i : float
        Initial mass in kg.
    engine : :class:`ckm.core.EngineParameters`, optional
        Parameters of the engine.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.
    coefficients : str, default='unit'
        Coefficients of the velocity. Options are ``'unit'`` for ``a = b = 1`` and ``'matched'`` for ``a = sqrt(2) sin(eta)`` and ``b = sqrt(2) cos(eta)``, which start at the initial velocity and require a positive flight path angle ``eta``.
    num_samples : int, default=201
        Number of samples.
    margin : float, default=1e-6
        Relative margin of the final perigee distance above the atmosphere radius.

    Returns
    -------
    result : :class:`ckm.solvers.controllability.SpiralResult`
        Samples of the spiral.
    """

    # validate parameters
    assert coefficients in ['unit', 'matched'], "Parameter ``coefficients`` should assume one of ``['unit', 'matched']``"
    assert m_i > 0.0, "Parameter ``m_i`` should be positive"
    if np.linalg.norm(x_i.v) == 0.0:
        raise ZeroVelocity("Spiral requires a non-zero initial velocity")
    region = classify(x_i, constants)
    if region is not RegionClass.P_MINUS:
        raise NotInPMinus("Spiral requires a state in the atmosphere-crossing region, got {}".format(region.value))

    # extract frequently used variables
    mu = constants.mu
    r_i = np.linalg.norm(x_i.r)
    b_1 = x_i.r / r_i
    v_perp = x_i.v - x_i.v.dot(b_1) * b_1
    b_2 = v_perp / np.linalg.norm(v_perp)
    C0 = np.sqrt(r_i) * np.linalg.norm(x_i.v)
    k = C0 / np.sqrt(2.0)

    # coefficients
    if coefficients == 'unit':
        a, b = 1.0, 1.0
    else:
        eta = np.arctan2(x_i.v.dot(b_1), np.linalg.norm(v_perp))
        assert eta > 0.0, "Matched coefficients require a positive flight path angle"
        a, b = np.sqrt(2.0) * np.sin(eta), np.sqrt(2.0) * np.cos(eta)

    # perigee ratio from the constant Laplace vector
    L_norm = np.hypot(b**2 * k**2 - mu, a * b * k**2)
    C1 = b**2 * k**2 / (mu * (1.0 + L_norm / mu))
    r_f = max(constants.r_c * (1.0 + margin) / C1, r_i)

    # duration
    q = 1.5 * a * k
    s_i = r_i**1.5
    duration = (r_f**1.5 - s_i) / q

    # samples
    t = np.linspace(0.0, duration, num_samples if duration > 0.0 else 1)
    s = s_i + q * t
    radius = s**(2.0 / 3.0)
    theta = b / a * np.log(radius / r_i)
    r_hat = np.outer(np.cos(theta), b_1) + np.outer(np.sin(theta), b_2)
    r_perp = - np.outer(np.sin(theta), b_1) + np.outer(np.cos(theta), b_2)
    position = radius.reshape(-1, 1) * r_hat
    velocity = (k / np.sqrt(radius)).reshape(-1, 1) * (a * r_hat + b * r_perp)

    # thrust acceleration and mass
    u_r, u_t = mu - k**2 * (a**2 / 2.0 + b**2), a * b * k**2 / 2.0
    c = np.hypot(u_r, u_t)
    mass = m_i * np.exp(- engine.beta * c * 3.0 / q * (s_i**(- 1.0 / 3.0) - s**(- 1.0 / 3.0)))
    tau = (mass / radius**2).reshape(-1, 1) * (u_r * r_hat + u_t * r_perp)
    tau_bar = c * m_i / r_i**2

    logger.debug("Spiral of duration {:g} s with C0 = {:g}, C1 = {:g} and tau_bar = {:g} N".format(duration, C0, C1, tau_bar))

    return SpiralResult(
        duration=duration,
        t=t,
        radius=radius,
        theta=theta,
        position=position,
        velocity=velocity,
        mass=mass,
        tau=tau,
        tau_bar=tau_bar,
        C0=C0,
        C1=C1,
        a=a,
        b=b,
        terminal_state=SatelliteState(
            x=StateVector(r=position[-1], v=velocity[-1]),
            m=mass[-1]
        )
    )

def _get_stm(xbar:StateVector, constants:PhysicalConstants, rtol:float):
    # nondimensional state and period
    L = constants.r_c
    V = np.sqrt(constants.mu / L)
    t_p = orbital_period(xbar, constants.mu) / (L / V)
    y_0 = np.concatenate((xbar.r / L, xbar.v / V, np.eye(6).reshape(-1)))

    def func(t, y):
        r = y[:3]
        r_norm = np.sqrt(r.dot(r))
        A = np.zeros((6, 6))
        A[:3, 3:] = np.eye(3)
        A[3:, :3] = - np.eye(3) / r_norm**3 + 3.0 * np.outer(r, r) / r_norm**5
        return np.concatenate((y[3:6], - r / r_norm**3, A.dot(y[6:].reshape(6, 6)).reshape(-1)))

    sol = si.solve_ivp(func, (0.0, t_p), y_0, method='DOP853', rtol=rtol, atol=rtol, dense_output=True)

    return t_p, sol.sol

def get_gramian(xbar:StateVector, constants:PhysicalConstants=PhysicalConstants(), num_nodes:int=401, rtol:float=1e-12):
    r"""Function to obtain the controllability Gramian of the linearized drift along one period.

    The Gramian :math:`W = \int_{0}^{t_{p}} \Phi(t_{p}, s) B B^{T} \Phi(t_{p}, s)^{T} ds` is evaluated in the nondimensional variables of :class:`ckm.systems.base.KeplerSystem` by Simpson's rule on uniformly spaced nodes.

    Parameters
    ----------
    xbar : :class:`ckm.core.StateVector`
        Periodic state.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.
    num_nodes : int, default=401
        Number of quadrature nodes.
    rtol : float, default=1e-12
        Tolerance of the transition matrix integration.

    Returns
    -------
    W : numpy.ndarray
        Gramian with shape ``(6, 6)``.
    """

    return _get_gramian(xbar, constants, num_nodes, rtol)[0]

def _get_gramian(xbar, constants, num_nodes, rtol):
    t_p, sol = _get_stm(xbar, constants, rtol)
    ts = np.linspace(0.0, t_p, num_nodes)
    Phis = np.array([sol(t)[6:].reshape(6, 6) for t in ts])
    Phi_T = Phis[-1]

    # Phi(t_p, s) B
    PBs = np.array([Phi_T.dot(np.linalg.solve(Phi, np.vstack((np.zeros((3, 3)), np.eye(3))))) for Phi in Phis])
    W = si.simpson(np.einsum('nij,nkj->nik', PBs, PBs), x=ts, axis=0)
    W = 0.5 * (W + W.T)

    return W, t_p, sol, Phi_T

@dataclass(frozen=True, eq=False)
class SteeringResult:
    """Result of the local steering along one period.

    Parameters
    ----------
    success : bool
        Whether the miss distance is below a tenth of the offset and the control respects the bound.
    miss : float
        Nondimensional distance of the final state to the target.
    offset : float
        Nondimensional distance of the target to the initial state.
    peak : float
        Maximum acceleration of the control in m/s^2.
    eps : float
        Bound on the acceleration in m/s^2.
    t : numpy.ndarray
        Times in s of the sampled control.
    u : numpy.ndarray
        Sampled accelerations in m/s^2 with shape ``(n, 3)``.
    trajectory : :class:`ckm.solvers.base.Trajectory`
        Propagated trajectory of the mass-normalized system.
    gramian : numpy.ndarray
        Nondimensional Gramian.
    """

    success: bool
    miss: float
    offset: float
    peak: float
    eps: float
    t: np.ndarray
    u: np.ndarray
    trajectory: Trajectory
    gramian: np.ndarray

def verify_local_steer(xbar:StateVector, target:StateVector, eps:float, constants:PhysicalConstants=PhysicalConstants(), num_nodes:int=401, params:dict={}):
    r"""Function to steer a periodic state to a nearby target in one period with the least-norm control of the linearized system.

    The control :math:`u(s) = B^{T} \Phi(t_{p}, s)^{T} W^{-1} d` with :math:`d = x - \bar{x}` is applied to the nonlinear mass-normalized system and the final miss distance is reported.

    Parameters
    ----------
    xbar : :class:`ckm.core.StateVector`
        Periodic state.
    target : :class:`ckm.core.StateVector`
        Target state close to ``xbar``.
    eps : float
        Bound on the acceleration in m/s^2.
    constants : :class:`ckm.core.PhysicalConstants`, optional
        Physical constants.
    num_nodes : int, default=401
        Number of quadrature nodes and control samples.
    params : dict, optional
        Parameters of the :class:`ckm.solvers.differential.Propagator`.

    Returns
    -------
    result : :class:`ckm.solvers.controllability.SteeringResult`
        Result of the steering.
    """

    # Gramian
    W, t_p, sol, Phi_T = _get_gramian(xbar, constants, num_nodes, 1e-12)
    eigs = np.linalg.eigvalsh(W)
    if not eigs[0] > GRAMIAN_TOL * eigs[-1]:
        raise GramianSingular("Gramian is singular with eigenvalues in [{:g}, {:g}]".format(eigs[0], eigs[-1]))

    # scales
    L = constants.r_c
    V = np.sqrt(constants.mu / L)
    T = L / V
    A = V / T
    to_bar = np.array([L] * 3 + [V] * 3)
    d = (target.to_array() - xbar.to_array()) / to_bar
    offset = float(np.linalg.norm(d))

    # costate of the least-norm control
    lamb = Phi_T.T.dot(np.linalg.solve(W, d))

    def func_u(t, r, v, m):
        Phi = sol(min(max(t / T, 0.0), t_p))[6:].reshape(6, 6)
        return np.linalg.solve(Phi.T, lamb)[3:] * A

    # sampled control
    ts = np.linspace(0.0, t_p * T, num_nodes)
    us = np.array([func_u(t, None, None, None) for t in ts])
    peak = float(np.max(np.linalg.norm(us, axis=1)))

    # nonlinear propagation
    system = KeplerSystem(params={
        'mu': constants.mu,
        'r_e': constants.r_e,
        'atmosphere_depth': constants.r_c - constants.r_e,
        'g0': constants.g0
    })
    trajectory = Propagator(system, params).propagate(
        s0=SatelliteState(x=xbar, m=1.0),
        law=SteeringControl(func_u),
        t_max=t_p * T,
        direction=Direction.NORMALIZED
    )
    miss = float(np.linalg.norm((trajectory.final_state.x.to_array() - target.to_array()) / to_bar))
    success = miss <= max(0.1 * offset, 1e-9) and peak <= eps

    logger.debug("Local steering with offset {:g}, miss {:g} and peak {:g} m/s^2".format(offset, miss, peak))

    return SteeringResult(
        success=success,
        miss=miss,
        offset=offset,
        peak=peak,
        eps=eps,
        t=ts,
        u=us,
        trajectory=trajectory,
        gramian=W
    )
