#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module containing the control laws of the controlled two-body system.

Every law is called as ``law(t, r, v, m)`` with the time in s, the position in m, the velocity in m/s and the mass in kg, and returns the thrust in N (or the acceleration in m/s^2 for the mass-normalized system).
"""

__name__ = 'ckm.systems.controls'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-05"
__updated__ = "2026-10-17"

# dependencies
from dataclasses import dataclass
import enum
import numpy as np
import scipy.interpolate as sintp

class ControlKind(enum.Enum):
    """Kind of a control law."""

    ZERO = 'Zero'
    CONSTANT_VECTOR = 'ConstantVector'
    STEERING_FUNCTION = 'SteeringFunction'

class ControlLaw():
    """Class to interface control laws.

    Parameters
    ----------
    kind : :class:`ckm.systems.controls.ControlKind`
        Kind of the law.
    """

    def __init__(self, kind:ControlKind):
        """Class constructor for ControlLaw."""

        self.kind = kind

    def __call__(self, t:float, r, v, m:float):
        raise NotImplementedError

class ZeroControl(ControlLaw):
    """Class for the uncontrolled motion."""

    def __init__(self):
        """Class constructor for ZeroControl."""

        super().__init__(ControlKind.ZERO)
        self._zeros = np.zeros(3, dtype=np.float64)

    def __call__(self, t, r, v, m):
        return self._zeros

class ConstantControl(ControlLaw):
    """Class for a constant thrust vector in the inertial frame.

    Parameters
    ----------
    tau : array-like
        Thrust vector.
    """

    def __init__(self, tau):
        """Class constructor for ConstantControl."""

        super().__init__(ControlKind.CONSTANT_VECTOR)
        self.tau = np.array(tau, dtype=np.float64).reshape(3)

    def __call__(self, t, r, v, m):
        return self.tau

class SteeringControl(ControlLaw):
    """Class for a time- and state-dependent thrust rule.

    Parameters
    ----------
    func : callable
        Thrust rule formatted as ``func(t, r, v, m)`` returning a 3-vector.
    """

    def __init__(self, func):
        """Class constructor for SteeringControl."""

        super().__init__(ControlKind.STEERING_FUNCTION)
        self.func = func

    def __call__(self, t, r, v, m):
        return np.asarray(self.func(t, r, v, m), dtype=np.float64)

class RescaledControl(ControlLaw):
    """Class for the thrust ``u(t) m(t)`` of a law of the mass-normalized system.

    Parameters
    ----------
    u_law : :class:`ckm.systems.controls.ControlLaw`
        Acceleration law of the mass-normalized system.
    eps : float
        Bound on the acceleration in m/s^2.
    """

    def __init__(self, u_law:ControlLaw, eps:float):
        """Class constructor for RescaledControl."""

        super().__init__(ControlKind.STEERING_FUNCTION)
        self.u_law = u_law
        self.eps = eps

    def __call__(self, t, r, v, m):
        return np.asarray(self.u_law(t, r, v, m), dtype=np.float64) * m

def get_steering_frame(r, v):
    """Function to obtain the orthonormal frame of the velocity, the in-plane normal and the orbit normal.

    Parameters
    ----------
    r : numpy.ndarray
        Position.
    v : numpy.ndarray
        Velocity.

    Returns
    -------
    v_hat : numpy.ndarray
        Unit vector along the velocity.
    n_hat : numpy.ndarray
        Unit vector in the orbital plane normal to the velocity, pointing away from the attracting center on circular orbits.
    h_hat : numpy.ndarray
        Unit vector along the angular momentum.
    """

    v_hat = v / np.sqrt(v.dot(v))
    h = np.cross(r, v)
    h_hat = h / np.sqrt(h.dot(h))

    return v_hat, np.cross(v_hat, h_hat), h_hat

@dataclass(frozen=True, eq=False)
class SteeringProfile:
    """Knot values of the steering angles of a full-thrust control.

    The knots are uniformly spaced on ``[0, horizon]`` and the angles are interpolated by cubic splines, which are held constant beyond the horizon.

    Parameters
    ----------
    horizon : float
        Time span of the knots in s.
    alphas : numpy.ndarray
        In-plane angles in rad between the thrust and the velocity, positive towards the outward in-plane normal.
    deltas : numpy.ndarray, optional
        Out-of-plane angles in rad. If not provided, the control is planar.
    throttles : numpy.ndarray, optional
        Unbounded throttle variables ``k`` of the throttle ``(1 + tanh(k)) / 2``. If not provided, the throttle is unity.
    """

    horizon: float
    alphas: np.ndarray
    deltas: np.ndarray = None
    throttles: np.ndarray = None

    def __post_init__(self):
        assert self.horizon > 0.0, "Horizon should be positive"
        for key in ['alphas', 'deltas', 'throttles']:
            if getattr(self, key) is not None:
                object.__setattr__(self, key, np.array(getattr(self, key), dtype=np.float64).reshape(-1))
                assert len(getattr(self, key)) == len(self.alphas), "Profiles should have the same number of knots"
        assert len(self.alphas) >= 2, "Profile should contain at least 2 knots"

    @property
    def knots(self):
        """numpy.ndarray : Times of the knots in s."""

        return np.linspace(0.0, self.horizon, len(self.alphas))

    @property
    def planar(self):
        """bool : Whether the profile has no out-of-plane angles."""

        return self.deltas is None

    def to_vector(self):
        """Method to obtain the optimization variables as a flat vector."""

        return np.concatenate([p for p in [self.alphas, self.deltas, self.throttles] if p is not None])

    def from_vector(self, vector):
        """Method to obtain a profile with the same structure from a flat vector.

        Parameters
        ----------
        vector : numpy.ndarray
            Optimization variables ordered as ``alphas``, ``deltas`` and ``throttles``.

        Returns
        -------
        profile : :class:`ckm.systems.controls.SteeringProfile`
            New profile.
        """

        K = len(self.alphas)
        parts = [np.asarray(vector[:K])]
        idx = K
        for key in ['deltas', 'throttles']:
            if getattr(self, key) is not None:
                parts.append(np.asarray(vector[idx:idx + K]))
                idx += K
            else:
                parts.append(None)

        return SteeringProfile(
            horizon=self.horizon,
            alphas=parts[0],
            deltas=parts[1],
            throttles=parts[2]
        )

    def resample(self, num_knots:int, horizon:float=None, planar:bool=None, relax:bool=False, throttle_init:float=3.0):
        """Method to resample the profile on a new knot grid.

        Parameters
        ----------
        num_knots : int
            Number of knots of the new profile.
        horizon : float, optional
            Time span of the new knots. Default is the current horizon.
        planar : bool, optional
            Option to drop (``True``) or add (``False``) the out-of-plane angles. Default keeps the current structure.
        relax : bool, default=False
            Option to include throttle variables.
        throttle_init : float, default=3.0
            Initial throttle variable when the throttles are added.

        Returns
        -------
        profile : :class:`ckm.systems.controls.SteeringProfile`
            New profile.
        """

        horizon = self.horizon if horizon is None else horizon
        planar = self.planar if planar is None else planar
        ts = np.linspace(0.0, horizon, num_knots)

        def sample(values):
            return _get_spline(self.knots, values)(np.minimum(ts, self.horizon))

        return SteeringProfile(
            horizon=horizon,
            alphas=sample(self.alphas),
            deltas=None if planar else (sample(self.deltas) if self.deltas is not None else np.zeros(num_knots)),
            throttles=(sample(self.throttles) if self.throttles is not None else np.full(num_knots, throttle_init)) if relax else None
        )

    @classmethod
    def constant(cls, alpha:float, num_knots:int, horizon:float, planar:bool=True):
        """Method to obtain a profile with a constant in-plane angle."""

        return cls(
            horizon=horizon,
            alphas=np.full(num_knots, alpha),
            deltas=None if planar else np.zeros(num_knots)
        )

def _get_spline(knots, values):
    # cubic spline, linear for two knots
    if len(knots) < 3:
        return sintp.interp1d(knots, values, kind='linear', fill_value='extrapolate')
    return sintp.CubicSpline(knots, values, bc_type='not-a-knot')

class SplineSteeringControl(ControlLaw):
    r"""Class for a full-thrust control steered by spline-interpolated angles.

    The thrust is :math:`\tau \sigma(t) (\cos \delta (\cos \alpha \hat{v} + \sin \alpha \hat{n}) + \sin \delta \hat{h})` in the frame of :func:`ckm.systems.controls.get_steering_frame`, where :math:`\sigma = (1 + \tanh k) / 2` is the throttle, unity by default.

    Parameters
    ----------
    tau : float
        Thrust magnitude in N.
    profile : :class:`ckm.systems.controls.SteeringProfile`
        Knot values of the angles.
    """

    def __init__(self, tau:float, profile:SteeringProfile):
        """Class constructor for SplineSteeringControl."""

        super().__init__(ControlKind.STEERING_FUNCTION)
        self.tau = float(tau)
        self.profile = profile
        self.horizon = profile.horizon

        # interpolators
        knots = profile.knots
        self.func_alpha = _get_spline(knots, profile.alphas)
        self.func_delta = _get_spline(knots, profile.deltas) if profile.deltas is not None else None
        self.func_throttle = _get_spline(knots, profile.throttles) if profile.throttles is not None else None

    def get_throttle(self, t:float):
        """Method to obtain the throttle in ``(0, 1]`` at a given time."""

        if self.func_throttle is None:
            return 1.0
        return 0.5 * (1.0 + np.tanh(float(self.func_throttle(min(t, self.horizon)))))

    def __call__(self, t, r, v, m):
        # clamp time
        _t = min(t, self.horizon)
        alpha = float(self.func_alpha(_t))

        # frame
        v_hat, n_hat, h_hat = get_steering_frame(r, v)
        u = np.cos(alpha) * v_hat + np.sin(alpha) * n_hat
        if self.func_delta is not None:
            delta = float(self.func_delta(_t))
            u = np.cos(delta) * u + np.sin(delta) * h_hat

        return self.tau * self.get_throttle(t) * u
