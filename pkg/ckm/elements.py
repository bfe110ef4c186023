#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module to convert between cartesian states, classical orbital elements and modified equinoctial orbital elements.

The semi-latus rectum ``P`` of the modified equinoctial elements is a length in meters, so that ``P = ||h||^2 / mu``.

References
----------

.. [1] M. J. H. Walker, B. Ireland and J. Owens, *A Set of Modified Equinoctial Orbit Elements*, Celestial Mechanics **36**, 409 (1985).
"""

__name__ = 'ckm.elements'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-03"
__updated__ = "2026-10-14"

# dependencies
from dataclasses import dataclass
import numpy as np

# ckm modules
from .core import MU, StateVector, angular_momentum, is_colinear, laplace_vector, specific_energy
from .errors import NonPositiveW, NotPeriodic, SingularElements

# set constants
SINGULAR_TOL = 1e-10
"""float : Threshold of the eccentricity and the sine of the inclination below which the classical elements are singular."""
TWO_PI = 2.0 * np.pi

@dataclass(frozen=True)
class Coe:
    """Classical orbital elements.

    Angles are normalized to ``[0, 2 pi)`` on construction.

    Parameters
    ----------
    a : float
        Semi-major axis in m.
    e : float
        Eccentricity.
    i : float
        Inclination in rad.
    omega : float
        Argument of perigee in rad.
    Omega : float
        Right ascension of the ascending node in rad.
    theta : float
        True anomaly in rad.
    """

    a: float
    e: float
    i: float
    omega: float
    Omega: float
    theta: float

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError("Semi-major axis should be positive")
        if not 0.0 <= self.e < 1.0:
            raise ValueError("Eccentricity should lie in [0, 1)")
        if not 0.0 <= self.i <= np.pi:
            raise ValueError("Inclination should lie in [0, pi]")
        for key in ['omega', 'Omega', 'theta']:
            object.__setattr__(self, key, float(np.mod(getattr(self, key), TWO_PI)))

@dataclass(frozen=True)
class Meoe:
    """Modified equinoctial orbital elements.

    Parameters
    ----------
    P : float
        Semi-latus rectum in m.
    ex : float
        First eccentricity component.
    ey : float
        Second eccentricity component.
    hx : float
        First inclination component.
    hy : float
        Second inclination component.
    l : float
        True longitude in rad.
    """

    P: float
    ex: float
    ey: float
    hx: float
    hy: float
    l: float

    def __post_init__(self):
        if not self.P > 0.0:
            raise ValueError("Semi-latus rectum should be positive")
        if not self.ex**2 + self.ey**2 < 1.0:
            raise ValueError("Eccentricity components should lie inside the unit disk")

def coe_from_state(x:StateVector, mu:float=MU):
    """Function to obtain the classical orbital elements of a state.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        Periodic state with non-zero eccentricity and inclination.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    coe : :class:`ckm.elements.Coe`
        Classical orbital elements.
    """

    # validate state
    if specific_energy(x, mu) >= 0.0 or is_colinear(x):
        raise NotPeriodic("Classical elements require an elliptic state")

    # first integrals
    h = angular_momentum(x)
    h_hat = h / np.linalg.norm(h)
    L = laplace_vector(x, mu)
    e = np.linalg.norm(L) / mu
    i = np.arccos(np.clip(h_hat[2], -1.0, 1.0))

    # singular charts
    if e < SINGULAR_TOL or np.sin(i) < SINGULAR_TOL:
        raise SingularElements("Classical elements are singular (e = {:g}, i = {:g} rad), use the equinoctial elements".format(e, i))

    # node vector
    n = np.cross([0.0, 0.0, 1.0], h)

    return Coe(
        a=- mu / (2.0 * specific_energy(x, mu)),
        e=e,
        i=i,
        omega=np.arctan2(np.dot(np.cross(n, L), h_hat), np.dot(n, L)),
        Omega=np.arctan2(n[1], n[0]),
        theta=np.arctan2(np.dot(np.cross(L, x.r), h_hat), np.dot(L, x.r))
    )

def state_from_coe(c:Coe, mu:float=MU):
    """Function to obtain the cartesian state of classical orbital elements.

    Parameters
    ----------
    c : :class:`ckm.elements.Coe`
        Classical orbital elements.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    x : :class:`ckm.core.StateVector`
        Cartesian state.
    """

    # perifocal state
    p = c.a * (1.0 - c.e**2)
    r_pf = p / (1.0 + c.e * np.cos(c.theta)) * np.array([np.cos(c.theta), np.sin(c.theta), 0.0])
    v_pf = np.sqrt(mu / p) * np.array([- np.sin(c.theta), c.e + np.cos(c.theta), 0.0])

    # rotation R3(Omega) R1(i) R3(omega)
    cO, sO = np.cos(c.Omega), np.sin(c.Omega)
    ci, si = np.cos(c.i), np.sin(c.i)
    co, so = np.cos(c.omega), np.sin(c.omega)
    R = np.array([
        [cO * co - sO * so * ci, - cO * so - sO * co * ci, sO * si],
        [sO * co + cO * so * ci, - sO * so + cO * co * ci, - cO * si],
        [so * si, co * si, ci]
    ])

    return StateVector(
        r=R.dot(r_pf),
        v=R.dot(v_pf)
    )

def meoe_from_coe(c:Coe):
    """Function to obtain the modified equinoctial elements of classical orbital elements."""

    # extract frequently used variables
    varpi = c.omega + c.Omega
    tan_half_i = np.tan(c.i / 2.0)

    return Meoe(
        P=c.a * (1.0 - c.e**2),
        ex=c.e * np.cos(varpi),
        ey=c.e * np.sin(varpi),
        hx=tan_half_i * np.cos(c.Omega),
        hy=tan_half_i * np.sin(c.Omega),
        l=float(np.mod(varpi + c.theta, TWO_PI))
    )

def get_equinoctial_frame(hx:float, hy:float):
    """Function to obtain the unit vectors ``f`` and ``g`` spanning the orbital plane of equinoctial elements.

    Parameters
    ----------
    hx : float
        First inclination component.
    hy : float
        Second inclination component.

    Returns
    -------
    f_hat : numpy.ndarray
        First in-plane unit vector.
    g_hat : numpy.ndarray
        Second in-plane unit vector.
    """

    C = 1.0 + hx**2 + hy**2

    return np.array([1.0 + hx**2 - hy**2, 2.0 * hx * hy, - 2.0 * hy]) / C, np.array([2.0 * hx * hy, 1.0 - hx**2 + hy**2, 2.0 * hx]) / C

def state_from_meoe(z:Meoe, mu:float=MU):
    r"""Function to obtain the cartesian state of modified equinoctial elements.

    The position is :math:`r = (P / W) (\cos l \hat{f} + \sin l \hat{g})` with :math:`W = 1 + e_{x} \cos l + e_{y} \sin l` and the velocity is :math:`v = \sqrt{\mu / P} (- (e_{y} + \sin l) \hat{f} + (e_{x} + \cos l) \hat{g})`, where the unit vectors are given by :func:`ckm.elements.get_equinoctial_frame`.

    Parameters
    ----------
    z : :class:`ckm.elements.Meoe`
        Modified equinoctial elements.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    x : :class:`ckm.core.StateVector`
        Cartesian state.
    """

    # extract frequently used variables
    cos_l, sin_l = np.cos(z.l), np.sin(z.l)
    W = 1.0 + z.ex * cos_l + z.ey * sin_l
    if not W > 0.0:
        raise NonPositiveW("Radius factor W = {:g} should be positive".format(W))
    f_hat, g_hat = get_equinoctial_frame(z.hx, z.hy)

    return StateVector(
        r=z.P / W * (cos_l * f_hat + sin_l * g_hat),
        v=np.sqrt(mu / z.P) * (- (z.ey + sin_l) * f_hat + (z.ex + cos_l) * g_hat)
    )

def meoe_from_state(x:StateVector, mu:float=MU):
    """Function to obtain the modified equinoctial elements of a state.

    The elements are computed from the angular momentum and the Laplace vector, which remain regular for circular and equatorial orbits.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        Periodic state which is not retrograde equatorial.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    z : :class:`ckm.elements.Meoe`
        Modified equinoctial elements.
    """

    # validate state
    if specific_energy(x, mu) >= 0.0 or is_colinear(x):
        raise NotPeriodic("Equinoctial elements require an elliptic state")

    # inclination components
    h = angular_momentum(x)
    h_hat = h / np.linalg.norm(h)
    if 1.0 + h_hat[2] < SINGULAR_TOL:
        raise SingularElements("Equinoctial elements are singular for retrograde equatorial orbits")
    hx = - h_hat[1] / (1.0 + h_hat[2])
    hy = h_hat[0] / (1.0 + h_hat[2])

    # in-plane components
    f_hat, g_hat = get_equinoctial_frame(hx, hy)
    L = laplace_vector(x, mu)

    return Meoe(
        P=np.dot(h, h) / mu,
        ex=np.dot(L, f_hat) / mu,
        ey=np.dot(L, g_hat) / mu,
        hx=hx,
        hy=hy,
        l=float(np.mod(np.arctan2(np.dot(x.r, g_hat), np.dot(x.r, f_hat)), TWO_PI))
    )

def meoe_eccentricity(z:Meoe):
    """Function to obtain the eccentricity ``sqrt(ex^2 + ey^2)`` of modified equinoctial elements."""

    return np.hypot(z.ex, z.ey)
