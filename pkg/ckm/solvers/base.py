#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module containing the trajectories, the events and the parallel helpers shared by the solvers."""

__name__ = 'ckm.solvers.base'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-05"
__updated__ = "2026-10-18"

# dependencies
from dataclasses import dataclass, field
import concurrent.futures as cf
import enum
import logging
import multiprocessing as mp
import numpy as np
import os

# ckm modules
from ..core import MU, SatelliteState, StateVector, eccentricity, is_colinear, perigee_apogee, specific_energy
from ..systems.base import Direction

# module logger
logger = logging.getLogger(__name__)

class EventKind(enum.Enum):
    """Kind of a propagation event."""

    PERIGEE_MATCH = 'PerigeeMatch'
    """Radius equals the perigee distance of the osculating orbit."""
    ATMOSPHERE_CROSSING = 'AtmosphereCrossing'
    """Radius decreases through the atmosphere radius."""
    MASS_FLOOR = 'MassFloor'
    """Mass decreases through the dry mass."""

class TerminalReason(enum.Enum):
    """Reason for the end of a propagation."""

    TIME_EXHAUSTED = 'TimeExhausted'
    PERIGEE_MATCH = 'PerigeeMatch'
    ATMOSPHERE_CROSSING = 'AtmosphereCrossing'
    MASS_FLOOR = 'MassFloor'

@dataclass(frozen=True)
class Event:
    """Event monitored during a propagation.

    Parameters
    ----------
    kind : :class:`ckm.solvers.base.EventKind`
        Kind of the event.
    terminal : bool, default=True
        Option to stop the propagation at the first occurrence.
    """

    kind: EventKind
    terminal: bool = True

@dataclass(frozen=True, eq=False)
class EventRecord:
    """Occurrence of an event.

    Parameters
    ----------
    t : float
        Time of the occurrence in s.
    kind : :class:`ckm.solvers.base.EventKind`
        Kind of the event.
    residual : float
        Value of the monitored quantity at the located time, in m (or kg for the mass floor). For the perigee match, this is ``||r|| - r_p``.
    state : :class:`ckm.core.SatelliteState`
        State at the located time.
    """

    t: float
    kind: EventKind
    residual: float
    state: SatelliteState

@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time-sampled controlled path.

    Parameters
    ----------
    t : numpy.ndarray
        Strictly increasing times in s with shape ``(n, )``.
    y : numpy.ndarray
        Positions, velocities and masses with shape ``(n, 7)``.
    tau : numpy.ndarray
        Thrusts in N (accelerations in m/s^2 for the normalized direction) with shape ``(n, 3)``.
    events : tuple
        Located :class:`ckm.solvers.base.EventRecord` sorted by time.
    terminal_reason : :class:`ckm.solvers.base.TerminalReason`
        Reason for the end of the propagation.
    direction : :class:`ckm.systems.base.Direction`
        Direction of the dynamics.
    """

    t: np.ndarray
    y: np.ndarray
    tau: np.ndarray
    events: tuple = field(default_factory=tuple)
    terminal_reason: TerminalReason = TerminalReason.TIME_EXHAUSTED
    direction: Direction = Direction.FORWARD

    def __post_init__(self):
        for key in ['t', 'y', 'tau']:
            array = np.array(getattr(self, key), dtype=np.float64)
            array.setflags(write=False)
            object.__setattr__(self, key, array)
        object.__setattr__(self, 'events', tuple(sorted(self.events, key=lambda record: record.t)))
        assert self.y.shape == (len(self.t), 7) and self.tau.shape == (len(self.t), 3), "Samples should have consistent shapes"

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        """list : Samples formatted as ``(t, state, tau)``."""

        return [(self.t[i], SatelliteState.from_array(self.y[i]), self.tau[i]) for i in range(len(self.t))]

    @property
    def final_state(self):
        """:class:`ckm.core.SatelliteState` : State at the last sample."""

        return SatelliteState.from_array(self.y[-1])

    @property
    def t_f(self):
        """float : Time of the last sample in s."""

        return float(self.t[-1])

    def events_of(self, kind:EventKind):
        """Method to obtain the occurrences of a kind of event.

        Parameters
        ----------
        kind : :class:`ckm.solvers.base.EventKind`
            Kind of the event.

        Returns
        -------
        records : list
            Occurrences sorted by time.
        """

        return [record for record in self.events if record.kind is kind]

    def reversed(self):
        """Method to obtain the time-reversal ``(t_f - t, r, - v, m)`` of the trajectory.

        The reversal of a run of the mass-growing backward system is a run of the mass-depleting forward system with the same thrust history, and vice-versa.

        Returns
        -------
        trajectory : :class:`ckm.solvers.base.Trajectory`
            Reversed trajectory.
        """

        # reverse samples
        t_f = self.t[-1]
        y = self.y[::-1].copy()
        y[:, 3:6] *= - 1.0

        # reverse events
        events = list()
        for record in self.events:
            _y = record.state.to_array()
            _y[3:6] *= - 1.0
            events.append(EventRecord(
                t=t_f - record.t,
                kind=record.kind,
                residual=record.residual,
                state=SatelliteState.from_array(_y)
            ))

        return Trajectory(
            t=t_f - self.t[::-1],
            y=y,
            tau=self.tau[::-1].copy(),
            events=tuple(events),
            terminal_reason=self.terminal_reason,
            direction={
                Direction.FORWARD: Direction.BACKWARD_MASS_GROWING,
                Direction.BACKWARD_MASS_GROWING: Direction.FORWARD
            }.get(self.direction, self.direction)
        )

    def to_array(self, mu:float=MU):
        """Method to obtain the table of the samples.

        The columns are ``t, rx, ry, rz, vx, vy, vz, m, taux, tauy, tauz, rp, ra, e, E``. The perigee and apogee distances are ``NaN`` for samples outside the periodic region.

        Parameters
        ----------
        mu : float, optional
            Gravitational parameter in m^3/s^2.

        Returns
        -------
        table : numpy.ndarray
            Table with shape ``(n, 15)``.
        """

        table = np.empty((len(self.t), 15), dtype=np.float64)
        table[:, 0] = self.t
        table[:, 1:8] = self.y
        table[:, 8:11] = self.tau
        for i in range(len(self.t)):
            table[i, 11:] = get_orbit_columns(StateVector.from_array(self.y[i]), mu)

        return table

def get_orbit_columns(x:StateVector, mu:float=MU):
    """Function to obtain the perigee distance, the apogee distance, the eccentricity and the energy of a state.

    Parameters
    ----------
    x : :class:`ckm.core.StateVector`
        State of the satellite.
    mu : float, optional
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    columns : numpy.ndarray
        Values ``(r_p, r_a, e, E)``.
    """

    E = specific_energy(x, mu)
    e = eccentricity(x, mu)
    if E < 0.0 and not is_colinear(x):
        r_p, r_a = perigee_apogee(x, mu)
    else:
        r_p, r_a = np.nan, np.nan

    return np.array([r_p, r_a, e, E])

def run_in_processes(func, payloads:list, num_processes:int=None):
    """Function to evaluate a picklable function over payloads in parallel processes.

    The processes are spawned and the results are returned in the order of the payloads.

    Parameters
    ----------
    func : callable
        Module-level function formatted as ``func(payload)``.
    payloads : list
        Arguments for each evaluation.
    num_processes : int, optional
        Number of processes. If not provided, it is throttled by the number of available cores.

    Returns
    -------
    results : list
        Results of each evaluation.
    """

    # handle trivial case
    if len(payloads) <= 1:
        return [func(payload) for payload in payloads]

    num_processes = min(len(payloads), num_processes if num_processes is not None else (os.cpu_count() or 1))
    logger.debug("Running {} evaluations in {} processes".format(len(payloads), num_processes))

    with cf.ProcessPoolExecutor(max_workers=num_processes, mp_context=mp.get_context('spawn')) as executor:
        return list(executor.map(func, payloads))
