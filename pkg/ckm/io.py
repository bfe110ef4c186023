#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module for miscellaneous IO operations."""

__name__ = 'ckm.io'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-02"
__updated__ = "2026-10-19"

# dependencies
import json
import logging
import numpy as np
import os
import time

# ckm modules
from .errors import MissingTrajectory

# columns of the exported trajectory tables
TRAJECTORY_COLUMNS = ['t', 'rx', 'ry', 'rz', 'vx', 'vy', 'vz', 'm', 'taux', 'tauy', 'tauz', 'rp', 'ra', 'e', 'E']
"""list : Columns of the trajectory CSV files."""
FIGURE_KINDS = {
    'r_and_rp_vs_time': ['t', 'r', 'rp', 'rc'],
    'planar_trajectory': ['x', 'y', 'circle_x', 'circle_y']
}
"""dict : Columns of the figure data files for each kind."""
CSV_FORMAT = '%.15g'
"""str : Number format of the CSV files."""

class Updater():
    r"""Class to update the logs and progress callbacks.

    Initializes ``logger`` and ``cb_update``.

    Parameters
    ----------
    name : str
        Name of the module or class.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.
    parallel : bool, default=False
        Option to format outputs when running in parallel.
    p_index : int, default=0
        Index of the process.
    p_start : float, optional
        Time at which the process was started. If not provided, the value is initialized to current time.
    """

    def __init__(self, name:str, cb_update=None, parallel:bool=False, p_index:int=0, p_start:float=None):
        """Class constructor for Updater."""

        # set constants
        self.logger = logging.getLogger(name)
        self.cb_update = cb_update
        self.parallel = parallel
        self.p_index = p_index
        self.p_start = p_start if p_start is not None else time.time()

        # timer
        self.time = time.time()

    def update_info(self, status:str):
        """Method to update status information.

        Parameters
        ----------
        status : str
            Status information.
        """

        if not self.parallel:
            # update console
            self.logger.info(status)
            # update callback
            if self.cb_update is not None:
                self.cb_update(status=status, progress=None, reset=True)

    def update_debug(self, message:str):
        """Method to update debug message.

        Parameters
        ----------
        message : str
            Debug message.
        """

        if not self.parallel:
            self.logger.debug(message)

    def update_warning(self, message:str):
        """Method to update warning message.

        Warnings are displayed even when running in parallel.

        Parameters
        ----------
        message : str
            Warning message.
        """

        self.logger.warning(("[{}] ".format(self.p_index) if self.parallel else "") + message)

    def update_progress(self, pos:int, dim:int, status:str, reset:bool=False):
        """Method to update progress.

        Parameters
        ----------
        pos : int
            Index of current iteration.
        dim : int
            Total number of iterations.
        status : str
            Status information.
        reset : bool, default=False
            Option to reset the console or callback.
        """

        # calculate progress
        if dim > 1 and pos is not None:
            progress = float(pos) / float(dim - 1) * 100.0
        else:
            progress = float(pos) / float(dim) * 100.0 if pos is not None else 0.0

        # handle status
        status = status if status is not None else ""

        # current time
        _time = time.time()

        # display throttled progress
        if _time - self.time > 1.0 or reset or progress == 100.0 or pos is None:
            if self.parallel:
                self.logger.debug("{:0.3f}s\t[{}] {:0.2f}%".format(_time - self.p_start, self.p_index, progress))
            else:
                self.logger.info(status + (": Progress = {:3.2f}%".format(progress) if pos is not None else ""))
                if self.cb_update is not None:
                    self.cb_update(status=status, progress=progress if pos is not None else None, reset=reset)

            # update time
            self.time = _time

    def create_directory(self, file_path:str):
        """Method to create the directory of a data file.

        Parameters
        ----------
        file_path : str
            Full path of the file.
        """

        # get directory
        file_dir = os.path.dirname(file_path)
        if file_dir == '':
            return

        # create if missing
        if not os.path.isdir(file_dir):
            os.makedirs(file_dir, exist_ok=True)
            self.update_debug(
                message="Directory {} created".format(file_dir)
            )

    def save_csv(self, file_path:str, array, columns:list):
        """Method to save a table to a CSV file.

        Parameters
        ----------
        file_path : str
            Full path of the file.
        array : numpy.ndarray
            Table to save with shape ``(num_rows, len(columns))``.
        columns : list
            Names of the columns.
        """

        # validate shape
        array = np.atleast_2d(np.asarray(array, dtype=np.float64))
        assert array.shape[1] == len(columns), "Table should contain {} columns".format(len(columns))

        # save
        self.create_directory(file_path)
        np.savetxt(file_path, array, fmt=CSV_FORMAT, delimiter=',', header=','.join(columns), comments='')

        # update log
        self.update_debug(
            message="Table with {} rows saved to {}".format(array.shape[0], file_path)
        )

    def load_csv(self, file_path:str):
        """Method to load a table from a CSV file.

        Parameters
        ----------
        file_path : str
            Full path of the file.

        Returns
        -------
        columns : list
            Names of the columns.
        array : numpy.ndarray
            Loaded table.
        """

        with open(file_path, 'r') as file:
            columns = file.readline().strip().split(',')

        return columns, np.atleast_2d(np.loadtxt(file_path, delimiter=',', skiprows=1))

    def save_records(self, file_path:str, records:list):
        """Method to save records as JSON lines.

        Parameters
        ----------
        file_path : str
            Full path of the file.
        records : list
            Records as dictionaries of JSON-serializable values.
        """

        self.create_directory(file_path)
        with open(file_path, 'w') as file:
            for record in records:
                file.write(json.dumps(record, sort_keys=True) + '\n')

        # update log
        self.update_debug(
            message="{} records saved to {}".format(len(records), file_path)
        )

    def load_records(self, file_path:str):
        """Method to load records from a JSON lines file.

        Parameters
        ----------
        file_path : str
            Full path of the file.

        Returns
        -------
        records : list
            Records as dictionaries.
        """

        with open(file_path, 'r') as file:
            return [json.loads(line) for line in file if line.strip() != '']

def get_figure_data(trajectory, kind:str, r_c:float, mu:float):
    """Function to obtain the data underlying a trajectory figure.

    Parameters
    ----------
    trajectory : :class:`ckm.solvers.base.Trajectory`
        Trajectory to extract the data from.
    kind : {``'r_and_rp_vs_time'``, ``'planar_trajectory'``}
        Kind of the figure. ``'r_and_rp_vs_time'`` contains the radius, the perigee distance and the atmosphere radius at each time and ``'planar_trajectory'`` contains the in-plane coordinates of the positions along with samples of the atmosphere circle.
    r_c : float
        Atmosphere radius in meters.
    mu : float
        Gravitational parameter in m^3/s^2.

    Returns
    -------
    columns : list
        Names of the columns.
    array : numpy.ndarray
        Figure data.
    """

    # validate parameters
    assert kind in FIGURE_KINDS, "Parameter ``kind`` should assume one of ``{}``".format(list(FIGURE_KINDS.keys()))
    if trajectory is None or len(trajectory) == 0:
        raise MissingTrajectory("Artifact contains no trajectory samples")

    # extract frequently used variables
    table = trajectory.to_array(mu=mu)
    rs = table[:, 1:4]

    if kind == 'r_and_rp_vs_time':
        array = np.column_stack((table[:, 0], np.linalg.norm(rs, axis=1), table[:, 11], np.full(len(table), r_c)))
    else:
        # in-plane basis from the first sample
        b_1 = rs[0] / np.linalg.norm(rs[0])
        h = np.cross(rs[0], table[0, 4:7])
        h_norm = np.linalg.norm(h)
        b_2 = np.cross(h / h_norm, b_1) if h_norm > 0.0 else np.array([-b_1[1], b_1[0], 0.0]) / max(np.hypot(b_1[0], b_1[1]), 1e-300)
        phis = np.linspace(0.0, 2.0 * np.pi, len(table))
        array = np.column_stack((rs.dot(b_1), rs.dot(b_2), r_c * np.cos(phis), r_c * np.sin(phis)))

    return FIGURE_KINDS[kind], array

def emit_figure_data(trajectory, kind:str, file_path:str, r_c:float, mu:float, cb_update=None):
    """Function to write the data underlying a trajectory figure to a CSV file.

    Parameters
    ----------
    trajectory : :class:`ckm.solvers.base.Trajectory`
        Trajectory to extract the data from.
    kind : {``'r_and_rp_vs_time'``, ``'planar_trajectory'``}
        Kind of the figure. Refer to :func:`ckm.io.get_figure_data`.
    file_path : str
        Full path of the CSV file.
    r_c : float
        Atmosphere radius in meters.
    mu : float
        Gravitational parameter in m^3/s^2.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.

    Returns
    -------
    array : numpy.ndarray
        Figure data written to the file.
    """

    columns, array = get_figure_data(
        trajectory=trajectory,
        kind=kind,
        r_c=r_c,
        mu=mu
    )
    Updater(
        name='ckm.io',
        cb_update=cb_update
    ).save_csv(
        file_path=file_path,
        array=array,
        columns=columns
    )

    return array
