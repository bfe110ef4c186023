#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module containing utility functions for solvers."""

__name__ = 'ckm.utils.solvers'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-19"
__updated__ = "2026-10-17"

# dependencies
import copy
import logging
import numpy as np
import os
import time

# ckm modules
from ..errors import CKMError
from ..loopers import XLooper
from ..solvers.base import run_in_processes
from ..solvers.optimal import OcpScenario, solve_ocp
from ..ui import init_log

# module_logger
logger = logging.getLogger(__name__)

def get_func_shooting(sc:OcpScenario, params:dict={}, cb_update=None):
    """Function to get the function to obtain the shooting function of a scenario.

    Parameters
    ----------
    sc : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    params : dict, optional
        Parameters for the solver. Refer to :class:`ckm.solvers.optimal.OCPSolver` for available parameters.
    cb_update : callable, optional
        Callback function to update status and progress, formatted as ``cb_update(status, progress, reset)``, where ``status`` is a string, ``progress`` is a float and ``reset`` is a boolean.

    Returns
    -------
    get_s : callable
        Function to obtain the shooting function in m, formatted as ``get_s(system_params)`` with the thrust in N under the key ``'tau'``. Failed solves return ``NaN``.
    """

    # function to obtain the shooting function
    def get_s(system_params):
        try:
            return solve_ocp(
                sc=sc,
                tau=system_params['tau'],
                params=params,
                cb_update=cb_update
            ).s
        except CKMError as error:
            logger.warning("Shooting function failed at tau = {} N: {}".format(system_params['tau'], error))
            return np.nan

    return get_s

def run_sweep(sc:OcpScenario, params:dict, solver_params:dict={}, num_processes:int=None, parallel:bool=False, cb_update=None):
    """Function to sweep the shooting function of a scenario over thrust values.

    Parameters
    ----------
    sc : :class:`ckm.solvers.optimal.OcpScenario`
        Scenario of the problem.
    params : dict
        Parameters of the looper with the thrust axis under ``'X'``. Refer to **Notes** of :class:`ckm.loopers.base.BaseLooper` for all available options.
    solver_params : dict, optional
        Parameters of the :class:`ckm.solvers.optimal.OCPSolver`.
    num_processes : int, optional
        Number of slices of the thrust axis run in parallel. If not provided, it is throttled by the number of available cores.
    parallel : bool, default=False
        Option to run the slices in parallel processes.
    cb_update : callable, optional
        Callback function to update status and progress.

    Returns
    -------
    looper : :class:`ckm.loopers.axes.XLooper`
        Instance of the looper with its results.
    """

    # frequently used variables
    p_start = time.time()
    params = dict(params, value_name=params.get('value_name', 's'))

    looper = XLooper(
        func=get_func_shooting(sc, solver_params, cb_update),
        params=params,
        cb_update=cb_update,
        parallel=False
    )

    # load saved results
    if looper.load_results():
        return looper

    # sequential sweep
    val = looper.axes['X']['val']
    if not parallel or len(val) < 2:
        looper.loop()
        looper.save_results()
        return looper

    # handle null value or overflow
    if num_processes is None or num_processes > len(val) or num_processes < 1:
        num_processes = int(min(max((os.cpu_count() or 1) - 2, 1), len(val)))

    # slice and populate arguments
    slices = [s for s in np.array_split(val, num_processes) if len(s) > 0]
    payloads = list()
    for i, _val in enumerate(slices):
        _params = copy.deepcopy(params)
        _params['X'] = {
            'var': looper.axes['X']['var'],
            'val': _val.tolist()
        }
        _params['file_path_prefix'] = None
        payloads.append((sc, solver_params, _params, i, p_start))

    logger.info("Sweeping {} values in {} processes".format(len(val), len(slices)))

    # join values
    results = run_in_processes(run_sweep_instance, payloads, len(slices))
    looper.results = {
        'X': val,
        'V': np.concatenate([result['V'] for result in results])
    }
    looper.save_results()

    return looper

def run_sweep_instance(payload):
    """Function to run a single slice of a sweep.

    Parameters
    ----------
    payload : tuple
        Scenario, solver parameters, looper parameters, index and start time of the process.

    Returns
    -------
    results : dict
        Axes and calculated values of the slice.
    """

    sc, solver_params, params, p_index, p_start = payload

    # initialize logger
    init_log(parallel=True)

    return XLooper(
        func=get_func_shooting(sc, solver_params),
        params=params,
        parallel=True,
        p_index=p_index,
        p_start=p_start
    ).loop()
