"""
Helpers shared by the tests
"""
import os

import numpy as np

from ckm.core import MU, PhysicalConstants, StateVector

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "ckm", "scenarios")

# light settings of the optimal control solver
OCP_PARAMS = {
    "knots_initial": 4,
    "knots_final": 4,
    "starts": [0.0],
    "opt_maxiter": 5,
    "search_rtol": 1e-9,
}


def scenario_path(name):
    return os.path.join(SCENARIO_DIR, name + ".yaml")


def random_periodic_states(num, seed, constants=PhysicalConstants()):
    """Sample states in the stable region with random orbital planes."""

    rng = np.random.default_rng(seed)
    states = list()
    for _ in range(num):
        r_p = constants.r_c + rng.uniform(5.0e4, 2.0e6)
        e = rng.uniform(1e-3, 0.3)
        a = r_p / (1.0 - e)
        p = a * (1.0 - e**2)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        r_pf = p / (1.0 + e * np.cos(theta)) * np.array([np.cos(theta), np.sin(theta), 0.0])
        v_pf = np.sqrt(MU / p) * np.array([-np.sin(theta), e + np.cos(theta), 0.0])
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(q) < 0.0:
            q[:, 0] = -q[:, 0]
        states.append(StateVector(r=q.dot(r_pf), v=q.dot(v_pf)))
    return states
