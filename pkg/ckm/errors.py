#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""Module containing the exceptions raised by the toolbox.

Invalid inputs raise subclasses of both :class:`ckm.errors.CKMError` and :class:`ValueError`, whereas numerical failures of the propagators and solvers raise subclasses of both :class:`ckm.errors.CKMError` and :class:`RuntimeError`.
"""

__name__ = 'ckm.errors'
__authors__ = ["CKM Developers"]
__created__ = "2026-09-02"
__updated__ = "2026-10-19"

class CKMError(Exception):
    """Base class for all exceptions raised by the toolbox."""

# invalid inputs
class NotPeriodic(CKMError, ValueError):
    """State is not on an elliptic orbit (non-negative energy or zero angular momentum)."""

class ZeroVelocity(CKMError, ValueError):
    """Velocity vanishes where a direction is required."""

class DegenerateBasis(CKMError, ValueError):
    """Plane basis vectors are not orthonormal."""

class SingularElements(CKMError, ValueError):
    """Classical orbital elements are undefined for a circular or equatorial state."""

class NonPositiveW(CKMError, ValueError):
    """Equinoctial radius factor ``W`` is not positive."""

class OriginSingularity(CKMError, ValueError):
    """Position is too close to the origin."""

class NonPositiveMass(CKMError, ValueError):
    """Mass is not positive."""

class BoundViolated(CKMError, ValueError):
    """Thrust or acceleration exceeds its admissible bound."""

class EndpointOutsideRegion(CKMError, ValueError):
    """Endpoint of a path does not lie in the requested region."""

class NotInPMinus(CKMError, ValueError):
    """State is not in the unstable periodic region."""

class MissingTrajectory(CKMError, ValueError):
    """Artifact does not contain a trajectory."""

class ScenarioError(CKMError, ValueError):
    """Invalid scenario file.

    Parameters
    ----------
    message : str
        Description of the error.
    field : str, optional
        Dotted name of the offending field.
    """

    def __init__(self, message:str, field:str=None):
        super().__init__(message if field is None else "{}: {}".format(field, message))
        self.field = field

# numerical failures
class StepSizeUnderflow(CKMError, RuntimeError):
    """Integrator could not proceed with a positive step size."""

class GramianSingular(CKMError, RuntimeError):
    """Controllability Gramian is not invertible."""

class EventNeverFires(CKMError, RuntimeError):
    """Terminal event did not occur before the time cap."""

class NoConvergence(CKMError, RuntimeError):
    """Optimizer did not converge.

    Parameters
    ----------
    message : str
        Description of the error.
    diagnostics : dict, optional
        Diagnostics of the failed run.
    """

    def __init__(self, message:str, diagnostics:dict=None):
        super().__init__(message)
        self.diagnostics = dict() if diagnostics is None else diagnostics

class BracketFailure(CKMError, RuntimeError):
    """No sign change of the shooting function after the bracket expansions.

    Parameters
    ----------
    message : str
        Description of the error.
    history : list, optional
        Bracket records evaluated before the failure.
    """

    def __init__(self, message:str, history:list=None):
        super().__init__(message)
        self.history = list() if history is None else history

class InnerSolverFailure(CKMError, RuntimeError):
    """Inner optimal control solve failed during the bisection.

    Parameters
    ----------
    message : str
        Description of the error.
    tau : float
        Thrust bound at which the inner solver failed.
    """

    def __init__(self, message:str, tau:float):
        super().__init__("{} (tau = {} N)".format(message, tau))
        self.tau = tau
