"""Certified location and counting of equilibria of rank-one Kuramoto models.

Quick start::

    from kuramoto_eq import ModelInput, solve
    res = solve(ModelInput([4, -4], [5, 2]))
    res.count            # 2
    res.equilibria[0].theta
"""

from ._backend import BACKEND
from .counting import conjectured_max, constants, even_count, even_max, odd_count, special_case_model, upper_bound
from .errors import KuramotoError, ValidationError
from .interval import Interval, RootRecord, RootStatus, interval_sqrt, newton_all_roots
from .model import Equilibrium, ModelInput, NormalizedModel, normalize, prepare, residual, validate
from .solver import SolveResult, deduplicate, reconstruct_theta, solve, solve_basic, solve_optimized

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Equilibrium",
    "Interval",
    "KuramotoError",
    "ModelInput",
    "NormalizedModel",
    "RootRecord",
    "RootStatus",
    "SolveResult",
    "ValidationError",
    "conjectured_max",
    "constants",
    "deduplicate",
    "even_count",
    "even_max",
    "interval_sqrt",
    "newton_all_roots",
    "normalize",
    "odd_count",
    "prepare",
    "reconstruct_theta",
    "residual",
    "solve",
    "solve_basic",
    "solve_optimized",
    "special_case_model",
    "upper_bound",
    "validate",
]
