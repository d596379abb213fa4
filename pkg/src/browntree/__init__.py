"""Exact laws of the height and diameter of the Brownian tree, with Monte
Carlo validation against finite random trees and discretized excursions."""

from . import laplace, laws, montecarlo, series
from .errors import (
    BracketFailure,
    BrownTreeError,
    DomainError,
    NonConvergence,
    NotATree,
    QuadratureFailure,
)
from .laws import DistLaw, LawKind, MomentResult, QuantileQuery
from .series import (
    JointArgs,
    Representation,
    SeriesEval,
    SeriesSpec,
    ThetaCoeff,
    jacobi_check,
    joint_cdf,
    joint_survival,
    joint_survival_complement,
)

__version__ = "0.1.0"

__all__ = [
    "laplace",
    "laws",
    "montecarlo",
    "series",
    "BracketFailure",
    "BrownTreeError",
    "DomainError",
    "NonConvergence",
    "NotATree",
    "QuadratureFailure",
    "DistLaw",
    "LawKind",
    "MomentResult",
    "QuantileQuery",
    "JointArgs",
    "Representation",
    "SeriesEval",
    "SeriesSpec",
    "ThetaCoeff",
    "jacobi_check",
    "joint_cdf",
    "joint_survival",
    "joint_survival_complement",
    "__version__",
]
