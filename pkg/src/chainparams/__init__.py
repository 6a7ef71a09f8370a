"""Exact computations on stability parameters for holomorphic chains."""

from .chain_core import (
    ChainType,
    ProblemInstance,
    StabilityParameter,
    TauVector,
    TypeSplit,
    alpha_slope,
    chi_holomorphic,
    dual_type,
    dualize,
    moduli_dimension,
)
from .errors import AmbiguityError, CapExceededError, ChainParamsError, PreconditionError, ValidationError
from .exact_geometry import AffineFunctional, Box, Halfspace

__all__ = [name for name in dir() if not name.startswith("_")]
