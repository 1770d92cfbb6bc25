"""Monte Carlo Rademacher averages and the concentration bounds built on them."""

from .bounds import BoundResult, Method
from .class_eval import (
    ClassStats,
    EvaluationMatrix,
    SignMatrix,
    class_stats,
    load_csv,
    mcera,
    read_csv,
)
from .errors import CapacityError, ValidationError

__all__ = [
    "BoundResult",
    "CapacityError",
    "ClassStats",
    "EvaluationMatrix",
    "Method",
    "SignMatrix",
    "ValidationError",
    "class_stats",
    "load_csv",
    "mcera",
    "read_csv",
]

__version__ = "0.1.0"
