"""Explicit Chebotarev density bounds, their constants, and numerical checks."""

from .errors import (
    BudgetExceeded,
    ChebotarevError,
    DomainError,
    MonotonicityError,
    NotFound,
    ParseError,
    PoleProximity,
    PrecisionError,
    RegionError,
    ThresholdError,
    UnsupportedFormat,
    WindowError,
)
from .numerics import Interval, cf_rationalize

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ChebotarevError",
    "DomainError",
    "Interval",
    "MonotonicityError",
    "NotFound",
    "ParseError",
    "PoleProximity",
    "PrecisionError",
    "RegionError",
    "ThresholdError",
    "UnsupportedFormat",
    "WindowError",
    "__version__",
    "cf_rationalize",
]
