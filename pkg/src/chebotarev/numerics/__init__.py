"""Interval arithmetic, special functions and rational rounding."""

from .interval import (
    DEFAULT_PRECISION,
    ComplexInterval,
    Interval,
    e,
    euler_gamma,
    ln2,
    pi,
    to_interval,
)
from .rational import Rational, cf_rationalize, convergents, partial_quotients
from .special import bernoulli, digamma, li_from_2, mellin_truncated, zeta_q, zeta_q_logderiv

__all__ = [
    "DEFAULT_PRECISION",
    "ComplexInterval",
    "Interval",
    "Rational",
    "bernoulli",
    "cf_rationalize",
    "convergents",
    "digamma",
    "e",
    "euler_gamma",
    "li_from_2",
    "ln2",
    "mellin_truncated",
    "partial_quotients",
    "pi",
    "to_interval",
    "zeta_q",
    "zeta_q_logderiv",
]
