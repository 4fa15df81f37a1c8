"""Exception hierarchy shared by all modules."""


class ChebotarevError(Exception):
    """Base class."""


class DomainError(ChebotarevError, ValueError):
    """Argument outside the region where the function or bound is defined."""


class PoleProximity(DomainError):
    """Input rectangle contains a pole."""


class PrecisionError(ChebotarevError):
    """Working precision too low to decide."""


class ThresholdError(DomainError):
    """x below the validity threshold of an unconditional bound."""

    def __init__(self, message: str, ln_threshold=None):
        super().__init__(message)
        self.ln_threshold = ln_threshold


class RegionError(DomainError):
    """Point outside every region covered by a lemma."""


class BudgetExceeded(ChebotarevError):
    """Sieve request larger than the configured memory budget."""


class ParseError(ChebotarevError, ValueError):
    """Malformed expression, zero table or configuration; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class MonotonicityError(ParseError):
    """Zero ordinates not strictly increasing."""


class WindowError(DomainError):
    """Requested window reaches beyond the verified height of a zero table."""


class UnsupportedFormat(ChebotarevError, ValueError):
    """Unknown output format."""


class NotFound(ChebotarevError, LookupError):
    """Unknown identifier."""
