"""Exception hierarchy shared by all modules."""


class BesselPDError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BesselPDError, ValueError):
    """An argument lies outside the admissible domain of an operation."""


class DivergenceError(BesselPDError, ArithmeticError):
    """A weighted integral was detected to diverge."""


class BracketError(BesselPDError, ValueError):
    """A root-finding bracket does not contain a sign change."""


class ConfigurationError(BesselPDError, ValueError):
    """Inconsistent or infeasible configuration (node separation, scenario ids, ...)."""


class EvaluationError(BesselPDError, RuntimeError):
    """A user-supplied function failed while filling a Gram matrix."""

    def __init__(self, message, pair=None, difference=None):
        super().__init__(message)
        self.pair = pair
        self.difference = difference
