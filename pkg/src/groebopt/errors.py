"""Exception hierarchy shared by every module.

Each class carries a stable ``code`` string that the command line front end
prints in its structured error report.
"""


class GroebOptError(Exception):
    code = "error"


class ParseError(GroebOptError, ValueError):
    code = "parse_error"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class RingMismatchError(GroebOptError, ValueError):
    code = "ring_mismatch"


class ResourceLimitError(GroebOptError):
    code = "resource_limit"


class InfeasibleError(GroebOptError):
    code = "infeasible"


class InfiniteQuotientError(GroebOptError):
    code = "infinite_quotient"


class PositiveDimensionalError(GroebOptError):
    code = "positive_dimensional"


class OrderError(GroebOptError, ValueError):
    code = "order_error"


class NoReductionError(GroebOptError):
    """No quadratic combination of basis elements satisfies the requested constraints."""

    code = "no_reduction"
