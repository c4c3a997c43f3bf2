"""
errors.py - Exception hierarchy for the verification engine
"""


class QSeriesError(Exception):
    """Base class for every error raised by the engine"""


class PoleError(QSeriesError):
    """A denominator factor vanished inside the summation range"""

    def __init__(self, factor: str, where: str = ""):
        self.factor = factor
        self.where = where
        message = f"pole: factor {factor} vanishes"
        if where:
            message += f" at {where}"
        super().__init__(message)


class NonTerminatingError(QSeriesError):
    """A numeric argument was given to a series that does not terminate"""

    def __init__(self, what: str = "series"):
        super().__init__(f"{what} does not terminate; requires formal mode")


class OrderMismatchError(QSeriesError):
    """Two truncated series of different orders were combined"""


class CoincidentNodesError(QSeriesError):
    """Vandermonde nodes x_i are not pairwise distinct"""


class ConstraintError(QSeriesError):
    """A balancing relation could not be solved or does not hold"""


class NotLinearlySolvableError(ConstraintError):
    """The requested slot does not enter the relation to the first power"""

    def __init__(self, slot: str, exponent: int):
        self.slot = slot
        self.exponent = exponent
        super().__init__(
            f"slot '{slot}' has exponent {exponent}: not linearly solvable; choose another slot"
        )


class SamplingError(QSeriesError):
    """Retry budget exhausted while drawing an admissible case"""

    def __init__(self, identity: str, attempts: int, last_failure: str):
        self.identity = identity
        self.attempts = attempts
        self.last_failure = last_failure
        super().__init__(
            f"{identity}: no admissible case after {attempts} attempts (last guard: {last_failure})"
        )


class MappingError(QSeriesError):
    """A bilinear case could not be mapped onto master formula parameters; resample"""


class ConfigurationError(QSeriesError, ValueError):
    """Invalid run configuration (command line or environment)"""
