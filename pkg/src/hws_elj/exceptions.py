"""Custom exception classes for hws-elj."""


class HwsEljError(Exception):
    """Base exception for all hws-elj errors."""

    code = "error"


class ValidationError(HwsEljError):
    """Raised when a domain value violates one of its invariants."""

    code = "validation"


class DomainError(ValidationError):
    """Raised when an argument lies outside an operation's domain."""

    code = "domain"


class ModelRangeError(HwsEljError):
    """Raised when the model would overflow or a target cannot be reached."""

    code = "range"


class NumericalError(HwsEljError):
    """Raised when a numerical oracle fails to converge."""

    code = "numerical"

    def __init__(self, message: str, achieved_tolerance: float | None = None) -> None:
        super().__init__(message)
        self.achieved_tolerance = achieved_tolerance


class UndefinedRatioError(HwsEljError):
    """Raised when a ratio has a zero denominator (T0 = 0, F_pull = 0)."""

    code = "undefined-ratio"


class NoEquilibriumError(HwsEljError):
    """Raised when the finger cannot balance the applied load."""

    code = "no-equilibrium"


class InfiniteStiffnessError(HwsEljError):
    """Raised when a positive load produces no bend at all."""

    code = "infinite-stiffness"


class SensorLogError(HwsEljError):
    """Raised when a force/torque log cannot be parsed."""

    code = "parse"

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message)
        self.line = line


class FitError(HwsEljError):
    """Raised when a least-squares fit is ill-posed."""

    code = "fit"
