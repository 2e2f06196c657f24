"""HWS-ELJ - modeling toolkit for helically wound electrostatic layer jamming."""

from importlib.metadata import version

try:
    __version__ = version("hws-elj")
except Exception:
    # Fallback for development/editable installs
    __version__ = "0.0.0.dev"

__author__ = "HWS-ELJ contributors"
__license__ = "BSD-3-Clause"

from .cli import app
from .exceptions import (
    DomainError,
    FitError,
    HwsEljError,
    InfiniteStiffnessError,
    ModelRangeError,
    NoEquilibriumError,
    NumericalError,
    SensorLogError,
    UndefinedRatioError,
    ValidationError,
)

__all__ = [
    "__version__",
    "__author__",
    "__license__",
    "app",
    "HwsEljError",
    "ValidationError",
    "DomainError",
    "ModelRangeError",
    "NumericalError",
    "UndefinedRatioError",
    "NoEquilibriumError",
    "InfiniteStiffnessError",
    "SensorLogError",
    "FitError",
]
