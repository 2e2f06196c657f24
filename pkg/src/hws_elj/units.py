"""Unit-suffixed quantity parsing.

Configuration and command-line values carry explicit units ("4 mm",
"450 deg", "3 kV"). They are converted to SI here, at the boundary, and
nothing past this module ever sees a non-SI number.
"""

import math
import re
from enum import StrEnum

from .exceptions import ValidationError


class Dimension(StrEnum):
    """Physical dimensions accepted in configuration values."""

    LENGTH = "length"
    ANGLE = "angle"
    VOLTAGE = "voltage"
    FORCE = "force"
    MASS = "mass"
    STIFFNESS = "stiffness"
    FREQUENCY = "frequency"
    ACCELERATION = "acceleration"
    PERMITTIVITY = "permittivity"
    TIME = "time"


# Unit suffix -> SI scale factor, per dimension
UNIT_SCALES: dict[Dimension, dict[str, float]] = {
    Dimension.LENGTH: {"m": 1.0, "cm": 1e-2, "mm": 1e-3, "um": 1e-6, "µm": 1e-6},
    Dimension.ANGLE: {"rad": 1.0, "deg": math.pi / 180.0, "turn": 2.0 * math.pi},
    Dimension.VOLTAGE: {"V": 1.0, "kV": 1e3},
    Dimension.FORCE: {"N": 1.0, "mN": 1e-3},
    Dimension.MASS: {"kg": 1.0, "g": 1e-3},
    Dimension.STIFFNESS: {"N/m": 1.0, "N/mm": 1e3},
    Dimension.FREQUENCY: {"Hz": 1.0},
    Dimension.ACCELERATION: {"m/s2": 1.0, "m/s^2": 1.0},
    Dimension.PERMITTIVITY: {"F/m": 1.0},
    Dimension.TIME: {"s": 1.0, "ms": 1e-3},
}

_QUANTITY_RE = re.compile(
    r"^\s*(?P<number>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*(?P<unit>[^\d\s.+-]\S*)\s*$"
)


def parse_quantity(value: object, dimension: Dimension, field: str = "value") -> float:
    """Parse a unit-suffixed string into an SI float.

    Args:
        value: String such as "4 mm" or "450deg"
        dimension: Expected physical dimension
        field: Dotted field path used in error messages

    Returns:
        The value in SI units (m, rad, V, N, kg, N/m, Hz, m/s^2, F/m, s)

    Raises:
        ValidationError: If the value is not a string, has no unit, or the
            unit does not belong to ``dimension``
    """
    if not isinstance(value, str):
        raise ValidationError(
            f"{field}: expected a {dimension} with an explicit unit (e.g. "
            f"'{_example(dimension)}'), got {value!r}"
        )

    match = _QUANTITY_RE.match(value)
    if not match:
        raise ValidationError(
            f"{field}: cannot parse {value!r}; expected '<number> <unit>' "
            f"such as '{_example(dimension)}'"
        )

    unit = match.group("unit")
    scales = UNIT_SCALES[dimension]
    if unit not in scales:
        allowed = ", ".join(scales)
        raise ValidationError(f"{field}: unit '{unit}' is not a {dimension} unit ({allowed})")

    return float(match.group("number")) * scales[unit]


def parse_dimensionless(value: object, field: str = "value") -> float:
    """Parse a bare number, rejecting strings that carry a unit."""
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ValidationError(f"{field}: expected a bare number, got {value!r}")
    return float(value)


def _example(dimension: Dimension) -> str:
    first_unit = next(iter(UNIT_SCALES[dimension]))
    return f"1 {first_unit}"
