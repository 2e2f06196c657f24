"""Series-dielectric parallel-plate model of the electrode pair.

Copper thickness and air gaps are neglected; the effective gap is the sum of
the two dielectric film thicknesses and the attraction depends on V^2 only.
"""

from dataclasses import dataclass

from .constants import EPS_0
from .exceptions import DomainError, ValidationError


@dataclass(frozen=True)
class DielectricStack:
    """Two dielectric films, the electrode width and the film-on-film friction."""

    eps_r1: float
    thickness_d1: float
    eps_r2: float
    thickness_d2: float
    electrode_width_w: float
    friction_mu: float
    eps_0: float = EPS_0

    def __post_init__(self) -> None:
        for name in ("eps_r1", "eps_r2"):
            if not getattr(self, name) >= 1.0:
                raise ValidationError(f"{name} must be >= 1, got {getattr(self, name)}")
        for name in ("thickness_d1", "thickness_d2", "electrode_width_w", "eps_0"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.friction_mu >= 0.0:
            raise ValidationError(f"friction_mu must be >= 0, got {self.friction_mu}")


def effective_gap(s: DielectricStack) -> float:
    """d_e = d1 + d2 (m)."""
    return s.thickness_d1 + s.thickness_d2


def equivalent_permittivity(s: DielectricStack) -> float:
    """Relative permittivity of a single film reproducing the series capacitance.

    eps_e = eps1 * eps2 * d_e / (eps1 * d2 + eps2 * d1), i.e.
    d_e / eps_e = d1 / eps1 + d2 / eps2.
    """
    return (
        s.eps_r1
        * s.eps_r2
        * effective_gap(s)
        / (s.eps_r1 * s.thickness_d2 + s.eps_r2 * s.thickness_d1)
    )


def capacitance_per_length(s: DielectricStack) -> float:
    """Parallel-plate capacitance per unit strip length, eps0 * eps_e * w / d_e (F/m)."""
    return s.eps_0 * equivalent_permittivity(s) * s.electrode_width_w / effective_gap(s)


def electrostatic_line_load(s: DielectricStack, voltage_V: float) -> float:
    """Electrostatic attraction per unit strip length (N/m).

    q_e = eps0 * eps_e * w * V^2 / (2 d_e^2)

    Raises:
        DomainError: If ``voltage_V`` is negative
    """
    if voltage_V < 0:
        raise DomainError(f"voltage must be >= 0 (magnitude only), got {voltage_V}")
    d_e = effective_gap(s)
    return s.eps_0 * equivalent_permittivity(s) * s.electrode_width_w * voltage_V**2 / (2 * d_e**2)


def electrostatic_pressure(s: DielectricStack, voltage_V: float) -> float:
    """Normal pressure between the films, q_e / w (Pa)."""
    return electrostatic_line_load(s, voltage_V) / s.electrode_width_w
