"""Differential geometry of the helical electrode path.

The electrode centreline is the circular helix

    r(phi) = (R cos phi, R sin phi, (H / 2 pi) phi),   phi in [0, Phi]

with constant curvature and torsion. Everything here is a pure function of
an immutable ``HelixGeometry``.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .constants import FD_CURVE_STEP_RAD, FD_STEP_RAD
from .exceptions import DomainError, ValidationError

Vector = NDArray[np.float64]


@dataclass(frozen=True)
class HelixGeometry:
    """Cylinder radius, pitch and total winding angle (SI units)."""

    radius_R: float
    pitch_H: float
    total_angle_Phi: float

    def __post_init__(self) -> None:
        if not self.radius_R > 0:
            raise ValidationError(f"helix radius must be > 0, got {self.radius_R}")
        if not self.pitch_H >= 0:
            raise ValidationError(f"helix pitch must be >= 0, got {self.pitch_H}")
        if not self.total_angle_Phi > 0:
            raise ValidationError(f"total winding angle must be > 0, got {self.total_angle_Phi}")

    @property
    def lead(self) -> float:
        """Axial advance per radian, H / 2 pi."""
        return self.pitch_H / (2.0 * math.pi)


@dataclass(frozen=True)
class FrenetFrame:
    """Orthonormal tangent / principal normal / binormal triad."""

    tangent_t: Vector
    normal_n: Vector
    binormal_b: Vector


def _check_phi(h: HelixGeometry, phi: float) -> None:
    if not 0.0 <= phi <= h.total_angle_Phi:
        raise DomainError(f"phi={phi} rad outside the wound range [0, {h.total_angle_Phi}]")


def position(h: HelixGeometry, phi: float) -> Vector:
    """Point on the helix at winding angle ``phi`` (m)."""
    _check_phi(h, phi)
    return _position(h, phi)


def _position(h: HelixGeometry, phi: float) -> Vector:
    # Unchecked variant; the finite-difference oracles step past the endpoints.
    return np.array([h.radius_R * math.cos(phi), h.radius_R * math.sin(phi), h.lead * phi])


def helix_constant_a(h: HelixGeometry) -> float:
    """Arc length per radian of winding, a = sqrt(R^2 + (H/2pi)^2)."""
    return math.hypot(h.radius_R, h.lead)


def arc_length(h: HelixGeometry, phi: float) -> float:
    """Arc length from the start of the wrap to ``phi``."""
    _check_phi(h, phi)
    return helix_constant_a(h) * phi


def total_arc_length(h: HelixGeometry) -> float:
    """Arc length of the full wrap, s = a * Phi."""
    return helix_constant_a(h) * h.total_angle_Phi


def contact_area(h: HelixGeometry, electrode_width: float) -> float:
    """Electrode contact area of the full wrap, width * a * Phi (m^2)."""
    return electrode_width * total_arc_length(h)


def curvature(h: HelixGeometry) -> float:
    """kappa = R / (R^2 + (H/2pi)^2)."""
    return h.radius_R / (h.radius_R**2 + h.lead**2)


def torsion(h: HelixGeometry) -> float:
    """tau = (H/2pi) / (R^2 + (H/2pi)^2)."""
    return h.lead / (h.radius_R**2 + h.lead**2)


def frenet_frame(h: HelixGeometry, phi: float) -> FrenetFrame:
    """Serret-Frenet frame at winding angle ``phi``."""
    _check_phi(h, phi)
    return _frenet_frame(h, phi)


def _frenet_frame(h: HelixGeometry, phi: float) -> FrenetFrame:
    a = helix_constant_a(h)
    c = h.lead
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)

    t = np.array([-h.radius_R * sin_phi, h.radius_R * cos_phi, c]) / a
    n = np.array([-cos_phi, -sin_phi, 0.0])
    b = np.cross(t, n)
    return FrenetFrame(tangent_t=t, normal_n=n, binormal_b=b)


# =============================================================================
# Finite-difference oracles
# =============================================================================


# Fourth-order central stencils over the offsets -3..3 (times step^-1, ^-2, ^-3)
_STENCIL_OFFSETS = np.arange(-3, 4)
_D1_WEIGHTS = np.array([0.0, 1.0, -8.0, 0.0, 8.0, -1.0, 0.0]) / 12.0
_D2_WEIGHTS = np.array([0.0, -1.0, 16.0, -30.0, 16.0, -1.0, 0.0]) / 12.0
_D3_WEIGHTS = np.array([1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0]) / 8.0


def _derivatives(h: HelixGeometry, phi: float, step: float) -> tuple[Vector, Vector, Vector]:
    """r', r'', r''' with respect to phi by fourth-order central differences."""
    samples = np.array([_position(h, phi + k * step) for k in _STENCIL_OFFSETS])
    d1 = _D1_WEIGHTS @ samples / step
    d2 = _D2_WEIGHTS @ samples / step**2
    d3 = _D3_WEIGHTS @ samples / step**3
    return d1, d2, d3


def numerical_curvature(
    h: HelixGeometry, phi: float = 0.0, step: float = FD_CURVE_STEP_RAD
) -> float:
    """|r' x r''| / |r'|^3 evaluated on finite differences of ``position``.

    With fourth-order stencils a 1e-2 rad step keeps truncation near 1e-10
    and round-off in r''' near 1e-8.
    """
    d1, d2, _ = _derivatives(h, phi, step)
    return float(np.linalg.norm(np.cross(d1, d2)) / np.linalg.norm(d1) ** 3)


def numerical_torsion(h: HelixGeometry, phi: float = 0.0, step: float = FD_CURVE_STEP_RAD) -> float:
    """(r' x r'') . r''' / |r' x r''|^2 on finite differences of ``position``."""
    d1, d2, d3 = _derivatives(h, phi, step)
    cross = np.cross(d1, d2)
    return float(np.dot(cross, d3) / np.dot(cross, cross))


def frenet_derivatives(
    h: HelixGeometry, phi: float, step: float = FD_STEP_RAD
) -> tuple[Vector, Vector, Vector]:
    """dt/ds, dn/ds, db/ds by central differences of the frame in phi."""
    ds = 2 * step * helix_constant_a(h)
    before = _frenet_frame(h, phi - step)
    after = _frenet_frame(h, phi + step)
    return (
        (after.tangent_t - before.tangent_t) / ds,
        (after.normal_n - before.normal_n) / ds,
        (after.binormal_b - before.binormal_b) / ds,
    )
