"""Named fixture configurations.

The published specimen table fixes permittivity, electrode width, friction
coefficient, preloads and the wrap angle, but not the core radius, pitch or
film thicknesses. Those, and every finger dimension other than the 6 mm
electrode and 360 degree wrap, are synthetic values chosen here; none of
them is a published measurement.
"""

import math

from .constants import (
    PUBLISHED_ELECTRODE_WIDTH_M,
    PUBLISHED_EPS_R,
    PUBLISHED_FINGER_WIDTH_M,
    PUBLISHED_FINGER_WRAP_DEG,
    PUBLISHED_FRICTION_MU,
    PUBLISHED_WRAP_DEG,
)
from .electrostatics import DielectricStack
from .finger import FingerConfig
from .geometry import HelixGeometry
from .tension import MechanismSpec

# Synthetic core geometry and film thickness
SYNTHETIC_RADIUS_M = 4.0e-3
SYNTHETIC_PITCH_M = 13.0e-3
SYNTHETIC_FILM_M = 50e-6

# Synthetic finger dimensions
FINGER_SPRING_K = 100.0
FINGER_PRE_EXTENSION_M = 5.0e-3
FINGER_CORE_RADIUS_M = 8.0e-3
FINGER_LEVER_M = 50.0e-3

FINGER_VOLTAGES: tuple[float, ...] = (0.0, 1000.0, 2000.0, 3000.0)
FINGER_LOADS: tuple[float, ...] = (0.5, 0.7, 0.9, 1.1, 1.3, 1.5)


def specimen_stack(width: float = PUBLISHED_ELECTRODE_WIDTH_M) -> DielectricStack:
    """PI-on-PI stack with the tabulated permittivity and friction, synthetic 50 um films."""
    return DielectricStack(
        eps_r1=PUBLISHED_EPS_R,
        thickness_d1=SYNTHETIC_FILM_M,
        eps_r2=PUBLISHED_EPS_R,
        thickness_d2=SYNTHETIC_FILM_M,
        electrode_width_w=width,
        friction_mu=PUBLISHED_FRICTION_MU,
    )


def specimen_mechanism() -> MechanismSpec:
    """450 degree wrap on a synthetic 4 mm core with 13 mm pitch."""
    helix = HelixGeometry(
        radius_R=SYNTHETIC_RADIUS_M,
        pitch_H=SYNTHETIC_PITCH_M,
        total_angle_Phi=math.radians(PUBLISHED_WRAP_DEG),
    )
    return MechanismSpec(helix=helix, stack=specimen_stack())


def reference_finger() -> FingerConfig:
    """Finger joint: 6 mm electrode over 360 degrees, synthetic spring and lever."""
    helix = HelixGeometry(
        radius_R=SYNTHETIC_RADIUS_M,
        pitch_H=SYNTHETIC_PITCH_M,
        total_angle_Phi=math.radians(PUBLISHED_FINGER_WRAP_DEG),
    )
    mechanism = MechanismSpec(helix=helix, stack=specimen_stack(PUBLISHED_FINGER_WIDTH_M))
    return FingerConfig(
        spring_k=FINGER_SPRING_K,
        spring_pre_extension_x0=FINGER_PRE_EXTENSION_M,
        core_radius_rc=FINGER_CORE_RADIUS_M,
        fingertip_lever_Lf=FINGER_LEVER_M,
        mechanism=mechanism,
    )
