"""Constants and default values for hws-elj."""

import math
from enum import StrEnum


class OutputFormat(StrEnum):
    """Output formats accepted by ``--format``."""

    CSV = "csv"
    TEXT = "text"


class FingerStatus(StrEnum):
    """Per-row outcome of a finger load sweep."""

    OK = "ok"
    STATIC_HOLD = "static-hold"
    UNLOADED = "unloaded"
    NO_EQUILIBRIUM = "no-equilibrium"


# Vacuum permittivity as tabulated for the published specimens (F/m).
# Deliberately not the CODATA value so specimen runs reproduce the same arithmetic.
EPS_0 = 8.85e-12

STANDARD_GRAVITY = 9.81
DEFAULT_SAMPLING_HZ = 10.0
DEFAULT_OUTLIER_SIGMA = 3.0

# Largest exponent mu*kappa*s evaluated before refusing (exp overflows near 709.78)
MAX_WRAP_EXPONENT = 700.0

# Below this kappa*s the closed form switches to its planar series expansion
PLANAR_SWITCH_KS = 1e-9

# Central-difference step for the frame oracle (radians of helix angle)
FD_STEP_RAD = 1e-7

# Step for the fourth-order r', r'', r''' stencils behind the curvature and torsion oracles
FD_CURVE_STEP_RAD = 1e-2

ODE_DEFAULT_REL_TOL = 1e-10
ODE_MIN_REL_TOL = 1e-14
ODE_MAX_REL_TOL = 1e-3

# Finger bending search domain
THETA_MAX = math.pi

# MAD -> sigma for normal data, and the mean-absolute-deviation fallback factor
MAD_SCALE = 1.4826
MEAN_AD_SCALE = 1.253

# A zero-MAD channel is spiky only when at most this share of samples (and at
# least one) leaves the median; otherwise its spread is quantization
ISOLATED_SPIKE_FRACTION = 0.01

# Fitted-curve overlay resolution (V)
OVERLAY_STEP_V = 50.0

# Published voltage sweep: 1000 V to 3800 V in 400 V steps
PUBLISHED_VOLTAGE_GRID: tuple[float, ...] = tuple(float(v) for v in range(1000, 3801, 400))

# Published quadratic fits T(V) = a V^2 + b, keyed by suspended mass (kg).
# Intercepts scale with the suspended mass: 25, 50 and 100 g.
PUBLISHED_FIT_SLOPE = 5.138e-8
PUBLISHED_FIT_INTERCEPTS: dict[float, float] = {
    0.025: 0.902,
    0.050: 1.804,
    0.100: 3.608,
}

# Published specimen table
PUBLISHED_EPS_R = 3.6
PUBLISHED_ELECTRODE_WIDTH_M = 7.0e-3
PUBLISHED_FRICTION_MU = 0.22
PUBLISHED_WRAP_DEG = 450.0
PUBLISHED_MASSES_KG: tuple[float, ...] = (0.025, 0.050, 0.100)

# Finger prototype: 6 mm electrode wound through 360 degrees
PUBLISHED_FINGER_WIDTH_M = 6.0e-3
PUBLISHED_FINGER_WRAP_DEG = 360.0

# Column layouts of emitted and ingested tables
SENSOR_LOG_COLUMNS: tuple[str, ...] = ("time", "Fx", "Fy", "Fz", "Tx", "Ty", "Tz")
REDUCED_COLUMNS: tuple[str, ...] = ("voltage", "F_f_mean", "F_f_std", "n_samples")
AGGREGATED_COLUMNS: tuple[str, ...] = ("voltage", "F_f_mean", "F_f_std", "n_repeats")
FIT_COLUMNS: tuple[str, ...] = ("a", "b", "rms_residual", "n_points")
TENSION_SWEEP_COLUMNS: tuple[str, ...] = ("V", "T0", "phi", "T", "amplification", "note")
FINGER_COLUMNS: tuple[str, ...] = ("V", "F_pull", "theta_deg", "k", "status")


def format_float(value: float) -> str:
    """Shortest round-trip decimal representation of a float.

    Examples:
        0.1 -> 0.1
        2.0 -> 2.0
        1e-08 -> 1e-08
    """
    return repr(float(value))
