"""Operations package - command bodies behind the CLI."""

# Sensor logs and fitting
from .experiment_ops import (
    fit_measurements,
    load_measurements,
    parse_log_argument,
    parse_segment,
    process_logs,
)

# Finger
from .finger_ops import finger_sweep

# Geometry
from .helix_ops import helix_info

# Tension
from .tension_ops import (
    compare_planar,
    tension_design,
    tension_eval,
    tension_profile,
    tension_sweep,
)

__all__ = [
    # Geometry
    "helix_info",
    # Tension
    "tension_eval",
    "tension_sweep",
    "tension_profile",
    "tension_design",
    "compare_planar",
    # Experiment
    "process_logs",
    "fit_measurements",
    "load_measurements",
    "parse_log_argument",
    "parse_segment",
    # Finger
    "finger_sweep",
]
