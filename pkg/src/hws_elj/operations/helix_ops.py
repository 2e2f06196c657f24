"""Geometry report for the configured helix."""

import math
from pathlib import Path

from ..config import RunConfig
from ..constants import OutputFormat
from ..geometry import (
    contact_area,
    curvature,
    helix_constant_a,
    numerical_curvature,
    torsion,
    total_arc_length,
)
from ..messages import ErrorMessages
from ..tension import MechanismSpec, pitch_admissible
from .display import emit_report, fmt, warn


def helix_info(
    config: RunConfig,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> MechanismSpec:
    """Report R, H, Phi, a, s, kappa, tau and the pitch-admissibility verdict.

    The mechanism is accepted even when it could not be built (H = 0 or
    H <= w); in that case a warning is printed alongside the report.
    """
    m: MechanismSpec = config.require("mechanism", "helix-info")
    h = m.helix
    admissible = pitch_admissible(h, m.stack)

    fields = [
        ("R", fmt(h.radius_R)),
        ("H", fmt(h.pitch_H)),
        ("Phi", fmt(h.total_angle_Phi)),
        ("Phi_deg", fmt(math.degrees(h.total_angle_Phi))),
        ("a", fmt(helix_constant_a(h))),
        ("s", fmt(total_arc_length(h))),
        ("kappa", fmt(curvature(h))),
        ("tau", fmt(torsion(h))),
        ("kappa_numerical", fmt(numerical_curvature(h))),
        ("contact_area", fmt(contact_area(h, m.stack.electrode_width_w))),
        ("pitch_admissible", "yes" if admissible else "no"),
    ]
    if not admissible:
        warn(ErrorMessages.pitch_not_admissible(h.pitch_H, m.stack.electrode_width_w))

    emit_report(fields, out, output_format, title="Helix geometry")
    return m
