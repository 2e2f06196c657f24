"""Tension evaluation, sweeps, profiles, inverse design and the planar comparison."""

import logging
import math
from pathlib import Path

from ..config import RunConfig
from ..constants import TENSION_SWEEP_COLUMNS, OutputFormat
from ..electrostatics import electrostatic_line_load
from ..exceptions import ModelRangeError
from ..geometry import contact_area, total_arc_length
from ..tension import (
    DriveState,
    MechanismSpec,
    TensionSolution,
    integrate_tension_ode,
    normal_load_profile,
    planar_length_for,
    planar_tension,
    required_angle,
    sweep_tension,
    tension_profile as sample_tension_profile,
    terminal_tension,
    wrap_exponent,
)
from .display import emit_report, emit_table, fmt, warn

logger = logging.getLogger(__name__)


def _mechanism_and_drive(config: RunConfig, command: str) -> tuple[MechanismSpec, DriveState]:
    return config.require("mechanism", command), config.require("drive", command)


def tension_eval(
    config: RunConfig,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
    ode_check: bool = False,
) -> TensionSolution:
    """Terminal tension for the configured drive, optionally checked against the ODE."""
    m, d = _mechanism_and_drive(config, "tension eval")
    solution = terminal_tension(m, d)

    fields = [
        ("V", fmt(d.voltage_V)),
        ("T0", fmt(d.preload_T0)),
        ("q_e", fmt(electrostatic_line_load(m.stack, d.voltage_V))),
        ("mu_kappa_s", fmt(wrap_exponent(m))),
        ("capstan_gain", fmt(solution.capstan_gain)),
        ("electro_term", fmt(solution.electro_term)),
        ("T", fmt(solution.terminal_tension_T)),
        ("amplification", fmt(solution.amplification)),
    ]
    if ode_check:
        fields.append(("T_ode", fmt(integrate_tension_ode(m, d, rel_tol=config.rel_tol))))

    emit_report(fields, out, output_format, title="Terminal tension")
    return solution


def tension_sweep(
    config: RunConfig,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> int:
    """Grid of voltages x preloads x angles; returns the number of annotated rows.

    Without ``sweep.preloads`` the drive preload is used; without
    ``sweep.angles`` the mechanism's own winding angle.
    """
    m: MechanismSpec = config.require("mechanism", "tension sweep")
    voltages = config.require("voltages", "tension sweep")
    preloads = config.preloads or [config.require("drive", "tension sweep").preload_T0]

    logger.debug(
        "sweep: %d voltage(s), %d preload(s), %d angle(s)",
        len(voltages),
        len(preloads),
        len(config.angles) or 1,
    )
    rows = sweep_tension(m, voltages, preloads, config.angles or None, workers=config.workers)
    table = [
        [
            fmt(row.voltage_V),
            fmt(row.preload_T0),
            fmt(math.degrees(row.total_angle_Phi)),
            fmt(row.tension_T),
            fmt(row.amplification),
            row.note,
        ]
        for row in rows
    ]
    emit_table(TENSION_SWEEP_COLUMNS, table, out, output_format, title="Tension sweep")

    failed = sum(1 for row in rows if row.tension_T is None)
    if failed:
        warn(f"{failed} of {len(rows)} sweep point(s) could not be evaluated; see the note column")
    return failed


def tension_profile(
    config: RunConfig,
    samples: int | None = None,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> None:
    """Tension, normal line load and friction line load sampled along the wrap."""
    m, d = _mechanism_and_drive(config, "tension profile")
    n = samples or config.profile_samples
    tension = sample_tension_profile(m, d, n)
    normal = normal_load_profile(m, d, n)

    mu = m.stack.friction_mu
    table = [
        [fmt(s), fmt(t), fmt(dn_ds), fmt(mu * dn_ds)]
        for (s, t), (_, dn_ds) in zip(tension, normal, strict=True)
    ]
    emit_table(("s", "T", "dN_ds", "friction_per_length"), table, out, output_format)


def tension_design(
    config: RunConfig,
    target_tension: float,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> float:
    """Smallest winding angle that reaches ``target_tension`` at the configured drive."""
    m, d = _mechanism_and_drive(config, "tension design")
    angle = required_angle(m, d, target_tension)
    designed = m.with_angle(angle) if angle > 0 else None

    fields = [
        ("target_T", fmt(target_tension)),
        ("Phi", fmt(angle)),
        ("Phi_deg", fmt(math.degrees(angle))),
        ("turns", fmt(angle / (2 * math.pi))),
        ("s", fmt(total_arc_length(designed.helix) if designed else 0.0)),
        (
            "contact_area",
            fmt(contact_area(designed.helix, m.stack.electrode_width_w) if designed else 0.0),
        ),
    ]
    try:
        fields.append(("planar_length", fmt(planar_length_for(m.stack, d, target_tension))))
    except ModelRangeError as e:
        warn(str(e))
        fields.append(("planar_length", ""))

    emit_report(fields, out, output_format, title="Inverse design")
    return angle


def compare_planar(
    config: RunConfig,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> None:
    """Helical against planar tension over the same contact length and area.

    Also reports the flat-strip length needed to match the helical tension.
    An unreachable planar match is reported, not raised.
    """
    m, d = _mechanism_and_drive(config, "compare-planar")
    length = total_arc_length(m.helix)
    helical = terminal_tension(m, d).terminal_tension_T
    planar = planar_tension(m.stack, length, d)
    ratio = helical / planar if planar > 0 else None

    fields = [
        ("contact_length", fmt(length)),
        ("contact_area", fmt(contact_area(m.helix, m.stack.electrode_width_w))),
        ("T_helical", fmt(helical)),
        ("T_planar", fmt(planar)),
        ("ratio", fmt(ratio)),
    ]
    try:
        footprint = planar_length_for(m.stack, d, helical)
        fields.append(("planar_length_to_match", fmt(footprint)))
        fields.append(("footprint_ratio", fmt(footprint / length)))
    except ModelRangeError as e:
        warn(f"planar match unreachable: {e}")
        fields.append(("planar_length_to_match", "unreachable"))
        fields.append(("footprint_ratio", ""))

    if ratio is None:
        warn("both tensions are zero; the helical/planar ratio is undefined")
    emit_report(fields, out, output_format, title="Helical vs planar")
