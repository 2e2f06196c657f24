"""Finger load-sweep command."""

import math
from pathlib import Path

from ..config import RunConfig
from ..constants import FINGER_COLUMNS, FingerStatus, OutputFormat
from ..finger import FingerConfig, load_sweep
from .display import emit_table, fmt, warn


def finger_sweep(
    config: RunConfig,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> int:
    """Bend angle and stiffness over voltages x loads, voltage-major.

    Returns the number of cells without an equilibrium; those rows are kept
    with empty angle and stiffness cells.
    """
    finger: FingerConfig = config.require("finger", "finger")
    voltages = config.require("voltages", "finger")
    loads = config.require("loads", "finger")

    rows = load_sweep(finger, voltages, loads, workers=config.workers)
    table = [
        [
            fmt(row.voltage_V),
            fmt(row.load_Fpull),
            fmt(math.degrees(row.theta)) if row.theta is not None else "",
            fmt(row.stiffness_k),
            str(row.status),
        ]
        for row in rows
    ]
    emit_table(FINGER_COLUMNS, table, out, output_format, title="Finger load sweep")

    unbalanced = sum(1 for row in rows if row.status == FingerStatus.NO_EQUILIBRIUM)
    if unbalanced:
        warn(f"{unbalanced} load/voltage cell(s) exceed the joint's holding capability")
    return unbalanced
