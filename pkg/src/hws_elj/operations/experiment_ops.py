"""Sensor-log reduction and quadratic fitting commands."""

import logging
from collections.abc import Sequence
from pathlib import Path

import pandas as pd

from ..config import RunConfig
from ..constants import AGGREGATED_COLUMNS, FIT_COLUMNS, REDUCED_COLUMNS, OutputFormat
from ..exceptions import DomainError, HwsEljError, SensorLogError, ValidationError
from ..experiment import (
    FitResult,
    ReducedMeasurement,
    RepeatSummary,
    SegmentWindow,
    aggregate_repeats,
    fit_overlay,
    fit_quadratic,
    implied_wrap_exponent,
    initial_force,
    load_sensor_log,
    model_residuals,
    predicted_coefficients,
    reduce_log,
    split_segments,
)
from ..messages import ErrorMessages
from ..units import Dimension, parse_quantity
from .display import emit_table, err_console, fmt, render_csv, warn

logger = logging.getLogger(__name__)

# Accepted names for the force column of a measurement table
_FORCE_COLUMNS = ("F", "F_f_mean", "F_f")


def parse_log_argument(arg: str) -> tuple[Path, float | None]:
    """Split ``PATH@VOLTAGE`` into a path and an SI voltage.

    The voltage part is optional ("run.csv" alone is accepted for use with
    ``--segment``); when present it needs a unit, e.g. ``run.csv@3kV``.
    """
    path, sep, voltage = arg.rpartition("@")
    if not sep:
        return Path(arg), None
    return Path(path), parse_quantity(voltage, Dimension.VOLTAGE, f"log {path}")


def _seconds(text: str, field: str) -> float:
    # Bare numbers are seconds; "500 ms" style values are accepted too
    try:
        return float(text)
    except ValueError:
        return parse_quantity(text, Dimension.TIME, field)


def parse_segment(arg: str) -> SegmentWindow:
    """Parse ``START:END@VOLTAGE`` (times in seconds) into a SegmentWindow."""
    window, sep, voltage = arg.rpartition("@")
    start, colon, end = window.partition(":")
    if not sep or not colon:
        raise ValidationError(f"segment {arg!r}: expected START:END@VOLTAGE, e.g. 0:10@1000V")
    return SegmentWindow(
        start_t=_seconds(start, f"segment {arg} start"),
        end_t=_seconds(end, f"segment {arg} end"),
        voltage=parse_quantity(voltage, Dimension.VOLTAGE, f"segment {arg}"),
    )


def _reduced_row(r: ReducedMeasurement) -> list[str]:
    return [fmt(r.voltage), fmt(r.F_f_mean), fmt(r.F_f_std), str(r.n_samples)]


def _aggregated_row(r: RepeatSummary) -> list[str]:
    return [fmt(r.voltage), fmt(r.F_f_mean), fmt(r.F_f_std), str(r.n_repeats)]


def process_logs(
    config: RunConfig,
    logs: Sequence[str],
    segments: Sequence[str] = (),
    threshold_sigma: float | None = None,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
    aggregate: bool = False,
) -> int:
    """Reduce each log (or each segment of one log) to a friction value.

    A log that fails to parse or lacks a voltage is reported and skipped; the
    remaining logs are still processed. With ``aggregate`` repeated runs at
    the same voltage are combined into one row. Returns the number of failed
    logs.

    Raises:
        DomainError: If no logs are given, or segments are combined with
            more than one log
    """
    if not logs:
        raise DomainError(ErrorMessages.no_logs())
    rig = config.require("rig", "process")
    threshold = threshold_sigma if threshold_sigma is not None else config.threshold_sigma
    windows = [parse_segment(s) for s in segments]
    if windows and len(logs) != 1:
        raise DomainError("--segment cuts a single continuous log; pass exactly one")

    reduced: list[ReducedMeasurement] = []
    failed = 0
    for arg in logs:
        try:
            path, voltage = parse_log_argument(arg)
            if voltage is None and not windows:
                raise ValidationError(f"missing @VOLTAGE, e.g. {arg}@1000V")
            samples = load_sensor_log(path)
            if windows:
                pieces = split_segments(samples, windows)
            elif voltage is not None:
                pieces = [(voltage, samples)]
            for level, piece in pieces:
                reduced.append(reduce_log(piece, rig, level, threshold))
        except HwsEljError as e:
            failed += 1
            err_console.print(f"Error: {e.code}: {arg}: {e}", markup=False, soft_wrap=True)
            logger.debug("skipping %s", arg, exc_info=True)

    if aggregate:
        rows = [_aggregated_row(r) for r in aggregate_repeats(reduced)]
        emit_table(AGGREGATED_COLUMNS, rows, out, output_format, title="Aggregated repeats")
    else:
        rows = [_reduced_row(r) for r in reduced]
        emit_table(REDUCED_COLUMNS, rows, out, output_format, title="Reduced measurements")
    return failed


def load_measurements(path: Path) -> list[tuple[float, float]]:
    """Read (voltage, force) pairs from a CSV with ``voltage`` and ``F`` columns.

    The output of ``process`` (column ``F_f_mean``) is accepted as well.
    """
    try:
        frame = pd.read_csv(path, skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise SensorLogError(f"cannot read measurements {path}: {e}")

    force_column = next((c for c in _FORCE_COLUMNS if c in frame.columns), None)
    if "voltage" not in frame.columns or force_column is None:
        raise SensorLogError(f"{path}: expected columns voltage,F", line=1)

    data = frame[["voltage", force_column]].apply(pd.to_numeric, errors="coerce")
    bad = data.isna().any(axis=1).to_numpy().nonzero()[0]
    if bad.size:
        line = int(bad[0]) + 2
        raise SensorLogError(f"{path}: line {line}: non-numeric value", line=line)
    return [(float(v), float(f)) for v, f in data.itertuples(index=False, name=None)]


def fit_measurements(
    config: RunConfig,
    measurements: Path,
    overlay: Path | None = None,
    compare_model: bool = False,
    out: Path | None = None,
    output_format: OutputFormat = OutputFormat.CSV,
) -> FitResult:
    """Fit T(V) = a V^2 + b and report it.

    With ``compare_model`` the report is a per-point residual table against
    both the fit and the configured mechanism (preload from the rig mass, or
    from the drive when no rig is configured).
    """
    points = load_measurements(measurements)
    fit = fit_quadratic(points)

    if overlay is not None:
        voltages = [v for v, _ in points]
        curve = fit_overlay(fit, min(voltages), max(voltages))
        overlay.write_text(
            render_csv(("V", "T"), [[fmt(v), fmt(t)] for v, t in curve]), encoding="utf-8"
        )
        err_console.print(f"[dim]Wrote fitted curve ({len(curve)} points) to {overlay}[/dim]")

    if not compare_model:
        emit_table(
            FIT_COLUMNS,
            [[fmt(fit.coeff_a), fmt(fit.coeff_b), fmt(fit.rms_residual), str(fit.n_points)]],
            out,
            output_format,
            title="Quadratic fit",
        )
        return fit

    m = config.require("mechanism", "fit --compare-model")
    if config.rig is not None:
        t0 = initial_force(config.rig)
    else:
        t0 = config.require("drive", "fit --compare-model").preload_T0

    model_a, model_b = predicted_coefficients(m, t0)
    err_console.print(
        f"fit a={fmt(fit.coeff_a)} b={fmt(fit.coeff_b)}; "
        f"model a={fmt(model_a)} b={fmt(model_b)} at T0={fmt(t0)}",
        markup=False,
        soft_wrap=True,
    )
    try:
        kappa_s = implied_wrap_exponent(fit.coeff_b, t0, m.stack.friction_mu)
        err_console.print(f"intercept implies kappa*s = {fmt(kappa_s)}", markup=False)
    except DomainError as e:
        warn(f"cannot back-solve kappa*s: {e}")

    rows = [
        [fmt(v), fmt(measured), fmt(fit.predict(v)), fmt(model), fmt(residual)]
        for v, measured, model, residual in model_residuals(m, t0, points)
    ]
    emit_table(
        ("V", "F", "T_fit", "T_model", "residual_model"),
        rows,
        out,
        output_format,
        title="Model comparison",
    )
    return fit
