"""Reduction of six-axis force/torque logs and voltage-response fitting.

A specimen is mounted on the sensor; the strip leaves the groove tangentially
so its tension shows up as the z force F_z1 plus the torque about z divided
by the groove radius, F_z2 = T_z / r. The friction (terminal tension) is
sqrt(F_z1^2 + F_z2^2). Steady-state logs are cleaned with a per-channel MAD
filter and averaged, then T(V) = a V^2 + b is fitted across voltages.
"""

import io
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

import numpy as np
import pandas as pd

from .constants import (
    DEFAULT_OUTLIER_SIGMA,
    DEFAULT_SAMPLING_HZ,
    ISOLATED_SPIKE_FRACTION,
    MAD_SCALE,
    MEAN_AD_SCALE,
    OVERLAY_STEP_V,
    PUBLISHED_FIT_INTERCEPTS,
    PUBLISHED_FIT_SLOPE,
    SENSOR_LOG_COLUMNS,
    STANDARD_GRAVITY,
)
from .exceptions import DomainError, FitError, SensorLogError, ValidationError
from .tension import DriveState, MechanismSpec, terminal_tension, wrap_exponent

logger = logging.getLogger(__name__)

_CHANNELS = SENSOR_LOG_COLUMNS[1:]


@dataclass(frozen=True)
class Wrench:
    """Six-axis force (N) / torque (N*m) reading."""

    Fx: float
    Fy: float
    Fz: float
    Tx: float
    Ty: float
    Tz: float


@dataclass(frozen=True)
class SensorSample:
    """One timestamped sensor reading."""

    time_t: float
    Fx: float
    Fy: float
    Fz: float
    Tx: float
    Ty: float
    Tz: float

    @property
    def wrench(self) -> Wrench:
        return Wrench(self.Fx, self.Fy, self.Fz, self.Tx, self.Ty, self.Tz)


@dataclass(frozen=True)
class RigConfig:
    """Test-rig constants: groove radius, suspended mass, gravity, sampling rate."""

    groove_radius_r: float
    mass_kg: float
    gravity_g: float = STANDARD_GRAVITY
    sampling_hz: float = DEFAULT_SAMPLING_HZ

    def __post_init__(self) -> None:
        if not self.groove_radius_r > 0:
            raise ValidationError(f"groove radius must be > 0, got {self.groove_radius_r}")
        if not self.mass_kg >= 0:
            raise ValidationError(f"mass must be >= 0, got {self.mass_kg}")
        if not self.gravity_g > 0:
            raise ValidationError(f"gravity must be > 0, got {self.gravity_g}")
        if not self.sampling_hz > 0:
            raise ValidationError(f"sampling rate must be > 0, got {self.sampling_hz}")


@dataclass(frozen=True)
class FitResult:
    """Least-squares coefficients of T(V) = a V^2 + b."""

    coeff_a: float
    coeff_b: float
    rms_residual: float
    n_points: int

    def predict(self, voltage_V: float) -> float:
        return self.coeff_a * voltage_V**2 + self.coeff_b


@dataclass(frozen=True)
class ReducedMeasurement:
    """Friction estimate for one voltage level."""

    voltage: float
    F_f_mean: float
    F_f_std: float
    n_samples: int


@dataclass(frozen=True)
class RepeatSummary:
    """Mean and spread of repeated friction measurements at one voltage."""

    voltage: float
    F_f_mean: float
    F_f_std: float
    n_repeats: int


@dataclass(frozen=True)
class SegmentWindow:
    """Time window [start, end) of a continuous log recorded at one voltage."""

    start_t: float
    end_t: float
    voltage: float


# =============================================================================
# Ingestion
# =============================================================================


def load_sensor_log(source: str | Path | TextIO) -> list[SensorSample]:
    """Parse a ``time,Fx,Fy,Fz,Tx,Ty,Tz`` CSV into time-ordered samples.

    Line numbers in errors are 1-based and count the header as line 1.

    Raises:
        SensorLogError: On missing columns, non-numeric cells or a timestamp
            that goes backwards
    """
    if isinstance(source, str) and "\n" in source:
        source = io.StringIO(source)

    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise SensorLogError("sensor log is empty; expected header time,Fx,Fy,Fz,Tx,Ty,Tz")
    except pd.errors.ParserError as e:
        raise SensorLogError(f"malformed sensor log: {e}")
    except OSError as e:
        raise SensorLogError(f"cannot read sensor log: {e}")

    missing = [column for column in SENSOR_LOG_COLUMNS if column not in frame.columns]
    if missing:
        raise SensorLogError(f"missing column(s) {', '.join(missing)}", line=1)

    frame = frame[list(SENSOR_LOG_COLUMNS)]
    numeric = frame.apply(pd.to_numeric, errors="coerce")
    bad_rows = numeric.isna().any(axis=1).to_numpy().nonzero()[0]
    if bad_rows.size:
        row = int(bad_rows[0])
        column = next(c for c in SENSOR_LOG_COLUMNS if pd.isna(numeric.iloc[row][c]))
        line = row + 2
        raise SensorLogError(
            f"line {line}: non-numeric value {frame.iloc[row][column]!r} in column {column}",
            line=line,
        )

    times = numeric["time"].to_numpy(dtype=float)
    regressions = (np.diff(times) < 0).nonzero()[0]
    if regressions.size:
        line = int(regressions[0]) + 3
        raise SensorLogError(f"line {line}: time goes backwards", line=line)

    return [
        SensorSample(*(float(value) for value in record))
        for record in numeric.itertuples(index=False, name=None)
    ]


def split_segments(
    samples: Sequence[SensorSample], windows: Sequence[SegmentWindow]
) -> list[tuple[float, list[SensorSample]]]:
    """Cut one continuous log into per-voltage pieces by explicit time windows."""
    segments = []
    for window in windows:
        if not window.end_t > window.start_t:
            raise DomainError(f"segment window {window.start_t}..{window.end_t} is empty")
        piece = [s for s in samples if window.start_t <= s.time_t < window.end_t]
        segments.append((window.voltage, piece))
    return segments


# =============================================================================
# Cleaning and averaging
# =============================================================================


def _channel_matrix(samples: Sequence[SensorSample]) -> np.ndarray:
    return np.array([[getattr(s, c) for c in _CHANNELS] for s in samples], dtype=float).reshape(
        -1, len(_CHANNELS)
    )


def remove_outliers(
    samples: Sequence[SensorSample], threshold_sigma: float = DEFAULT_OUTLIER_SIGMA
) -> list[SensorSample]:
    """Drop samples where any channel strays beyond threshold * 1.4826 * MAD.

    A channel whose MAD is zero falls back to 1.253 * mean absolute deviation,
    but only when the samples off its median are isolated spikes (at most 1%
    of the log, and at least one). A zero-MAD channel with more off-median
    samples is quantized rather than spiky and keeps every sample, as does a
    channel with no spread at all.
    """
    if not threshold_sigma > 0:
        raise DomainError(f"threshold_sigma must be > 0, got {threshold_sigma}")
    if not samples:
        return []

    values = _channel_matrix(samples)
    deviation = np.abs(values - np.median(values, axis=0))
    sigma = MAD_SCALE * np.median(deviation, axis=0)
    fallback = MEAN_AD_SCALE * np.mean(deviation, axis=0)
    spike_budget = max(1, int(ISOLATED_SPIKE_FRACTION * len(samples)))
    isolated = np.count_nonzero(deviation > 0, axis=0) <= spike_budget
    sigma = np.where(sigma > 0, sigma, np.where(isolated, fallback, 0.0))

    with np.errstate(invalid="ignore"):
        outlier = (sigma > 0) & (deviation > threshold_sigma * sigma)
    keep = ~outlier.any(axis=1)
    dropped = int((~keep).sum())
    if dropped:
        logger.debug("removed %d of %d samples as outliers", dropped, len(samples))
    return [sample for sample, kept in zip(samples, keep, strict=True) if kept]


def steady_state_mean(samples: Sequence[SensorSample]) -> Wrench:
    """Per-channel arithmetic mean.

    Raises:
        DomainError: If there are no samples
    """
    if not samples:
        raise DomainError("cannot average an empty sample list")
    return Wrench(*(float(v) for v in _channel_matrix(samples).mean(axis=0)))


def friction_from_wrench(w: Wrench, rig: RigConfig) -> float:
    """Terminal tension from the sensor: sqrt(Fz^2 + (Tz / r)^2)."""
    return math.hypot(w.Fz, w.Tz / rig.groove_radius_r)


def initial_force(rig: RigConfig) -> float:
    """Preload from the suspended mass, T0 = m g."""
    return rig.mass_kg * rig.gravity_g


def reduce_log(
    samples: Sequence[SensorSample],
    rig: RigConfig,
    voltage: float,
    threshold_sigma: float = DEFAULT_OUTLIER_SIGMA,
) -> ReducedMeasurement:
    """Filter, average and convert one steady-state log into a friction value."""
    clean = remove_outliers(samples, threshold_sigma)
    mean = steady_state_mean(clean)
    per_sample = np.array([friction_from_wrench(s.wrench, rig) for s in clean])
    spread = float(per_sample.std(ddof=1)) if per_sample.size > 1 else 0.0
    return ReducedMeasurement(
        voltage=voltage,
        F_f_mean=friction_from_wrench(mean, rig),
        F_f_std=spread,
        n_samples=len(clean),
    )


def aggregate_repeats(measurements: Iterable[ReducedMeasurement]) -> list[RepeatSummary]:
    """Combine repeated runs per voltage, in ascending voltage order.

    The spread is the sample standard deviation of the per-run means; a
    voltage measured once reports 0.
    """
    pairs = [(m.voltage, m.F_f_mean) for m in measurements]
    if not pairs:
        return []
    frame = pd.DataFrame(pairs, columns=["voltage", "F_f_mean"], dtype=float)
    stats = frame.groupby("voltage", sort=True)["F_f_mean"].agg(["mean", "std", "count"])
    return [
        RepeatSummary(
            voltage=float(voltage),
            F_f_mean=float(mean),
            F_f_std=float(std) if count > 1 else 0.0,
            n_repeats=int(count),
        )
        for voltage, mean, std, count in stats.itertuples(name=None)
    ]


# =============================================================================
# Fitting
# =============================================================================


def fit_quadratic(points: Iterable[tuple[float, float]]) -> FitResult:
    """Least squares on the basis {V^2, 1}.

    Columns are normalized before the solve so the V^2 ~ 1e7 scale does not
    cost precision in the intercept.

    Raises:
        FitError: With fewer than 3 points or fewer than 2 distinct V^2 values
    """
    data = np.array(list(points), dtype=float).reshape(-1, 2)
    n_points = data.shape[0]
    if n_points < 3:
        raise FitError(f"a quadratic fit needs at least 3 points, got {n_points}")

    v_squared = data[:, 0] ** 2
    force = data[:, 1]
    if np.unique(v_squared).size < 2:
        raise FitError("all voltages have the same magnitude; the V^2 term is not identifiable")

    design = np.column_stack([v_squared, np.ones(n_points)])
    norms = np.linalg.norm(design, axis=0)
    scaled, _, rank, _ = np.linalg.lstsq(design / norms, force, rcond=None)
    if rank < 2:
        raise FitError("rank-deficient design matrix")

    coeff_a, coeff_b = scaled / norms
    residual = design @ np.array([coeff_a, coeff_b]) - force
    return FitResult(
        coeff_a=float(coeff_a),
        coeff_b=float(coeff_b),
        rms_residual=float(np.sqrt(np.mean(residual**2))),
        n_points=n_points,
    )


def fit_overlay(
    fit: FitResult, v_min: float, v_max: float, step: float = OVERLAY_STEP_V
) -> list[tuple[float, float]]:
    """Fitted curve sampled every ``step`` volts from v_min through v_max."""
    voltages = np.arange(v_min, v_max + step / 2, step)
    return [(float(v), fit.predict(float(v))) for v in voltages]


def predicted_coefficients(m: MechanismSpec, T0: float) -> tuple[float, float]:
    """Model coefficients of T = a V^2 + b.

    a = eps0 eps_e w (e^{mu kappa s} - 1) / (2 d_e^2 kappa),  b = T0 e^{mu kappa s}
    """
    at_zero = terminal_tension(m, DriveState(voltage_V=0.0, preload_T0=T0))
    at_one_volt = terminal_tension(m, DriveState(voltage_V=1.0, preload_T0=0.0))
    return at_one_volt.electro_term, at_zero.terminal_tension_T


def implied_wrap_exponent(intercept_b: float, T0: float, mu: float) -> float:
    """kappa*s implied by a fitted intercept: ln(b / T0) / mu."""
    if not (intercept_b > 0 and T0 > 0 and mu > 0):
        raise DomainError("back-solving kappa*s needs b > 0, T0 > 0 and mu > 0")
    return math.log(intercept_b / T0) / mu


def published_fit_curve(mass_kg: float) -> FitResult:
    """Published quadratic fit for one suspended mass (25, 50 or 100 g)."""
    for mass, intercept in PUBLISHED_FIT_INTERCEPTS.items():
        if math.isclose(mass, mass_kg, rel_tol=1e-9):
            return FitResult(PUBLISHED_FIT_SLOPE, intercept, rms_residual=0.0, n_points=8)
    known = ", ".join(f"{m * 1e3:g} g" for m in PUBLISHED_FIT_INTERCEPTS)
    raise DomainError(f"no published fit for {mass_kg * 1e3:g} g (known: {known})")


def model_residuals(
    m: MechanismSpec, T0: float, points: Iterable[tuple[float, float]]
) -> list[tuple[float, float, float, float]]:
    """(V, measured, model, measured - model) for each data point."""
    rows = []
    for voltage, measured in points:
        model = terminal_tension(m, DriveState(voltage_V=voltage, preload_T0=T0))
        rows.append((voltage, measured, model.terminal_tension_T, measured - model.terminal_tension_T))
    if rows:
        logger.debug("model wrap exponent mu*kappa*s = %.6g", wrap_exponent(m))
    return rows
