"""Run configuration for hws-elj.

Configuration is a TOML file whose sections mirror the model types::

    [mechanism.helix]
    radius = "4 mm"
    pitch = "13 mm"
    total_angle = "450 deg"

    [mechanism.stack]
    eps_r1 = 3.6
    thickness_d1 = "50 um"
    ...

Every dimensioned value carries an explicit unit; it is converted to SI
while the file is read.
"""

import copy
import os
import tomllib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any

from .constants import (
    DEFAULT_OUTLIER_SIGMA,
    DEFAULT_SAMPLING_HZ,
    EPS_0,
    ODE_DEFAULT_REL_TOL,
    PUBLISHED_ELECTRODE_WIDTH_M,
    PUBLISHED_EPS_R,
    PUBLISHED_FRICTION_MU,
    PUBLISHED_MASSES_KG,
    PUBLISHED_VOLTAGE_GRID,
    PUBLISHED_WRAP_DEG,
    STANDARD_GRAVITY,
)
from .electrostatics import DielectricStack
from .exceptions import HwsEljError
from .experiment import RigConfig
from .finger import FingerConfig
from .fixtures import FINGER_LOADS, FINGER_VOLTAGES, reference_finger
from .geometry import HelixGeometry
from .messages import ErrorMessages
from .tension import DriveState, MechanismSpec
from .units import Dimension, parse_dimensionless, parse_quantity


class ConfigError(HwsEljError):
    """Raised when configuration operations fail."""

    code = "config"


CONFIG_ENV_VAR = "HWSELJ_CONFIG"

DEFAULT_CONFIG: dict[str, Any] = {
    "mechanism": {
        "limit_test": False,
        "helix": {},
        "stack": {"eps_0": f"{EPS_0} F/m"},
    },
    "drive": {},
    "finger": {},
    "rig": {
        "gravity": f"{STANDARD_GRAVITY} m/s2",
        "sampling": f"{DEFAULT_SAMPLING_HZ} Hz",
    },
    "sweep": {
        "voltages": [],
        "preloads": [],
        "angles": [],
        "loads": [],
        "workers": 1,
    },
    "process": {"threshold_sigma": DEFAULT_OUTLIER_SIGMA},
    "ode": {"rel_tol": ODE_DEFAULT_REL_TOL},
    "profile": {"samples": 50},
    "output": {},
}

# Sections whose presence is decided by the user file, not by defaults
_OPTIONAL_SECTIONS = ("mechanism", "drive", "finger", "rig")
_GRID_FIELDS = ("voltages", "preloads", "angles", "loads")


@dataclass
class RunConfig:
    """Typed, SI-converted view of a configuration file."""

    mechanism: MechanismSpec | None = None
    drive: DriveState | None = None
    finger: FingerConfig | None = None
    rig: RigConfig | None = None
    voltages: list[float] = field(default_factory=list)
    preloads: list[float] = field(default_factory=list)
    angles: list[float] = field(default_factory=list)
    loads: list[float] = field(default_factory=list)
    workers: int = 1
    threshold_sigma: float = DEFAULT_OUTLIER_SIGMA
    rel_tol: float = ODE_DEFAULT_REL_TOL
    profile_samples: int = 50
    output_path: Path | None = None
    source: Path | None = None

    def require(self, attr: str, command: str) -> Any:
        """Return a section or sweep grid, raising ConfigError naming it when absent."""
        value = getattr(self, attr)
        if value is None or value == []:
            section = f"sweep.{attr}" if attr in _GRID_FIELDS else attr
            raise ConfigError(ErrorMessages.missing_section(section, command))
        return value

    def output_for(self, out: Path | None) -> Path | None:
        """Output file for a command: the --out flag wins over [output] path."""
        return out if out is not None else self.output_path


def get_config_path(explicit: Path | None = None) -> Path | None:
    """Resolve the config file to read.

    Priority order:
    1. ``--config`` flag
    2. Environment variable HWSELJ_CONFIG
    3. None (defaults only)
    """
    if explicit is not None:
        return explicit
    env_path = os.environ.get(CONFIG_ENV_VAR)
    if env_path and env_path.strip():
        return Path(env_path.strip())
    return None


def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Deep merge two dictionaries.

    Args:
        base: Base dictionary
        override: Dictionary with overriding values

    Returns:
        Merged dictionary (deep copy to avoid mutations)
    """
    result = copy.deepcopy(base)
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = copy.deepcopy(value)
    return result


def load_raw_config(path: Path | None) -> dict[str, Any]:
    """Read a TOML config file (or nothing) without merging defaults."""
    if path is None:
        return {}
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except OSError as e:
        raise ConfigError(f"Failed to read config {path}: {e}")
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"Failed to parse config {path}: {e}")


def published_fixture_overlay() -> dict[str, Any]:
    """Published specimen constants and voltage sweep as a config fragment.

    Core radius, pitch and film thicknesses are not published and are left
    to the user's file.
    """
    return {
        "mechanism": {
            "helix": {"total_angle": f"{PUBLISHED_WRAP_DEG} deg"},
            "stack": {
                "eps_r1": PUBLISHED_EPS_R,
                "eps_r2": PUBLISHED_EPS_R,
                "eps_0": f"{EPS_0} F/m",
                "electrode_width": f"{PUBLISHED_ELECTRODE_WIDTH_M * 1e3} mm",
                "friction_mu": PUBLISHED_FRICTION_MU,
            },
        },
        "sweep": {
            "voltages": [f"{v} V" for v in PUBLISHED_VOLTAGE_GRID],
            # Hanging masses times g, unrounded
            "preloads": [f"{m * STANDARD_GRAVITY} N" for m in PUBLISHED_MASSES_KG],
        },
    }


def with_reference_finger(config: RunConfig) -> RunConfig:
    """Fill a missing [finger] and its voltage and load grids with the reference joint."""
    return replace(
        config,
        finger=config.finger or reference_finger(),
        voltages=config.voltages or list(FINGER_VOLTAGES),
        loads=config.loads or list(FINGER_LOADS),
    )


def load_config(
    path: Path | None = None,
    paper_fixtures: bool = False,
    limit_test: bool = False,
) -> RunConfig:
    """Load, merge and convert a configuration file into a RunConfig.

    Args:
        path: Explicit config file (falls back to HWSELJ_CONFIG)
        paper_fixtures: Overlay the published specimen constants and voltage grid
        limit_test: Admit non-buildable helices (H = 0, H <= w) for inspection
    """
    resolved = get_config_path(path)
    user = load_raw_config(resolved)
    if paper_fixtures:
        user = _deep_merge(user, published_fixture_overlay())
    config = build_run_config(user, limit_test=limit_test)
    config.source = resolved
    return config


def build_run_config(user: dict[str, Any], limit_test: bool = False) -> RunConfig:
    """Convert a user config dict (defaults merged underneath) into typed values."""
    present = {name for name in _OPTIONAL_SECTIONS if user.get(name)}
    raw = _deep_merge(DEFAULT_CONFIG, user)

    config = RunConfig()
    rig_gravity = _quantity(raw["rig"], "gravity", Dimension.ACCELERATION, "rig")

    if "mechanism" in present:
        config.mechanism = _build_mechanism(raw["mechanism"], limit_test)
    if "drive" in present:
        config.drive = _build_drive(raw["drive"], rig_gravity)
    if "rig" in present:
        config.rig = _build_rig(raw["rig"])
    if "finger" in present:
        if config.mechanism is None:
            raise ConfigError("[finger] needs a [mechanism] section for its HWS-ELJ joint")
        config.finger = _build_finger(raw["finger"], config.mechanism)

    sweep = raw["sweep"]
    config.voltages = _quantity_list(sweep, "voltages", Dimension.VOLTAGE, "sweep")
    config.preloads = _quantity_list(sweep, "preloads", Dimension.FORCE, "sweep")
    config.angles = _quantity_list(sweep, "angles", Dimension.ANGLE, "sweep")
    config.loads = _quantity_list(sweep, "loads", Dimension.FORCE, "sweep")
    config.workers = int(_number(sweep, "workers", "sweep"))

    config.threshold_sigma = _number(raw["process"], "threshold_sigma", "process")
    config.rel_tol = _number(raw["ode"], "rel_tol", "ode")
    config.profile_samples = int(_number(raw["profile"], "samples", "profile"))

    output_path = raw["output"].get("path")
    config.output_path = Path(output_path) if output_path else None
    return config


# =============================================================================
# Section builders
# =============================================================================


def _build_mechanism(section: dict[str, Any], limit_test: bool = False) -> MechanismSpec:
    helix_raw = section.get("helix", {})
    stack_raw = section.get("stack", {})
    helix = _construct(
        HelixGeometry,
        "mechanism.helix",
        radius_R=_quantity(helix_raw, "radius", Dimension.LENGTH, "mechanism.helix"),
        pitch_H=_quantity(helix_raw, "pitch", Dimension.LENGTH, "mechanism.helix"),
        total_angle_Phi=_quantity(helix_raw, "total_angle", Dimension.ANGLE, "mechanism.helix"),
    )
    prefix = "mechanism.stack"
    stack = _construct(
        DielectricStack,
        prefix,
        eps_r1=_number(stack_raw, "eps_r1", prefix),
        thickness_d1=_quantity(stack_raw, "thickness_d1", Dimension.LENGTH, prefix),
        eps_r2=_number(stack_raw, "eps_r2", prefix),
        thickness_d2=_quantity(stack_raw, "thickness_d2", Dimension.LENGTH, prefix),
        electrode_width_w=_quantity(stack_raw, "electrode_width", Dimension.LENGTH, prefix),
        friction_mu=_number(stack_raw, "friction_mu", prefix),
        eps_0=_quantity(stack_raw, "eps_0", Dimension.PERMITTIVITY, prefix),
    )
    return _construct(
        MechanismSpec,
        "mechanism",
        helix=helix,
        stack=stack,
        limit_test=limit_test or bool(section.get("limit_test", False)),
    )


def _build_drive(section: dict[str, Any], gravity: float) -> DriveState:
    voltage = _quantity(section, "voltage", Dimension.VOLTAGE, "drive")
    if "preload" in section:
        preload = _quantity(section, "preload", Dimension.FORCE, "drive")
    elif "mass" in section:
        preload = _quantity(section, "mass", Dimension.MASS, "drive") * gravity
    else:
        raise ConfigError("drive: set either 'preload' (force) or 'mass'")
    return _construct(DriveState, "drive", voltage_V=voltage, preload_T0=preload)


def _build_rig(section: dict[str, Any]) -> RigConfig:
    return _construct(
        RigConfig,
        "rig",
        groove_radius_r=_quantity(section, "groove_radius", Dimension.LENGTH, "rig"),
        mass_kg=_quantity(section, "mass", Dimension.MASS, "rig"),
        gravity_g=_quantity(section, "gravity", Dimension.ACCELERATION, "rig"),
        sampling_hz=_quantity(section, "sampling", Dimension.FREQUENCY, "rig"),
    )


def _build_finger(section: dict[str, Any], mechanism: MechanismSpec) -> FingerConfig:
    return _construct(
        FingerConfig,
        "finger",
        spring_k=_quantity(section, "spring_k", Dimension.STIFFNESS, "finger"),
        spring_pre_extension_x0=_quantity(section, "pre_extension", Dimension.LENGTH, "finger"),
        core_radius_rc=_quantity(section, "core_radius", Dimension.LENGTH, "finger"),
        fingertip_lever_Lf=_quantity(section, "lever", Dimension.LENGTH, "finger"),
        mechanism=mechanism,
    )


# =============================================================================
# Field helpers
# =============================================================================


def _construct(cls: Any, prefix: str, **kwargs: Any) -> Any:
    try:
        return cls(**kwargs)
    except HwsEljError as e:
        raise ConfigError(f"{prefix}: {e}")


def _field(section: dict[str, Any], key: str, prefix: str) -> Any:
    if key not in section:
        raise ConfigError(f"{prefix}.{key}: missing required field")
    return section[key]


def _quantity(section: dict[str, Any], key: str, dimension: Dimension, prefix: str) -> float:
    value = _field(section, key, prefix)
    try:
        return parse_quantity(value, dimension, f"{prefix}.{key}")
    except HwsEljError as e:
        raise ConfigError(str(e))


def _quantity_list(
    section: dict[str, Any], key: str, dimension: Dimension, prefix: str
) -> list[float]:
    values = section.get(key, [])
    if not isinstance(values, list):
        raise ConfigError(f"{prefix}.{key}: expected a list of quantities")
    try:
        return [
            parse_quantity(value, dimension, f"{prefix}.{key}[{i}]")
            for i, value in enumerate(values)
        ]
    except HwsEljError as e:
        raise ConfigError(str(e))


def _number(section: dict[str, Any], key: str, prefix: str) -> float:
    value = _field(section, key, prefix)
    try:
        return parse_dimensionless(value, f"{prefix}.{key}")
    except HwsEljError as e:
        raise ConfigError(str(e))
