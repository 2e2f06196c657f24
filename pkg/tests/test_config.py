"""Tests for config module."""

import math
from pathlib import Path

import pytest

from hws_elj.config import (
    CONFIG_ENV_VAR,
    DEFAULT_CONFIG,
    ConfigError,
    RunConfig,
    _deep_merge,
    build_run_config,
    get_config_path,
    load_config,
    published_fixture_overlay,
    with_reference_finger,
)
from hws_elj.fixtures import FINGER_LOADS, FINGER_VOLTAGES, reference_finger

GEOMETRY_ONLY_TOML = """\
[mechanism.helix]
radius = "4 mm"
pitch = "13 mm"

[mechanism.stack]
thickness_d1 = "50 um"
thickness_d2 = "50 um"
"""


def test_get_config_path_prefers_explicit(tmp_path: Path, monkeypatch) -> None:
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "env.toml"))
    assert get_config_path(tmp_path / "cli.toml") == tmp_path / "cli.toml"
    assert get_config_path() == tmp_path / "env.toml"


def test_get_config_path_defaults_to_none() -> None:
    assert get_config_path() is None


def test_no_config_gives_defaults() -> None:
    config = load_config()
    assert config.mechanism is None
    assert config.threshold_sigma == 3.0
    assert config.rel_tol == 1e-10
    assert config.profile_samples == 50
    assert config.workers == 1


def test_load_specimen_config(write_config, specimen_toml: str) -> None:
    config = load_config(write_config(specimen_toml))
    assert config.mechanism is not None
    assert config.mechanism.helix.radius_R == pytest.approx(4e-3)
    assert config.mechanism.helix.total_angle_Phi == pytest.approx(math.radians(450))
    assert config.mechanism.stack.electrode_width_w == pytest.approx(7e-3)
    assert config.mechanism.stack.eps_0 == 8.85e-12
    assert config.drive is not None
    assert config.drive.voltage_V == 3000.0
    assert config.drive.preload_T0 == pytest.approx(0.24525)
    assert config.rig is not None
    assert config.rig.gravity_g == 9.81
    assert config.rig.sampling_hz == 10.0


def test_env_var_config(write_config, specimen_toml: str, monkeypatch) -> None:
    monkeypatch.setenv(CONFIG_ENV_VAR, str(write_config(specimen_toml)))
    assert load_config().mechanism is not None


def test_load_finger_config(write_config, finger_toml: str) -> None:
    config = load_config(write_config(finger_toml))
    assert config.finger is not None
    assert config.finger.spring_k == 100.0
    assert config.finger.core_radius_rc == pytest.approx(8e-3)
    assert config.voltages == [0.0, 1000.0, 2000.0, 3000.0]
    assert config.loads == pytest.approx([0.5, 0.7, 0.9, 1.1, 1.3, 1.5])


def test_missing_field_names_its_path(write_config, specimen_toml: str) -> None:
    text = specimen_toml.replace('pitch = "13 mm"\n', "")
    with pytest.raises(ConfigError, match="mechanism.helix.pitch"):
        load_config(write_config(text))


def test_bare_number_for_length_rejected(write_config, specimen_toml: str) -> None:
    text = specimen_toml.replace('radius = "4 mm"', "radius = 4")
    with pytest.raises(ConfigError, match="mechanism.helix.radius"):
        load_config(write_config(text))


def test_invalid_value_reports_section(write_config, specimen_toml: str) -> None:
    text = specimen_toml.replace("friction_mu = 0.22", "friction_mu = -0.22")
    with pytest.raises(ConfigError, match="mechanism.stack"):
        load_config(write_config(text))


def test_sweep_list_entries_are_indexed(write_config, specimen_toml: str) -> None:
    text = specimen_toml + '\n[sweep]\nvoltages = ["1000 V", "2 kV", "3000"]\n'
    with pytest.raises(ConfigError, match=r"sweep.voltages\[2\]"):
        load_config(write_config(text))


def test_broken_toml(write_config) -> None:
    with pytest.raises(ConfigError, match="parse"):
        load_config(write_config("[mechanism\nradius = "))


def test_missing_file(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="read"):
        load_config(tmp_path / "absent.toml")


def test_inadmissible_pitch_allowed_for_limit_test(write_config, specimen_toml: str) -> None:
    text = specimen_toml.replace('pitch = "13 mm"', 'pitch = "0 mm"')
    with pytest.raises(ConfigError, match="circular"):
        load_config(write_config(text))
    config = load_config(write_config(text), limit_test=True)
    assert config.mechanism is not None
    assert config.mechanism.helix.pitch_H == 0.0


def test_finger_needs_mechanism() -> None:
    with pytest.raises(ConfigError, match="mechanism"):
        build_run_config(
            {
                "finger": {
                    "spring_k": "100 N/m",
                    "pre_extension": "5 mm",
                    "core_radius": "8 mm",
                    "lever": "50 mm",
                }
            }
        )


def test_drive_from_preload_or_mass() -> None:
    config = build_run_config({"drive": {"voltage": "1 kV", "preload": "0.5 N"}})
    assert config.drive is not None
    assert config.drive.preload_T0 == 0.5
    with pytest.raises(ConfigError, match="preload"):
        build_run_config({"drive": {"voltage": "1 kV"}})


def test_require_names_missing_section() -> None:
    config = RunConfig()
    with pytest.raises(ConfigError, match=r"\[mechanism\].*helix-info"):
        config.require("mechanism", "helix-info")
    with pytest.raises(ConfigError, match=r"\[sweep.voltages\]"):
        config.require("voltages", "tension sweep")


def test_fixture_overlay_fills_published_constants(write_config) -> None:
    config = load_config(write_config(GEOMETRY_ONLY_TOML), paper_fixtures=True)
    assert config.mechanism is not None
    stack = config.mechanism.stack
    assert (stack.eps_r1, stack.eps_r2, stack.friction_mu) == (3.6, 3.6, 0.22)
    assert stack.electrode_width_w == pytest.approx(7e-3)
    assert config.mechanism.helix.total_angle_Phi == pytest.approx(math.radians(450))
    assert config.voltages == [1000.0, 1400.0, 1800.0, 2200.0, 2600.0, 3000.0, 3400.0, 3800.0]
    assert config.preloads == pytest.approx([0.24525, 0.4905, 0.981])


def test_fixture_overlay_never_invents_geometry() -> None:
    """Radius, pitch and film thickness must still come from the file."""
    assert "radius" not in published_fixture_overlay()["mechanism"]["helix"]
    with pytest.raises(ConfigError, match="mechanism.helix.radius"):
        load_config(paper_fixtures=True)


def test_deep_merge_does_not_mutate() -> None:
    base = {"a": {"b": 1, "c": 2}}
    merged = _deep_merge(base, {"a": {"c": 3}})
    assert merged == {"a": {"b": 1, "c": 3}}
    assert base == {"a": {"b": 1, "c": 2}}
    assert DEFAULT_CONFIG["sweep"]["voltages"] == []


def test_output_path_is_the_fallback_for_out() -> None:
    config = build_run_config({"output": {"path": "report.csv"}})
    assert config.output_path == Path("report.csv")
    assert config.output_for(None) == Path("report.csv")
    assert config.output_for(Path("flag.csv")) == Path("flag.csv")
    assert RunConfig().output_for(None) is None


def test_with_reference_finger_fills_missing_parts() -> None:
    filled = with_reference_finger(RunConfig())
    assert filled.finger == reference_finger()
    assert filled.voltages == list(FINGER_VOLTAGES)
    assert filled.loads == list(FINGER_LOADS)


def test_with_reference_finger_keeps_user_grids() -> None:
    config = RunConfig(voltages=[500.0], loads=[0.2])
    filled = with_reference_finger(config)
    assert (filled.voltages, filled.loads) == ([500.0], [0.2])
    assert config.finger is None
