"""Shared pytest fixtures for hws-elj tests."""

from collections.abc import Callable
from pathlib import Path

import pytest

from hws_elj.finger import FingerConfig
from hws_elj.fixtures import reference_finger, specimen_mechanism
from hws_elj.tension import MechanismSpec

SPECIMEN_TOML = """\
[mechanism.helix]
radius = "4 mm"
pitch = "13 mm"
total_angle = "450 deg"

[mechanism.stack]
eps_r1 = 3.6
thickness_d1 = "50 um"
eps_r2 = 3.6
thickness_d2 = "50 um"
electrode_width = "7 mm"
friction_mu = 0.22

[drive]
voltage = "3000 V"
mass = "25 g"

[rig]
groove_radius = "8 mm"
mass = "25 g"
"""

FINGER_TOML = """\
[mechanism.helix]
radius = "4 mm"
pitch = "13 mm"
total_angle = "360 deg"

[mechanism.stack]
eps_r1 = 3.6
thickness_d1 = "50 um"
eps_r2 = 3.6
thickness_d2 = "50 um"
electrode_width = "6 mm"
friction_mu = 0.22

[finger]
spring_k = "100 N/m"
pre_extension = "5 mm"
core_radius = "8 mm"
lever = "50 mm"

[sweep]
voltages = ["0 V", "1000 V", "2000 V", "3000 V"]
loads = ["0.5 N", "0.7 N", "0.9 N", "1.1 N", "1.3 N", "1.5 N"]
"""


@pytest.fixture(autouse=True)
def isolate_config_globally(monkeypatch) -> None:
    """Keep a developer's HWSELJ_CONFIG from leaking into tests."""
    monkeypatch.delenv("HWSELJ_CONFIG", raising=False)


@pytest.fixture
def specimen_toml() -> str:
    """Config text for the synthetic specimen with a 3 kV drive and a 25 g rig."""
    return SPECIMEN_TOML


@pytest.fixture
def finger_toml() -> str:
    """Config text for the finger joint and its 4 x 6 load sweep."""
    return FINGER_TOML


@pytest.fixture
def specimen() -> MechanismSpec:
    """Synthetic 450 degree specimen: R=4 mm, H=13 mm, 7 mm electrode, mu=0.22."""
    return specimen_mechanism()


@pytest.fixture
def finger() -> FingerConfig:
    """Finger joint with a 6 mm electrode wound through 360 degrees."""
    return reference_finger()


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Factory writing TOML text to a file under tmp_path."""

    def _write(text: str, name: str = "hwselj.toml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def write_log(tmp_path: Path) -> Callable[..., Path]:
    """Factory writing a sensor log with constant channels plus optional overrides.

    Rows are ``(time, Fx, Fy, Fz, Tx, Ty, Tz)``; ``overrides`` maps a row
    index to a replacement row.
    """

    def _write(
        name: str = "run.csv",
        n: int = 50,
        fz: float = 3.0,
        tz: float = 0.032,
        overrides: dict[int, tuple[float, ...]] | None = None,
    ) -> Path:
        lines = ["time,Fx,Fy,Fz,Tx,Ty,Tz"]
        for i in range(n):
            row = (overrides or {}).get(i, (i * 0.1, 0.0, 0.0, fz, 0.0, 0.0, tz))
            lines.append(",".join(repr(float(v)) for v in row))
        path = tmp_path / name
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    return _write
