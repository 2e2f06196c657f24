"""Tests for the terminal tension model."""

import math

import numpy as np
import pytest

from hws_elj.electrostatics import DielectricStack, electrostatic_line_load
from hws_elj.exceptions import (
    DomainError,
    ModelRangeError,
    UndefinedRatioError,
    ValidationError,
)
from hws_elj.fixtures import specimen_stack
from hws_elj.geometry import HelixGeometry, curvature, total_arc_length
from hws_elj.tension import (
    DriveState,
    MechanismSpec,
    amplification_ratio,
    capstan_tension,
    integrate_tension_ode,
    normal_load_profile,
    pitch_admissible,
    planar_length_for,
    planar_tension,
    required_angle,
    sweep_tension,
    tension_profile,
    terminal_tension,
    wrap_exponent,
)

SPECIMEN_T0 = 0.025 * 9.81


def _stack(mu: float = 0.22, width: float = 7e-3) -> DielectricStack:
    return DielectricStack(
        eps_r1=3.6,
        thickness_d1=50e-6,
        eps_r2=3.6,
        thickness_d2=50e-6,
        electrode_width_w=width,
        friction_mu=mu,
    )


def _random_cases(n: int, seed: int) -> list[tuple[MechanismSpec, DriveState]]:
    """Random helices, from flat circles to steep coils, on random two-film stacks."""
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n):
        helix = HelixGeometry(
            radius_R=float(rng.uniform(1e-3, 20e-3)),
            pitch_H=float(rng.uniform(0.0, 50e-3)),
            total_angle_Phi=float(rng.uniform(math.pi / 2, 4 * math.pi)),
        )
        stack = DielectricStack(
            eps_r1=float(rng.uniform(2.0, 4.0)),
            thickness_d1=float(rng.uniform(10e-6, 200e-6)),
            eps_r2=float(rng.uniform(2.0, 4.0)),
            thickness_d2=float(rng.uniform(10e-6, 200e-6)),
            electrode_width_w=float(rng.uniform(2e-3, 7e-3)),
            friction_mu=float(rng.uniform(0.0, 0.6)),
        )
        m = MechanismSpec(helix=helix, stack=stack, limit_test=True)
        d = DriveState(
            voltage_V=float(rng.uniform(0.0, 4000.0)), preload_T0=float(rng.uniform(0.0, 5.0))
        )
        cases.append((m, d))
    return cases


# =============================================================================
# Mechanism validation
# =============================================================================


def test_circular_wrap_needs_limit_test() -> None:
    circle = HelixGeometry(radius_R=4e-3, pitch_H=0.0, total_angle_Phi=1.0)
    with pytest.raises(ValidationError, match="circular"):
        MechanismSpec(helix=circle, stack=_stack())
    assert MechanismSpec(helix=circle, stack=_stack(), limit_test=True).limit_test


def test_pitch_must_exceed_electrode_width() -> None:
    tight = HelixGeometry(radius_R=4e-3, pitch_H=7e-3, total_angle_Phi=1.0)
    assert not pitch_admissible(tight, _stack())
    with pytest.raises(ValidationError, match="overlap"):
        MechanismSpec(helix=tight, stack=_stack())


def test_drive_rejects_negative_values() -> None:
    with pytest.raises(ValidationError):
        DriveState(voltage_V=-1.0, preload_T0=1.0)
    with pytest.raises(ValidationError):
        DriveState(voltage_V=0.0, preload_T0=-0.1)


# =============================================================================
# Closed form
# =============================================================================


def test_specimen_terminal_tension_at_3kv(specimen: MechanismSpec) -> None:
    """25 g preload at 3 kV on the 450 degree specimen."""
    solution = terminal_tension(specimen, DriveState(3000.0, SPECIMEN_T0))
    assert solution.capstan_gain == pytest.approx(4.6402, rel=1e-4)
    assert solution.terminal_tension_T == pytest.approx(2.990, rel=1e-3)
    assert solution.amplification == pytest.approx(2.990 / SPECIMEN_T0, rel=1e-3)


def test_capstan_ratio_anchor() -> None:
    """mu = 0.22 over kappa*s = 5.922 amplifies by 3.680."""
    circle = HelixGeometry(radius_R=4e-3, pitch_H=0.0, total_angle_Phi=5.922)
    m = MechanismSpec(helix=circle, stack=_stack(), limit_test=True)
    assert curvature(circle) * total_arc_length(circle) == pytest.approx(5.922, rel=1e-12)
    assert amplification_ratio(m, DriveState(0.0, 1.0)) == pytest.approx(3.680, abs=1e-3)


def test_zero_voltage_is_pure_capstan_random() -> None:
    for m, d in _random_cases(100, seed=3):
        zero = DriveState(0.0, d.preload_T0)
        ratio = terminal_tension(m, zero).terminal_tension_T / d.preload_T0
        assert ratio == pytest.approx(math.exp(wrap_exponent(m)), rel=1e-12)


def test_amplification_at_unit_preload(specimen: MechanismSpec) -> None:
    assert amplification_ratio(specimen, DriveState(0.0, 1.0)) >= 3.68
    assert amplification_ratio(specimen, DriveState(3000.0, 1.0)) > amplification_ratio(
        specimen, DriveState(0.0, 1.0)
    )


def test_amplification_undefined_without_preload(specimen: MechanismSpec) -> None:
    with pytest.raises(UndefinedRatioError):
        amplification_ratio(specimen, DriveState(3000.0, 0.0))
    assert terminal_tension(specimen, DriveState(3000.0, 0.0)).amplification is None


def test_zero_friction_passes_preload_through(specimen: MechanismSpec) -> None:
    m = MechanismSpec(helix=specimen.helix, stack=_stack(mu=0.0))
    assert terminal_tension(m, DriveState(3800.0, 0.5)).terminal_tension_T == pytest.approx(0.5)


def test_tension_monotone_in_voltage_preload_and_angle(specimen: MechanismSpec) -> None:
    base = terminal_tension(specimen, DriveState(2000.0, 0.5)).terminal_tension_T
    assert terminal_tension(specimen, DriveState(2400.0, 0.5)).terminal_tension_T > base
    assert terminal_tension(specimen, DriveState(2000.0, 0.6)).terminal_tension_T > base
    longer = specimen.with_angle(specimen.helix.total_angle_Phi * 1.1)
    assert terminal_tension(longer, DriveState(2000.0, 0.5)).terminal_tension_T > base


def test_tension_increases_with_friction(specimen: MechanismSpec) -> None:
    drive = DriveState(2000.0, SPECIMEN_T0)
    tensions = [
        terminal_tension(
            MechanismSpec(helix=specimen.helix, stack=_stack(mu=mu)), drive
        ).terminal_tension_T
        for mu in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6)
    ]
    assert tensions[0] == pytest.approx(SPECIMEN_T0)
    assert all(b > a for a, b in zip(tensions, tensions[1:], strict=False))


def test_amplification_grows_affinely_in_voltage_squared() -> None:
    """Wrap sized so the 25 g preload is amplified to the published 0.902 N at 0 V."""
    wrap = math.log(0.902 / SPECIMEN_T0) / 0.22
    circle = HelixGeometry(radius_R=4e-3, pitch_H=0.0, total_angle_Phi=wrap)
    m = MechanismSpec(helix=circle, stack=_stack(), limit_test=True)

    base = amplification_ratio(m, DriveState(0.0, 1.0))
    assert base == pytest.approx(0.902 / SPECIMEN_T0, rel=1e-12)

    voltages = [1000.0, 1400.0, 1800.0, 2200.0, 2600.0, 3000.0, 3400.0, 3800.0]
    ratios = [amplification_ratio(m, DriveState(v, 1.0)) for v in voltages]
    assert all(b > a for a, b in zip([base, *ratios[:-1]], ratios, strict=True))
    slopes = [(r - base) / v**2 for v, r in zip(voltages, ratios, strict=True)]
    for slope in slopes[1:]:
        assert slope == pytest.approx(slopes[0], rel=1e-9)


def test_voltage_term_is_independent_of_preload(specimen: MechanismSpec) -> None:
    """T(V, T0) - T(0, T0) does not depend on T0 (superposition)."""
    lifts = [
        terminal_tension(specimen, DriveState(3000.0, t0)).terminal_tension_T
        - terminal_tension(specimen, DriveState(0.0, t0)).terminal_tension_T
        for t0 in (0.0, 0.24525, 0.4905, 0.981)
    ]
    for lift in lifts[1:]:
        assert lift == pytest.approx(lifts[0], rel=1e-12)


def test_overflow_guard() -> None:
    circle = HelixGeometry(radius_R=4e-3, pitch_H=0.0, total_angle_Phi=4000.0)
    m = MechanismSpec(helix=circle, stack=_stack(mu=0.2), limit_test=True)
    with pytest.raises(ModelRangeError, match="700"):
        terminal_tension(m, DriveState(0.0, 1.0))


def test_partial_arc_length(specimen: MechanismSpec) -> None:
    d = DriveState(1000.0, 0.3)
    assert terminal_tension(specimen, d, arc_length=0.0).terminal_tension_T == pytest.approx(0.3)
    with pytest.raises(DomainError):
        terminal_tension(specimen, d, arc_length=1.0)


# =============================================================================
# ODE oracle
# =============================================================================


def test_closed_form_matches_ode_random() -> None:
    for m, d in _random_cases(100, seed=42):
        closed = terminal_tension(m, d).terminal_tension_T
        numeric = integrate_tension_ode(m, d, rel_tol=1e-10)
        assert abs(numeric - closed) / closed < 1e-8


def test_ode_fixed_step_fallback(mocker, specimen: MechanismSpec) -> None:
    """When the adaptive solve fails, RK4 with Richardson extrapolation takes over."""
    mocker.patch("hws_elj.tension._solve_adaptive", return_value=None)
    d = DriveState(3000.0, SPECIMEN_T0)
    closed = terminal_tension(specimen, d).terminal_tension_T
    assert integrate_tension_ode(specimen, d, rel_tol=1e-10) == pytest.approx(closed, rel=1e-8)


def test_ode_without_friction_returns_preload(specimen: MechanismSpec) -> None:
    m = MechanismSpec(helix=specimen.helix, stack=_stack(mu=0.0))
    assert integrate_tension_ode(m, DriveState(3000.0, 0.7)) == 0.7


@pytest.mark.parametrize("rel_tol", [1e-15, 1e-2])
def test_ode_tolerance_range(specimen: MechanismSpec, rel_tol: float) -> None:
    with pytest.raises(DomainError, match="rel_tol"):
        integrate_tension_ode(specimen, DriveState(0.0, 1.0), rel_tol=rel_tol)


# =============================================================================
# Profiles
# =============================================================================


def test_profile_endpoints(specimen: MechanismSpec) -> None:
    d = DriveState(3000.0, SPECIMEN_T0)
    profile = tension_profile(specimen, d, 11)
    assert len(profile) == 11
    assert profile[0] == (0.0, pytest.approx(SPECIMEN_T0, rel=1e-12))
    assert profile[-1][0] == pytest.approx(total_arc_length(specimen.helix))
    assert profile[-1][1] == pytest.approx(terminal_tension(specimen, d).terminal_tension_T)
    tensions = [t for _, t in profile]
    assert tensions == sorted(tensions)


def test_normal_load_profile(specimen: MechanismSpec) -> None:
    d = DriveState(2000.0, 0.5)
    q_e = electrostatic_line_load(specimen.stack, 2000.0)
    kappa = curvature(specimen.helix)
    for (s, t), (s2, dn_ds) in zip(
        tension_profile(specimen, d, 5), normal_load_profile(specimen, d, 5), strict=True
    ):
        assert s == s2
        assert dn_ds == pytest.approx(kappa * t + q_e, rel=1e-12)


def test_profile_needs_two_samples(specimen: MechanismSpec) -> None:
    with pytest.raises(DomainError):
        tension_profile(specimen, DriveState(0.0, 1.0), 1)


# =============================================================================
# Planar comparison
# =============================================================================


def test_planar_continuity() -> None:
    """The closed form at kappa = 1e-9 /m reduces to T0 + mu q_e L."""
    stack = specimen_stack()
    length = 0.035369
    d = DriveState(3000.0, SPECIMEN_T0)
    q_e = electrostatic_line_load(stack, 3000.0)
    helical = capstan_tension(SPECIMEN_T0, q_e, 0.22, 1e-9, length).terminal_tension_T
    assert helical == pytest.approx(planar_tension(stack, length, d), rel=1e-6)


def test_planar_continuity_across_series_switch() -> None:
    """Both branches agree just either side of kappa*s = 1e-9."""
    q_e, length = 100.0, 0.035
    below = capstan_tension(0.3, q_e, 0.22, 0.9e-9 / length, length).terminal_tension_T
    above = capstan_tension(0.3, q_e, 0.22, 1.1e-9 / length, length).terminal_tension_T
    assert below == pytest.approx(above, rel=1e-9)


def test_specimen_planar_tension(specimen: MechanismSpec) -> None:
    d = DriveState(3000.0, SPECIMEN_T0)
    planar = planar_tension(specimen.stack, total_arc_length(specimen.helix), d)
    assert planar == pytest.approx(1.0262, rel=1e-3)


def test_planar_length_for_target(specimen: MechanismSpec) -> None:
    d = DriveState(3000.0, SPECIMEN_T0)
    target = terminal_tension(specimen, d).terminal_tension_T
    length = planar_length_for(specimen.stack, d, target)
    assert planar_tension(specimen.stack, length, d) == pytest.approx(target, rel=1e-12)
    assert length > total_arc_length(specimen.helix)
    assert planar_length_for(specimen.stack, d, SPECIMEN_T0) == 0.0


def test_planar_length_unreachable_without_voltage(specimen: MechanismSpec) -> None:
    with pytest.raises(ModelRangeError):
        planar_length_for(specimen.stack, DriveState(0.0, 0.5), 1.0)


# =============================================================================
# Inverse design
# =============================================================================


def test_required_angle_inverts_terminal_tension(specimen: MechanismSpec) -> None:
    d = DriveState(3000.0, SPECIMEN_T0)
    target = terminal_tension(specimen, d).terminal_tension_T
    angle = required_angle(specimen, d, target)
    assert angle == pytest.approx(specimen.helix.total_angle_Phi, rel=1e-9)


def test_required_angle_edges(specimen: MechanismSpec) -> None:
    d = DriveState(1000.0, 0.5)
    assert required_angle(specimen, d, 0.5) == 0.0
    with pytest.raises(DomainError):
        required_angle(specimen, d, 0.4)
    with pytest.raises(ModelRangeError):
        required_angle(specimen, d, 1e306)


def test_required_angle_needs_friction(specimen: MechanismSpec) -> None:
    m = MechanismSpec(helix=specimen.helix, stack=_stack(mu=0.0))
    with pytest.raises(DomainError):
        required_angle(m, DriveState(1000.0, 0.5), 1.0)


# =============================================================================
# Sweeps
# =============================================================================


def test_published_grid_sweep_is_increasing(specimen: MechanismSpec) -> None:
    voltages = [float(v) for v in range(1000, 3801, 400)]
    rows = sweep_tension(specimen, voltages, [SPECIMEN_T0])
    assert [r.voltage_V for r in rows] == voltages
    tensions = [r.tension_T for r in rows if r.tension_T is not None]
    assert len(tensions) == 8
    assert all(b > a for a, b in zip(tensions, tensions[1:], strict=False))


def test_sweep_order_is_deterministic_across_workers(specimen: MechanismSpec) -> None:
    voltages = [3000.0, 0.0, 1500.0]
    preloads = [0.5, 0.1]
    angles = [2.0, 7.0, 4.0]
    serial = sweep_tension(specimen, voltages, preloads, angles, workers=1)
    pooled = sweep_tension(specimen, voltages, preloads, angles, workers=4)
    assert serial == pooled
    assert [(r.voltage_V, r.preload_T0, r.total_angle_Phi) for r in serial][:4] == [
        (3000.0, 0.5, 2.0),
        (3000.0, 0.5, 7.0),
        (3000.0, 0.5, 4.0),
        (3000.0, 0.1, 2.0),
    ]


def test_sweep_matches_single_evaluation(specimen: MechanismSpec) -> None:
    row = sweep_tension(specimen, [2200.0], [0.4])[0]
    single = terminal_tension(specimen, DriveState(2200.0, 0.4))
    assert row.tension_T == single.terminal_tension_T
    assert row.amplification == single.amplification
    assert row.note == ""


def test_sweep_annotates_failures(specimen: MechanismSpec) -> None:
    rows = sweep_tension(specimen, [1000.0], [0.0, 0.5], [7.0, 1e6])
    notes = [r.note for r in rows]
    assert notes == ["undefined-ratio", "range", "", "range"]
    assert rows[1].tension_T is None
