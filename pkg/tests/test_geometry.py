"""Tests for helix geometry."""

import math

import numpy as np
import pytest

from hws_elj.exceptions import DomainError, ValidationError
from hws_elj.geometry import (
    HelixGeometry,
    arc_length,
    contact_area,
    curvature,
    frenet_derivatives,
    frenet_frame,
    helix_constant_a,
    numerical_curvature,
    numerical_torsion,
    position,
    torsion,
    total_arc_length,
)

SPECIMEN = HelixGeometry(radius_R=4e-3, pitch_H=13e-3, total_angle_Phi=math.radians(450))


def _random_helices(
    n: int, seed: int, min_pitch: float = 0.0
) -> list[tuple[HelixGeometry, float]]:
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(n):
        h = HelixGeometry(
            radius_R=float(rng.uniform(1e-3, 50e-3)),
            pitch_H=float(rng.uniform(min_pitch, 100e-3)),
            total_angle_Phi=float(rng.uniform(0.5, 6 * math.pi)),
        )
        cases.append((h, float(rng.uniform(0.0, h.total_angle_Phi))))
    return cases


def test_specimen_constants() -> None:
    """Published-size specimen: a, s, kappa and tau."""
    assert helix_constant_a(SPECIMEN) == pytest.approx(4.5034e-3, rel=1e-4)
    assert total_arc_length(SPECIMEN) == pytest.approx(0.035369, rel=1e-4)
    assert curvature(SPECIMEN) == pytest.approx(197.23, rel=1e-4)
    assert torsion(SPECIMEN) == pytest.approx(102.02, rel=1e-4)


def test_kappa_s_is_radius_times_angle_over_a() -> None:
    """kappa * s collapses to R * Phi / a."""
    expected = SPECIMEN.radius_R * SPECIMEN.total_angle_Phi / helix_constant_a(SPECIMEN)
    assert curvature(SPECIMEN) * total_arc_length(SPECIMEN) == pytest.approx(expected, rel=1e-12)


def test_circle_limit() -> None:
    """H = 0 is a circle: kappa = 1/R, tau = 0, a = R."""
    circle = HelixGeometry(radius_R=5e-3, pitch_H=0.0, total_angle_Phi=2 * math.pi)
    assert helix_constant_a(circle) == 5e-3
    assert curvature(circle) == pytest.approx(200.0, rel=1e-12)
    assert torsion(circle) == 0.0


def test_position_endpoints() -> None:
    """Start on the x axis; after a full turn the axial advance is one pitch."""
    h = HelixGeometry(radius_R=4e-3, pitch_H=13e-3, total_angle_Phi=2 * math.pi)
    np.testing.assert_allclose(position(h, 0.0), [4e-3, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(position(h, 2 * math.pi), [4e-3, 0.0, 13e-3], atol=1e-15)


def test_arc_length_and_contact_area() -> None:
    a = helix_constant_a(SPECIMEN)
    assert arc_length(SPECIMEN, 1.0) == pytest.approx(a, rel=1e-15)
    assert arc_length(SPECIMEN, 0.0) == 0.0
    assert contact_area(SPECIMEN, 7e-3) == pytest.approx(7e-3 * total_arc_length(SPECIMEN))


@pytest.mark.parametrize("phi", [-1e-3, math.radians(450) + 1e-3])
def test_phi_outside_wrap_rejected(phi: float) -> None:
    with pytest.raises(DomainError):
        position(SPECIMEN, phi)
    with pytest.raises(DomainError):
        frenet_frame(SPECIMEN, phi)


@pytest.mark.parametrize(
    "radius,pitch,angle",
    [(0.0, 1e-3, 1.0), (-1e-3, 1e-3, 1.0), (1e-3, -1e-3, 1.0), (1e-3, 1e-3, 0.0)],
)
def test_invalid_helix_rejected(radius: float, pitch: float, angle: float) -> None:
    with pytest.raises(ValidationError):
        HelixGeometry(radius_R=radius, pitch_H=pitch, total_angle_Phi=angle)


def test_frenet_frame_orthonormal_random() -> None:
    """Unit vectors, pairwise orthogonal, right-handed, over 1000 random points."""
    for h, phi in _random_helices(1000, seed=7):
        f = frenet_frame(h, phi)
        for v in (f.tangent_t, f.normal_n, f.binormal_b):
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12
        assert abs(np.dot(f.tangent_t, f.normal_n)) < 1e-12
        assert abs(np.dot(f.tangent_t, f.binormal_b)) < 1e-12
        assert abs(np.dot(f.normal_n, f.binormal_b)) < 1e-12
        np.testing.assert_array_equal(f.binormal_b, np.cross(f.tangent_t, f.normal_n))


def test_frenet_serret_equations_random() -> None:
    """dt/ds = kappa n, dn/ds = -kappa t + tau b, db/ds = -tau n by finite differences."""
    for h, phi in _random_helices(1000, seed=11):
        kappa, tau = curvature(h), torsion(h)
        f = frenet_frame(h, phi)
        dt, dn, db = frenet_derivatives(h, phi)
        atol = 1e-6 * max(kappa, tau)
        np.testing.assert_allclose(dt, kappa * f.normal_n, atol=atol)
        np.testing.assert_allclose(dn, -kappa * f.tangent_t + tau * f.binormal_b, atol=atol)
        np.testing.assert_allclose(db, -tau * f.normal_n, atol=atol)


def test_numerical_curvature_and_torsion_match_closed_form_random() -> None:
    for h, phi in _random_helices(1000, seed=17, min_pitch=1e-3):
        assert numerical_curvature(h, phi) == pytest.approx(curvature(h), rel=1e-6)
        assert numerical_torsion(h, phi) == pytest.approx(torsion(h), rel=1e-6)


@pytest.mark.parametrize("phi", [0.1, 0.5, 1.0])
def test_numerical_oracles_on_specimen(phi: float) -> None:
    assert numerical_curvature(SPECIMEN, phi) == pytest.approx(curvature(SPECIMEN), rel=1e-6)
    assert numerical_torsion(SPECIMEN, phi) == pytest.approx(torsion(SPECIMEN), rel=1e-6)
