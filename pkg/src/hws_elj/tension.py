"""Terminal tension of the helically wound electrode.

Force balance on a differential segment of the wound strip gives, along the
tangent and the principal normal,

    dT/ds = mu dN/ds,      dN/ds = kappa T + q_e

so the tension obeys the linear ODE dT/ds - mu kappa T = mu q_e with the
closed-form solution

    T(s) = T0 e^{mu kappa s} + (q_e / kappa) (e^{mu kappa s} - 1).

On the full wrap s = a Phi, so kappa s = R Phi / a. The model assumes the
strip is being pulled out against friction; paying in is not distinguished.
"""

import dataclasses
import itertools
import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import bisect

from .constants import (
    MAX_WRAP_EXPONENT,
    ODE_DEFAULT_REL_TOL,
    ODE_MAX_REL_TOL,
    ODE_MIN_REL_TOL,
    PLANAR_SWITCH_KS,
)
from .electrostatics import DielectricStack, electrostatic_line_load
from .exceptions import (
    DomainError,
    HwsEljError,
    ModelRangeError,
    NumericalError,
    UndefinedRatioError,
    ValidationError,
)
from .geometry import HelixGeometry, curvature, helix_constant_a, total_arc_length
from .messages import ErrorMessages

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MechanismSpec:
    """Complete physical description: helix path plus dielectric stack.

    ``limit_test`` admits geometries that cannot be built (H = 0 circular
    wraps, pitch narrower than the strip) for limit and property checks.
    """

    helix: HelixGeometry
    stack: DielectricStack
    limit_test: bool = False

    def __post_init__(self) -> None:
        if self.limit_test:
            return
        if self.helix.pitch_H == 0:
            raise ValidationError(
                "pitch H = 0 is a circular wrap; set limit_test to evaluate it"
            )
        if not pitch_admissible(self.helix, self.stack):
            raise ValidationError(
                ErrorMessages.pitch_not_admissible(
                    self.helix.pitch_H, self.stack.electrode_width_w
                )
            )

    def with_angle(self, total_angle_Phi: float) -> "MechanismSpec":
        """Same mechanism wound through a different total angle."""
        helix = dataclasses.replace(self.helix, total_angle_Phi=total_angle_Phi)
        return dataclasses.replace(self, helix=helix)


def pitch_admissible(helix: HelixGeometry, stack: DielectricStack) -> bool:
    """True when adjacent turns of the strip do not overlap (H > w)."""
    return helix.pitch_H > stack.electrode_width_w


@dataclass(frozen=True)
class DriveState:
    """Applied voltage and the preload at the free end of the strip."""

    voltage_V: float
    preload_T0: float

    def __post_init__(self) -> None:
        if not self.voltage_V >= 0:
            raise ValidationError(f"voltage must be >= 0, got {self.voltage_V}")
        if not self.preload_T0 >= 0:
            raise ValidationError(f"preload must be >= 0, got {self.preload_T0}")


@dataclass(frozen=True)
class TensionSolution:
    """Closed-form terminal tension and its two addends."""

    terminal_tension_T: float
    amplification: float | None
    capstan_gain: float
    electro_term: float


@dataclass(frozen=True)
class TensionSweepRow:
    """One grid point of a tension sweep; ``note`` holds an error code or is empty."""

    voltage_V: float
    preload_T0: float
    total_angle_Phi: float
    tension_T: float | None
    amplification: float | None
    note: str = ""


# =============================================================================
# Closed form
# =============================================================================


def capstan_tension(
    preload_T0: float, line_load_qe: float, mu: float, kappa: float, arc_length: float
) -> TensionSolution:
    """Evaluate the closed-form tension for explicit kappa and arc length.

    Below kappa*s = 1e-9 the (e^x - 1)/kappa term is replaced by its series
    mu q_e s (1 + x/2 + x^2/6), which is continuous with the planar limit.

    Raises:
        ModelRangeError: If mu*kappa*s exceeds the overflow guard
    """
    exponent = mu * kappa * arc_length
    if exponent > MAX_WRAP_EXPONENT:
        raise ModelRangeError(ErrorMessages.wrap_exponent_overflow(exponent))

    gain = math.exp(exponent)
    if kappa * arc_length < PLANAR_SWITCH_KS:
        electro = mu * line_load_qe * arc_length * (1 + exponent / 2 + exponent**2 / 6)
    else:
        electro = line_load_qe / kappa * math.expm1(exponent)

    tension = preload_T0 * gain + electro
    amplification = tension / preload_T0 if preload_T0 > 0 else None
    return TensionSolution(
        terminal_tension_T=tension,
        amplification=amplification,
        capstan_gain=gain,
        electro_term=electro,
    )


def wrap_exponent(m: MechanismSpec, arc_length: float | None = None) -> float:
    """mu * kappa * s for the full wrap, or for a partial ``arc_length``."""
    s = total_arc_length(m.helix) if arc_length is None else arc_length
    return m.stack.friction_mu * curvature(m.helix) * s


def terminal_tension(
    m: MechanismSpec, d: DriveState, arc_length: float | None = None
) -> TensionSolution:
    """Tension at the end of the wrap (or at ``arc_length`` along it)."""
    s_total = total_arc_length(m.helix)
    s = s_total if arc_length is None else arc_length
    if not 0.0 <= s <= s_total * (1 + 1e-12):
        raise DomainError(f"arc length {s} outside the wound range [0, {s_total}]")

    q_e = electrostatic_line_load(m.stack, d.voltage_V)
    return capstan_tension(d.preload_T0, q_e, m.stack.friction_mu, curvature(m.helix), s)


def amplification_ratio(m: MechanismSpec, d: DriveState) -> float:
    """Terminal tension over preload.

    Raises:
        UndefinedRatioError: If the preload is zero
    """
    if d.preload_T0 <= 0:
        raise UndefinedRatioError("amplification T/T0 is undefined for T0 = 0")
    return terminal_tension(m, d).terminal_tension_T / d.preload_T0


def tension_profile(m: MechanismSpec, d: DriveState, n_samples: int) -> list[tuple[float, float]]:
    """(s, T(s)) at ``n_samples`` evenly spaced arc positions, endpoints included."""
    if n_samples < 2:
        raise DomainError(f"a profile needs at least 2 samples, got {n_samples}")

    q_e = electrostatic_line_load(m.stack, d.voltage_V)
    kappa = curvature(m.helix)
    mu = m.stack.friction_mu
    return [
        (float(s), capstan_tension(d.preload_T0, q_e, mu, kappa, float(s)).terminal_tension_T)
        for s in np.linspace(0.0, total_arc_length(m.helix), n_samples)
    ]


def normal_load_profile(
    m: MechanismSpec, d: DriveState, n_samples: int
) -> list[tuple[float, float]]:
    """(s, dN/ds) along the wrap: the core's normal reaction per unit length.

    From the normal balance dN/ds = kappa T + q_e; the friction line load is
    mu times this.
    """
    q_e = electrostatic_line_load(m.stack, d.voltage_V)
    kappa = curvature(m.helix)
    return [(s, kappa * tension + q_e) for s, tension in tension_profile(m, d, n_samples)]


# =============================================================================
# ODE oracle
# =============================================================================


def integrate_tension_ode(
    m: MechanismSpec,
    d: DriveState,
    rel_tol: float = ODE_DEFAULT_REL_TOL,
    arc_length: float | None = None,
) -> float:
    """Integrate dT/ds = mu (kappa T + q_e) numerically from T(0) = T0.

    An adaptive DOP853 solve is repeated at a ten times tighter tolerance; if
    the two disagree by more than ``rel_tol`` a fixed-step RK4 integration
    with step halving and Richardson extrapolation takes over.

    Raises:
        DomainError: If ``rel_tol`` is outside [1e-14, 1e-3]
        NumericalError: If neither scheme converges to ``rel_tol``
    """
    if not ODE_MIN_REL_TOL <= rel_tol <= ODE_MAX_REL_TOL:
        raise DomainError(
            f"rel_tol must lie in [{ODE_MIN_REL_TOL}, {ODE_MAX_REL_TOL}], got {rel_tol}"
        )

    s_end = total_arc_length(m.helix) if arc_length is None else arc_length
    mu = m.stack.friction_mu
    kappa = curvature(m.helix)
    q_e = electrostatic_line_load(m.stack, d.voltage_V)
    t0 = d.preload_T0

    if mu == 0 or s_end == 0:
        return t0

    def rhs(_s: float, y: np.ndarray) -> np.ndarray:
        return mu * (kappa * y + q_e)

    scale = max(t0, mu * q_e * s_end, 1e-300)
    coarse = _solve_adaptive(rhs, t0, s_end, rel_tol, scale)
    fine = _solve_adaptive(rhs, t0, s_end, max(rel_tol / 10, ODE_MIN_REL_TOL), scale)
    if coarse is not None and fine is not None:
        spread = abs(fine - coarse) / max(abs(fine), 1e-300)
        logger.debug("DOP853 refinement spread %.3e (rel_tol %.1e)", spread, rel_tol)
        if spread <= rel_tol:
            return fine

    logger.debug("adaptive solve did not settle; falling back to fixed-step RK4")
    return _solve_fixed_step(mu, kappa, q_e, t0, s_end, rel_tol)


def _solve_adaptive(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    s_end: float,
    rel_tol: float,
    scale: float,
) -> float | None:
    solution = solve_ivp(
        rhs,
        (0.0, s_end),
        [t0],
        method="DOP853",
        rtol=rel_tol,
        atol=rel_tol * scale * 1e-3,
    )
    if not solution.success:
        logger.debug("solve_ivp failed: %s", solution.message)
        return None
    return float(solution.y[0, -1])


def _rk4(mu: float, kappa: float, q_e: float, t0: float, s_end: float, n_steps: int) -> float:
    h = s_end / n_steps
    y = t0
    for _ in range(n_steps):
        k1 = mu * (kappa * y + q_e)
        k2 = mu * (kappa * (y + h * k1 / 2) + q_e)
        k3 = mu * (kappa * (y + h * k2 / 2) + q_e)
        k4 = mu * (kappa * (y + h * k3) + q_e)
        y += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
    return y


def _solve_fixed_step(
    mu: float, kappa: float, q_e: float, t0: float, s_end: float, rel_tol: float
) -> float:
    n_steps = 64
    previous = _rk4(mu, kappa, q_e, t0, s_end, n_steps)
    achieved = math.inf
    while n_steps < 2**20:
        n_steps *= 2
        current = _rk4(mu, kappa, q_e, t0, s_end, n_steps)
        # Fourth-order scheme: the halving error is (current - previous) / 15
        correction = (current - previous) / 15
        achieved = abs(correction) / max(abs(current), 1e-300)
        if achieved <= rel_tol:
            logger.debug("RK4 converged with %d steps (%.2e)", n_steps, achieved)
            return current + correction
        previous = current

    raise NumericalError(
        f"tension ODE did not converge to {rel_tol:.1e}; achieved {achieved:.2e}",
        achieved_tolerance=achieved,
    )


# =============================================================================
# Planar comparison and inverse design
# =============================================================================


def planar_tension(stack: DielectricStack, contact_length_L: float, d: DriveState) -> float:
    """Flat-strip tension over the same contact length: T0 + mu q_e L."""
    if not contact_length_L > 0:
        raise DomainError(f"contact length must be > 0, got {contact_length_L}")
    q_e = electrostatic_line_load(stack, d.voltage_V)
    return d.preload_T0 + stack.friction_mu * q_e * contact_length_L


def planar_length_for(stack: DielectricStack, d: DriveState, target_tension: float) -> float:
    """Flat-strip contact length needed to reach ``target_tension``.

    Raises:
        ModelRangeError: If the planar strip has no gain (mu q_e = 0) and the
            target exceeds the preload
    """
    if target_tension <= d.preload_T0:
        return 0.0
    gain_per_length = stack.friction_mu * electrostatic_line_load(stack, d.voltage_V)
    if gain_per_length <= 0:
        raise ModelRangeError(
            f"a planar strip with mu*q_e = 0 never exceeds its preload {d.preload_T0} N"
        )
    return (target_tension - d.preload_T0) / gain_per_length


def required_angle(
    m: MechanismSpec, d: DriveState, target_tension: float, verify: bool = True
) -> float:
    """Smallest total winding angle whose terminal tension reaches the target.

    Solved in closed form from (T0 + q_e/kappa) e^x - q_e/kappa = target with
    x = mu kappa a Phi, then cross-checked by bisection when ``verify``.

    Raises:
        DomainError: If mu or kappa is not positive, or the target is below T0
        ModelRangeError: If the target is unreachable under the overflow guard
        NumericalError: If the bisection cross-check disagrees
    """
    mu = m.stack.friction_mu
    kappa = curvature(m.helix)
    a = helix_constant_a(m.helix)
    t0 = d.preload_T0
    if mu <= 0 or kappa <= 0:
        raise DomainError("inverse design needs mu > 0 and kappa > 0")
    if target_tension < t0:
        raise DomainError(f"target {target_tension} N is below the preload {t0} N")
    if target_tension == t0:
        return 0.0

    q_e = electrostatic_line_load(m.stack, d.voltage_V)
    base = t0 + q_e / kappa
    if base <= 0:
        raise ModelRangeError(ErrorMessages.target_unreachable(target_tension))

    exponent = math.log1p((target_tension - t0) / base)
    if exponent > MAX_WRAP_EXPONENT:
        raise ModelRangeError(ErrorMessages.target_unreachable(target_tension))
    angle = exponent / (mu * kappa * a)

    if verify:
        _check_angle_by_bisection(t0, q_e, mu, kappa, a, target_tension, angle)
    return angle


def _check_angle_by_bisection(
    t0: float, q_e: float, mu: float, kappa: float, a: float, target: float, angle: float
) -> None:
    def residual(phi: float) -> float:
        try:
            return capstan_tension(t0, q_e, mu, kappa, a * phi).terminal_tension_T - target
        except ModelRangeError:
            return math.inf

    upper = 2 * angle + 1e-9
    root = bisect(residual, 0.0, upper, xtol=1e-15, rtol=1e-13, maxiter=400)
    logger.debug("required angle closed form %.15g rad, bisection %.15g rad", angle, root)
    if abs(root - angle) > 1e-9 * max(angle, 1.0):
        raise NumericalError(
            f"closed-form angle {angle} rad disagrees with bisection {root} rad",
            achieved_tolerance=abs(root - angle) / max(angle, 1e-300),
        )


# =============================================================================
# Sweeps
# =============================================================================


def _sweep_point(m: MechanismSpec, voltage: float, preload: float, angle: float) -> TensionSweepRow:
    try:
        solution = terminal_tension(m.with_angle(angle), DriveState(voltage, preload))
    except HwsEljError as e:
        return TensionSweepRow(voltage, preload, angle, None, None, note=e.code)
    note = "" if solution.amplification is not None else UndefinedRatioError.code
    return TensionSweepRow(
        voltage,
        preload,
        angle,
        solution.terminal_tension_T,
        solution.amplification,
        note=note,
    )


def sweep_tension(
    m: MechanismSpec,
    voltages: Sequence[float],
    preloads: Sequence[float],
    angles: Sequence[float] | None = None,
    workers: int = 1,
) -> list[TensionSweepRow]:
    """Evaluate the grid voltages x preloads x angles in input order.

    Points may be evaluated on a thread pool, but rows always come back in
    grid order (voltage slowest, angle fastest). Failing points are kept and
    annotated instead of dropped.
    """
    grid = list(
        itertools.product(voltages, preloads, angles or [m.helix.total_angle_Phi])
    )
    if workers <= 1:
        return [_sweep_point(m, v, t0, phi) for v, t0, phi in grid]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda point: _sweep_point(m, *point), grid))
