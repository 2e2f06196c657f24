"""Quasi-static model of the two-segment variable-stiffness finger.

A spring preloads the free end of the wound electrode; the other end pulls
on segment 2 at radius r_c about the hinge. Bending the finger by theta pays
out r_c * theta of electrode, stretching the spring further:

    T0(theta)     = k_s (x0 + r_c theta)
    tau_hold      = T(V, T0(theta)) * r_c
    equilibrium:  F_pull * L_f = tau_hold(theta)

The hinge is massless and frictionless and the fingertip lever arm is taken
as constant over the bend.
"""

import itertools
import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .constants import THETA_MAX, FingerStatus
from .exceptions import (
    DomainError,
    HwsEljError,
    InfiniteStiffnessError,
    NoEquilibriumError,
    UndefinedRatioError,
    ValidationError,
)
from .messages import ErrorMessages
from .tension import DriveState, MechanismSpec, terminal_tension

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FingerConfig:
    """Spring, lever geometry and the HWS-ELJ mechanism of the finger joint."""

    spring_k: float
    spring_pre_extension_x0: float
    core_radius_rc: float
    fingertip_lever_Lf: float
    mechanism: MechanismSpec

    def __post_init__(self) -> None:
        if not self.spring_k > 0:
            raise ValidationError(f"spring_k must be > 0, got {self.spring_k}")
        if not self.spring_pre_extension_x0 >= 0:
            raise ValidationError(
                f"spring pre-extension must be >= 0, got {self.spring_pre_extension_x0}"
            )
        if not self.core_radius_rc > 0:
            raise ValidationError(f"core radius must be > 0, got {self.core_radius_rc}")
        if not self.fingertip_lever_Lf > 0:
            raise ValidationError(f"fingertip lever must be > 0, got {self.fingertip_lever_Lf}")


@dataclass(frozen=True)
class FingerState:
    """Equilibrium of the finger under one load and voltage."""

    bend_angle_theta: float
    applied_load_Fpull: float
    voltage_V: float
    stiffness_k: float | None


@dataclass(frozen=True)
class FingerSweepRow:
    """One (voltage, load) cell of a finger sweep."""

    voltage_V: float
    load_Fpull: float
    theta: float | None
    stiffness_k: float | None
    status: str


def preload_at_angle(c: FingerConfig, theta: float) -> float:
    """Spring force on the electrode after bending by ``theta``."""
    if theta < 0:
        raise DomainError(f"bend angle must be >= 0, got {theta}")
    return c.spring_k * (c.spring_pre_extension_x0 + c.core_radius_rc * theta)


def holding_torque(c: FingerConfig, voltage_V: float, theta: float) -> float:
    """Torque the wound electrode exerts on segment 2 about the hinge (N*m)."""
    drive = DriveState(voltage_V=voltage_V, preload_T0=preload_at_angle(c, theta))
    return terminal_tension(c.mechanism, drive).terminal_tension_T * c.core_radius_rc


def equilibrium_angle(c: FingerConfig, voltage_V: float, F_pull: float) -> float:
    """Smallest net bend at which the joint balances the fingertip load.

    Returns 0 when the unloaded holding torque already carries the load.

    Raises:
        DomainError: If ``F_pull`` is negative
        NoEquilibriumError: If the load is not balanced anywhere in [0, pi]
    """
    if F_pull < 0:
        raise DomainError(f"F_pull must be >= 0, got {F_pull}")

    load_torque = F_pull * c.fingertip_lever_Lf

    def residual(theta: float) -> float:
        return holding_torque(c, voltage_V, theta) - load_torque

    if residual(0.0) >= 0:
        return 0.0
    if residual(THETA_MAX) < 0:
        raise NoEquilibriumError(ErrorMessages.no_equilibrium(F_pull, voltage_V))

    theta = bisect(residual, 0.0, THETA_MAX, xtol=1e-12, maxiter=200)
    logger.debug("equilibrium at %.3f V, %.4f N: theta=%.9f rad", voltage_V, F_pull, theta)
    return float(theta)


def scan_equilibrium_angle(
    c: FingerConfig, voltage_V: float, F_pull: float, step: float = 1e-5
) -> float:
    """Brute-force equilibrium: first grid angle whose holding torque carries the load.

    Raises:
        NoEquilibriumError: If no grid angle up to pi balances the load
    """
    thetas = np.arange(0.0, THETA_MAX + step / 2, step)
    unit = terminal_tension(c.mechanism, DriveState(voltage_V, 1.0))
    tension = (
        c.spring_k * (c.spring_pre_extension_x0 + c.core_radius_rc * thetas) * unit.capstan_gain
        + unit.electro_term
    )
    held = np.nonzero(tension * c.core_radius_rc >= F_pull * c.fingertip_lever_Lf)[0]
    if held.size == 0:
        raise NoEquilibriumError(ErrorMessages.no_equilibrium(F_pull, voltage_V))
    return float(thetas[held[0]])


def stiffness_coefficient(c: FingerConfig, voltage_V: float, F_pull: float) -> float:
    """k = F_pull / theta at equilibrium (N/rad).

    Raises:
        UndefinedRatioError: If ``F_pull`` is zero
        InfiniteStiffnessError: If the load is held without any bend
        NoEquilibriumError: Propagated from ``equilibrium_angle``
    """
    if F_pull == 0:
        raise UndefinedRatioError("stiffness F_pull/theta is undefined without a load")
    theta = equilibrium_angle(c, voltage_V, F_pull)
    if theta == 0:
        raise InfiniteStiffnessError(
            f"F_pull={F_pull:g} N at {voltage_V:g} V is held with no bend"
        )
    return F_pull / theta


def finger_state(c: FingerConfig, voltage_V: float, F_pull: float) -> FingerState:
    """Equilibrium angle and, where defined, the stiffness coefficient."""
    theta = equilibrium_angle(c, voltage_V, F_pull)
    k = F_pull / theta if theta > 0 and F_pull > 0 else None
    return FingerState(
        bend_angle_theta=theta, applied_load_Fpull=F_pull, voltage_V=voltage_V, stiffness_k=k
    )


def _sweep_cell(c: FingerConfig, voltage: float, load: float) -> FingerSweepRow:
    try:
        state = finger_state(c, voltage, load)
    except NoEquilibriumError:
        return FingerSweepRow(voltage, load, None, None, FingerStatus.NO_EQUILIBRIUM)
    except HwsEljError as e:
        return FingerSweepRow(voltage, load, None, None, e.code)

    if load == 0:
        status = FingerStatus.UNLOADED
    elif state.bend_angle_theta == 0:
        status = FingerStatus.STATIC_HOLD
    else:
        status = FingerStatus.OK
    return FingerSweepRow(voltage, load, state.bend_angle_theta, state.stiffness_k, status)


def load_sweep(
    c: FingerConfig,
    voltages: Sequence[float],
    loads: Sequence[float],
    workers: int = 1,
) -> list[FingerSweepRow]:
    """Row-major table over voltages x loads; unbalanced cells are flagged, not dropped."""
    if not voltages or not loads:
        raise DomainError("load sweep needs at least one voltage and one load")

    grid = list(itertools.product(voltages, loads))
    if workers <= 1:
        return [_sweep_cell(c, v, f) for v, f in grid]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda cell: _sweep_cell(c, *cell), grid))
