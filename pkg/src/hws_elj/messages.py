"""Standardized error and informational messages for hws-elj."""


class ErrorMessages:
    """Centralized error message templates for consistency."""

    @staticmethod
    def missing_section(section: str, command: str) -> str:
        """
        Standard message when a command needs a config section that is absent.

        Args:
            section: Dotted section name, e.g. "mechanism" or "finger"
            command: CLI verb that needed it

        Returns:
            Formatted error message with helpful suggestion
        """
        return (
            f"Config section [{section}] is required by '{command}'. "
            f"Add it to the file passed with --config."
        )

    @staticmethod
    def pitch_not_admissible(pitch: float, width: float) -> str:
        """
        Standard message when adjacent turns of the strip would overlap.

        Args:
            pitch: Helix pitch H (m)
            width: Electrode width w (m)

        Returns:
            Formatted error message
        """
        return (
            f"pitch H={pitch * 1e3:g} mm must exceed the electrode width "
            f"w={width * 1e3:g} mm so turns do not overlap"
        )

    @staticmethod
    def wrap_exponent_overflow(exponent: float) -> str:
        """
        Standard message for the exp overflow guard.

        Args:
            exponent: The offending mu*kappa*s value

        Returns:
            Formatted error message with the limiting factors
        """
        return (
            f"mu*kappa*s = {exponent:.6g} exceeds 700; the capstan gain would overflow. "
            f"Reduce the winding angle, the friction coefficient or the curvature."
        )

    @staticmethod
    def target_unreachable(target: float) -> str:
        """
        Standard message when inverse design cannot reach a tension.

        Args:
            target: Requested terminal tension (N)

        Returns:
            Formatted error message
        """
        return f"target tension {target:g} N cannot be reached within the overflow guard"

    @staticmethod
    def no_equilibrium(load: float, voltage: float) -> str:
        """
        Standard message when the finger cannot hold a load.

        Args:
            load: Fingertip force (N)
            voltage: Applied voltage (V)

        Returns:
            Formatted error message
        """
        return (
            f"no equilibrium for F_pull={load:g} N at {voltage:g} V within "
            f"0..180 deg: the load exceeds the joint's holding capability"
        )

    @staticmethod
    def no_logs() -> str:
        """
        Standard message when `process` receives nothing to reduce.

        Returns:
            Formatted error message with usage hint
        """
        return "No sensor logs given. Usage: hwselj process LOG@VOLTAGE [LOG@VOLTAGE ...]"
