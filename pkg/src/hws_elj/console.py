"""Console factory and logging setup.

All Rich Console instances used throughout the application come from
``get_console`` so terminal behavior stays consistent. Model modules do not
print; they log through ``logging.getLogger(__name__)`` and the CLI decides
how much of that reaches the terminal via ``configure_logging``.
"""

import logging

from rich.console import Console
from rich.logging import RichHandler


def get_console(stderr: bool = False) -> Console:
    """Get a configured Rich Console instance.

    Args:
        stderr: Write to standard error instead of standard output

    Returns:
        Console: A configured Rich Console instance
    """
    return Console(legacy_windows=False, stderr=stderr)


def configure_logging(verbose: bool = False) -> None:
    """Route package logs through a Rich handler on standard error.

    Args:
        verbose: Emit DEBUG records instead of only warnings and errors
    """
    logger = logging.getLogger("hws_elj")
    logger.handlers.clear()
    handler = RichHandler(
        console=get_console(stderr=True),
        show_time=False,
        show_path=verbose,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
