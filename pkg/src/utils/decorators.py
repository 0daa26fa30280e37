from ..errors import ScenarioRiskError
from .engine import error

from functools import wraps

__all__ = ["exit_codes", "EXIT_OK", "EXIT_REJECTED", "EXIT_INVALID"]

EXIT_OK = 0
"""The command ran and its statistical check (if any) passed."""
EXIT_REJECTED = 1
"""The command ran but a statistical acceptance check failed."""
EXIT_INVALID = 2
"""The configuration was rejected before or while running."""


def exit_codes(command):
    """
    Decorator mapping a CLI command's outcome to the process exit code.

    The command returns True (or None) on success and False when its
    statistical acceptance check fails. Package errors and `ValueError`s
    are reported on one line and become `EXIT_INVALID`.

    Args:
        command (Callable): A function taking the parsed `argparse.Namespace`.
    """
    @wraps(command)
    def wrapper(args, *rest, **kwargs) -> int:
        try:
            outcome = command(args, *rest, **kwargs)
        except (ScenarioRiskError, ValueError) as err:
            error(err)
            return EXIT_INVALID
        return EXIT_REJECTED if outcome is False else EXIT_OK
    return wrapper
