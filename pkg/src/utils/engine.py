import scenariorisk

from traceback import extract_tb
import os
import sys

__all__ = ["print_versions", "info", "error", "warning"]


def _echo(*parts) -> None:
    # stdout carries only data
    print(*parts, file=sys.stderr)


def print_versions() -> None:
    """Print the versions of the package and its numerical dependencies."""
    _echo("-" * 50)
    _echo("scenariorisk:", scenariorisk.version)
    _echo("Dependencies: ")
    _echo("\tArrays: numpy", scenariorisk.numpy_version)
    _echo("\tSpecial functions, QMC: scipy", scenariorisk.scipy_version)
    _echo("\tConfidence intervals: statsmodels", scenariorisk.statsmodels_version)
    _echo("Python:", scenariorisk.python_version)
    _echo("-" * 50)


def info(message: str) -> None:
    """
    Prints a progress message when `scenariorisk.debug` is True.

    Args:
        message (str): The message to display.
    """
    if scenariorisk.debug:
        _echo(f"Info: {message}")


def error(err: Exception) -> None:
    """
    Reports an exception on stderr.

    A one-line message by default; the type and traceback are added when
    `scenariorisk.debug` is True.

    Args:
        err (Exception): The exception instance that was raised.
    """
    if not scenariorisk.debug:
        _echo(f"Error: {err}")
        return

    error_details = [
        f"File: {os.path.basename(tb.filename)}, Line: {tb.lineno}"
        for tb in extract_tb(err.__traceback__)
    ]
    formatted_traceback = (
        "\n".join(error_details) if len(error_details) <= 1
        else "\n" + "\n".join(error_details)
    )
    _echo(
        "-----------------------------------\n"
        "Error: An unexpected error occurred\n"
        f"Type: {type(err).__name__}\n"
        f"Message: {err}\n"
        f"Traceback: {formatted_traceback}\n"
        "-----------------------------------"
    )


def warning(message: str) -> None:
    """
    Prints a warning message to stderr.

    Args:
        message (str): The warning message to display.
    """
    _echo(f"Warning: {message}")
