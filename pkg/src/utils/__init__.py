"""
Console reporting and CLI helpers.

Human-facing messages go to stderr through `engine`; `decorators.exit_codes`
turns command outcomes into process exit codes.
"""

from .decorators import exit_codes, EXIT_OK, EXIT_REJECTED, EXIT_INVALID
from .engine import print_versions, info, error, warning
