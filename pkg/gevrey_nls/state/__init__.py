"""
Run history and logging setup.
"""

from .logger import (
    RunLogger,
    format_history_list,
    get_run_logger,
    reset_run_logger,
    setup_logging,
)

__all__ = [
    "RunLogger",
    "format_history_list",
    "get_run_logger",
    "reset_run_logger",
    "setup_logging",
]
