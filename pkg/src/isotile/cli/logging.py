"""Structured logging configuration."""

import logging
import sys

import structlog


def setup_logging(level: str = "warning") -> None:
    """Configure structlog to write human-readable events to stderr.

    Args:
        level: Minimum level name, e.g. "info" or "warning"
    """
    threshold = logging.getLevelNamesMapping().get(level.upper(), logging.WARNING)
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(threshold),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
