"""
Structured logging setup.

=== WHY STRUCTLOG ===

Log events are key/value records instead of formatted strings:

    logger.info("critical_points_found", count=3, local_min=1)

Console rendering during development, JSON lines when LOG_JSON=true.
Everything goes to standard error: the CLI writes its documents to
standard output and the two streams must never mix.
"""
import logging
import sys

import structlog

from config.settings import get_settings

_configured = False


def configure_logging(level: str | None = None, json_logs: bool | None = None) -> None:
    """
    Configure structlog once per process.

    Args:
        level: Log level name; defaults to settings.log_level
        json_logs: JSON renderer instead of the console one; defaults to settings.log_json
    """
    global _configured
    settings = get_settings()
    level = (level or settings.log_level).upper()
    json_logs = settings.log_json if json_logs is None else json_logs

    renderer = (
        structlog.processors.JSONRenderer()
        if json_logs
        else structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
    _configured = True


def get_logger(name: str) -> structlog.typing.FilteringBoundLogger:
    """Return a bound logger, configuring defaults on first use."""
    if not _configured:
        configure_logging()
    return structlog.get_logger(name)
