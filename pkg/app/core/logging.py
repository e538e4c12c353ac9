"""structlog setup shared by the CLI and the API."""

import logging
import sys

import structlog

from app.core.settings import AppConfig


def configure_logging(config: AppConfig) -> None:
    """Route structlog output to stderr at the configured level."""
    renderer: structlog.typing.Processor
    if config.renders_json:
        renderer = structlog.processors.JSONRenderer()
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(config.log_level)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
