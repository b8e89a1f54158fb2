"""Logging system for kappa-nc commands and library diagnostics."""

from __future__ import annotations

import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

from ..models import RunConfig


class LogLevel(Enum):
    """Log levels with proper ordering."""
    DEBUG = 10
    INFO = 20
    WARNING = 30
    ERROR = 40
    CRITICAL = 50


def _resolve_level(level: Union[str, LogLevel]) -> int:
    if isinstance(level, LogLevel):
        return level.value
    if isinstance(level, str):
        return int(getattr(logging, level.upper(), logging.INFO))
    return logging.INFO


class KappaLogger:
    """Centralized logger used by every kappa-nc command."""

    def __init__(
        self,
        name: str,
        config: Optional[RunConfig] = None,
        log_file: Optional[Path] = None,
        level: Union[str, LogLevel] = LogLevel.INFO,
    ):
        """Initialize the logger.

        Args:
            name: Logger name (command or module name)
            config: Resolved run configuration, if any
            log_file: Optional file path for log output
            level: Logging level
        """
        self.name = name
        self.config = config
        self.log_file = log_file

        self.logger = logging.getLogger(name)
        self._setup_logger(level)

    def _setup_logger(self, level: Union[str, LogLevel]) -> None:
        """Attach console (stderr) and optional file handlers."""
        self.logger.setLevel(_resolve_level(level))

        for handler in self.logger.handlers[:]:
            self.logger.removeHandler(handler)

        # stdout carries command output, so diagnostics go to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%H:%M:%S",
            )
        )
        self.logger.addHandler(console_handler)

        if self.log_file:
            try:
                self.log_file.parent.mkdir(parents=True, exist_ok=True)
                file_handler = logging.FileHandler(self.log_file)
                file_handler.setFormatter(
                    logging.Formatter(
                        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                        datefmt="%Y-%m-%d %H:%M:%S",
                    )
                )
                self.logger.addHandler(file_handler)
            except OSError as e:
                self.logger.warning(f"Could not create log file {self.log_file}: {e}")

        self.logger.propagate = False

    def debug(self, message: str, **kwargs: Any) -> None:
        """Log debug message."""
        self._log(LogLevel.DEBUG, message, **kwargs)

    def info(self, message: str, **kwargs: Any) -> None:
        """Log info message."""
        self._log(LogLevel.INFO, message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        """Log warning message."""
        self._log(LogLevel.WARNING, message, **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        """Log error message."""
        self._log(LogLevel.ERROR, message, **kwargs)

    @staticmethod
    def _format(message: str, kwargs: dict[str, Any]) -> str:
        if not kwargs:
            return message
        try:
            return message.format(**kwargs)
        except (KeyError, ValueError, IndexError):
            return f"{message} | Context: {kwargs}"

    def _log(self, level: LogLevel, message: str, **kwargs: Any) -> None:
        self.logger.log(level.value, self._format(message, kwargs))

    def exception(self, message: str, **kwargs: Any) -> None:
        """Log an error with the traceback of the exception being handled."""
        self.logger.error(self._format(message, kwargs), exc_info=True)

    def add_context(self, **context: Any) -> ContextLogger:
        """Return a logger that adds ``context`` to every message."""
        return ContextLogger(self, context)


class ContextLogger:
    """Logger wrapper that automatically adds context to messages."""

    def __init__(self, base_logger: KappaLogger, context: dict[str, Any]):
        self.base_logger = base_logger
        self.context = context

    def debug(self, message: str, **kwargs: Any) -> None:
        self.base_logger.debug(message, **{**self.context, **kwargs})

    def info(self, message: str, **kwargs: Any) -> None:
        self.base_logger.info(message, **{**self.context, **kwargs})

    def warning(self, message: str, **kwargs: Any) -> None:
        self.base_logger.warning(message, **{**self.context, **kwargs})

    def error(self, message: str, **kwargs: Any) -> None:
        self.base_logger.error(message, **{**self.context, **kwargs})

    def exception(self, message: str, **kwargs: Any) -> None:
        self.base_logger.exception(message, **{**self.context, **kwargs})


def get_logger(
    name: str,
    config: Optional[RunConfig] = None,
    level: Union[str, LogLevel] = LogLevel.INFO,
) -> KappaLogger:
    """Get or create a logger instance.

    A log file under ``~/.kappa-nc/logs`` is attached only when a run
    configuration is supplied.
    """
    log_file = None
    if config:
        log_file = Path.home() / ".kappa-nc" / "logs" / f"{name}.log"

    return KappaLogger(
        name=name,
        config=config,
        log_file=log_file,
        level=level,
    )


def setup_application_logging(
    app_name: str,
    config: Optional[RunConfig] = None,
    verbose: bool = False,
) -> KappaLogger:
    """Setup logging for one CLI command.

    Args:
        app_name: Command name (zeta, star, homology, specdim)
        config: Resolved run configuration
        verbose: Enable verbose (DEBUG) logging

    Returns:
        Main command logger
    """
    level = LogLevel.DEBUG if verbose else LogLevel.INFO

    main_logger = get_logger(
        name=f"kappa_nc.{app_name}",
        config=config,
        level=level,
    )

    main_logger.info(f"Starting {app_name} command")
    main_logger.debug(f"Logging level: {level.name}")

    if config:
        main_logger.debug("Configuration resolved successfully")

    return main_logger
