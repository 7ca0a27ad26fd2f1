import logging
import sys

from src.config import AppConfig

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _build_formatter() -> logging.Formatter:
    if AppConfig.LOG_FORMAT == "json":
        # Optional extra: pip install "virial-bounds[logging]"
        from pythonjsonlogger.json import JsonFormatter

        return JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
    return logging.Formatter(LOG_FORMAT)


def setup_logging() -> None:
    """Setup logging configuration"""

    if logging.getLogger().handlers:
        return

    # stdout carries command output, so diagnostics go to stderr
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if AppConfig.LOG_FILE is not None:
        AppConfig.LOG_FILE.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(AppConfig.LOG_FILE, encoding="utf-8"))

    formatter = _build_formatter()
    for handler in handlers:
        handler.setFormatter(formatter)

    logging.basicConfig(level=getattr(logging, AppConfig.LOG_LEVEL), handlers=handlers)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging initialized - Level: {AppConfig.LOG_LEVEL} - Format: {AppConfig.LOG_FORMAT}")


def get_logger(name: str) -> logging.Logger:
    """Get logger instance"""
    return logging.getLogger(name)


# Auto setup
setup_logging()
