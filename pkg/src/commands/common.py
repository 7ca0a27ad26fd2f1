import argparse
from fractions import Fraction
from pathlib import Path

from src.exceptions import ArgumentError, ConfigurationError
from src.potentials import RadialPotential, load_potential
from src.utils.logger import get_logger

logger = get_logger(__name__)


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read {path}: {e.strerror or e}") from e


def potential_from_file(path: str) -> RadialPotential:
    logger.info(f"Loading potential from {path}")
    return load_potential(read_text(path))


def rational(text: str) -> Fraction:
    """argparse type: decimal, e-notation or p/q, kept exact."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def deliver(text: str, out: str | None) -> str:
    """Write `text` to `out` when given; the returned text goes to stdout."""
    if out is None:
        return text
    try:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        raise ArgumentError(f"Cannot write {out}: {e.strerror or e}") from e
    logger.info(f"Wrote {len(text)} bytes to {out}")
    return ""
