"""
Plain-text series format: one coefficient per line, `n <numerator>/<denominator>`
or `n <decimal>`. Blank lines and lines starting with '#' are ignored; indices
that are not listed are zero and the order is the largest index present.
"""

import re
from fractions import Fraction
from pathlib import Path

from src.exceptions import ArgumentError
from src.series import Coefficient, PowerSeries

RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_value(token: str, lineno: int) -> Coefficient:
    if RATIONAL.match(token):
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise ArgumentError(f"Line {lineno}: zero denominator in '{token}'") from None
    try:
        return float(token)
    except ValueError:
        raise ArgumentError(f"Line {lineno}: cannot parse coefficient '{token}'") from None


def parse_series(text: str, order: int | None = None) -> PowerSeries:
    """
    Parse the text format into a PowerSeries.

    A single decimal coefficient makes the whole series floating point.
    """
    entries: dict[int, Coefficient] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ArgumentError(f"Line {lineno}: expected '<index> <coefficient>', got '{line}'")
        if not parts[0].isdigit():
            raise ArgumentError(f"Line {lineno}: index must be a nonnegative integer, got '{parts[0]}'")
        index = int(parts[0])
        if index in entries:
            raise ArgumentError(f"Line {lineno}: duplicate coefficient index {index}")
        entries[index] = _parse_value(parts[1], lineno)

    if not entries:
        raise ArgumentError("Series file contains no coefficients")

    top = max(entries)
    coeffs = [entries.get(n, 0) for n in range(top + 1)]
    return PowerSeries.from_coeffs(coeffs, order if order is not None else top)


def format_series(series: PowerSeries) -> str:
    """Render a series in the text format, one line per coefficient including zeros."""
    lines = []
    for n, c in enumerate(series.coeffs):
        if isinstance(c, Fraction):
            lines.append(f"{n} {c.numerator}/{c.denominator}")
        else:
            lines.append(f"{n} {c!r}")
    return "\n".join(lines) + "\n"


def read_series(path: Path, order: int | None = None) -> PowerSeries:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ArgumentError(f"Cannot read series file {path}: {e.strerror}") from e
    return parse_series(text, order)
