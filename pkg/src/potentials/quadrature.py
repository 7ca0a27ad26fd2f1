import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import NamedTuple

from src.config import AppConfig
from src.exceptions import DivergenceError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Levels that are always subdivided, so that an integrand vanishing on the
# first five samples cannot be accepted as zero
MIN_DEPTH = 3


class Integral(NamedTuple):
    value: float
    error: float


@dataclass
class _Budget:
    exhausted: int = 0


def _simpson(a: float, b: float, fa: float, fm: float, fb: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _recurse(
    f: Callable[[float], float],
    a: float,
    fa: float,
    m: float,
    fm: float,
    b: float,
    fb: float,
    whole: float,
    tol: float,
    depth: int,
    level: int,
    budget: _Budget,
) -> Integral:
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(a, m, fa, flm, fm)
    right = _simpson(m, b, fm, frm, fb)
    delta = left + right - whole

    converged = abs(delta) <= 15.0 * tol and level >= MIN_DEPTH
    if converged or depth <= 0:
        if not converged:
            budget.exhausted += 1
        # Richardson extrapolation of the two Simpson estimates
        return Integral(left + right + delta / 15.0, abs(delta) / 15.0)

    lhs = _recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, level + 1, budget)
    rhs = _recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, level + 1, budget)
    return Integral(lhs.value + rhs.value, lhs.error + rhs.error)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float | None = None,
    max_depth: int | None = None,
) -> Integral:
    """
    Adaptive Simpson quadrature of f over the finite interval [a, b].

    The tolerance is absolute for results of magnitude below one and relative
    above it. The returned error is the summed Richardson estimate of the
    accepted sub-intervals.
    """
    tol = AppConfig.QUAD_TOL if tol is None else tol
    max_depth = AppConfig.QUAD_MAX_DEPTH if max_depth is None else max_depth
    if a == b:
        return Integral(0.0, 0.0)

    m = 0.5 * (a + b)
    fa, fm, fb = f(a), f(m), f(b)
    whole = _simpson(a, b, fa, fm, fb)
    budget = _Budget()
    result = _recurse(f, a, fa, m, fm, b, fb, whole, tol * max(1.0, abs(whole)), max_depth, 0, budget)

    if not math.isfinite(result.value):
        raise DivergenceError(f"integral over [{a}, {b}] is not finite")
    if budget.exhausted:
        logger.warning(
            f"Quadrature on [{a}, {b}]: {budget.exhausted} sub-intervals hit depth {max_depth}"
        )
    return result


def integrate_to_infinity(
    f: Callable[[float], float],
    lower: float,
    tol: float | None = None,
    max_depth: int | None = None,
) -> Integral:
    """
    Integral of f over [lower, inf) for lower > 0.

    The substitution s = lower / t maps the range onto (0, 1]; the transformed
    integrand is taken as zero at t = 0.
    """
    if lower <= 0.0:
        raise DivergenceError("an infinite range needs a positive lower limit")

    def mapped(t: float) -> float:
        if t == 0.0:
            return 0.0
        return f(lower / t) * lower / (t * t)

    return adaptive_simpson(mapped, 0.0, 1.0, tol, max_depth)
