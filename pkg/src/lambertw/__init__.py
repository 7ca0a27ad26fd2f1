"""
Principal real branch of the Lambert W-function on the nonnegative reals.

W(z) is the solution w of w * exp(w) = z. Every bound in the package evaluates
W on (0, e], so only the branch W0 restricted to z >= 0 is provided.
"""

import math

from src.exceptions import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)

# Halley iteration controls
MAX_ITERATIONS = 50
STEP_TOLERANCE = 1e-15


def _initial_guess(z: float) -> float:
    if z <= math.e:
        return math.log1p(z)
    # Asymptotic expansion L1 - L2 + L2/L1 for large z
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def lambert_w0(z: float) -> float:
    """
    Evaluate W0(z) for z >= 0 by Halley's method.

    Args:
        z: Finite nonnegative argument

    Returns:
        w >= 0 with w * exp(w) == z to near machine precision

    Raises:
        DomainError: z is negative, NaN or infinite
    """
    if not math.isfinite(z):
        raise DomainError(f"lambert_w0 needs a finite argument, got {z}")
    if z < 0.0:
        raise DomainError(f"lambert_w0 is restricted to z >= 0, got {z}")
    if z == 0.0:
        return 0.0

    w = _initial_guess(z)
    for iteration in range(MAX_ITERATIONS):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        # Halley update for f(w) = w e^w - z
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= dw
        if abs(dw) <= STEP_TOLERANCE * abs(w):
            logger.debug(f"lambert_w0({z}) converged after {iteration + 1} iterations")
            break
    else:
        logger.warning(f"lambert_w0({z}) stopped after {MAX_ITERATIONS} iterations")

    return max(w, 0.0)


__all__ = ["lambert_w0"]
