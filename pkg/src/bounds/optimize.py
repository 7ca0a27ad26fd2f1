import math
from collections.abc import Callable
from typing import NamedTuple

from src.exceptions import ArgumentError
from src.utils.logger import get_logger

logger = get_logger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

REL_TOLERANCE = 1e-12
MAX_ITERATIONS = 500

# Parabolic polish after the golden-section phase
REFINE_SPACING = 1e-6
REFINE_STEPS = 8
REFINE_TOLERANCE = 1e-12


class Maximum(NamedTuple):
    x: float
    value: float
    iterations: int


class BracketEdgeError(Exception):
    """The maximiser landed on the right end of its bracket."""

    def __init__(self, hi: float):
        self.hi = hi
        super().__init__(f"Maximum sits at the right bracket edge {hi}")


def _parabolic_vertex(
    x0: float, f0: float, x1: float, f1: float, x2: float, f2: float
) -> float | None:
    num = (x1 - x0) ** 2 * (f1 - f2) - (x1 - x2) ** 2 * (f1 - f0)
    den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0)
    if den == 0.0:
        return None
    return x1 - 0.5 * num / den


def golden_section_maximize(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = REL_TOLERANCE,
) -> Maximum:
    """
    Derivative-free maximisation of a unimodal f on [lo, hi].

    Golden-section search shrinks the bracket until its width falls below
    rel_tol relative to the bracket position, then parabolic steps polish the
    estimate.
    """
    if not lo < hi:
        raise ArgumentError(f"Empty search interval [{lo}, {hi}]")

    a, b = lo, hi
    h = b - a
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    iterations = 0
    while b - a > rel_tol * (abs(a) + abs(b)) and iterations < MAX_ITERATIONS:
        iterations += 1
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    x1, f1 = (c, yc) if yc > yd else (d, yd)
    x1, f1 = _refine(f, x1, f1, lo, hi)

    logger.debug(f"golden section on [{lo}, {hi}] -> x={x1} after {iterations} iterations")
    return Maximum(x1, f1, iterations)


def _refine(
    f: Callable[[float], float], x1: float, f1: float, lo: float, hi: float
) -> tuple[float, float]:
    """
    Repeated parabolic steps on a stencil REFINE_SPACING * (hi - lo) wide.

    Value comparisons alone stall near sqrt(eps) in x; the wide stencil keeps
    the sampled differences above rounding. A vertex that lowers f is dropped.
    """
    h = REFINE_SPACING * (hi - lo)
    for _ in range(REFINE_STEPS):
        x0, x2 = x1 - h, x1 + h
        if x0 < lo or x2 > hi:
            break
        f0, f2 = f(x0), f(x2)
        if not (f1 >= f0 and f1 >= f2):
            break
        vertex = _parabolic_vertex(x0, f0, x1, f1, x2, f2)
        if vertex is None or not x0 < vertex < x2:
            break
        fv = f(vertex)
        if fv < f1 - 8 * math.ulp(f1):
            break
        moved = abs(vertex - x1)
        x1, f1 = vertex, fv
        if moved <= REFINE_TOLERANCE * (hi - lo):
            break
    return x1, f1
