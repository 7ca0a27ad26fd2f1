"""
Radial pair potentials with an optional hard core, and the temperedness
integrals

    C(beta) = int |e^(-beta phi(|x|)) - 1| d^d x
    R(beta) = |B| r^d + beta int_{|y| > r} |phi(|y|)| d^d y

Both integrals are reduced to radial ones, S_(d-1) int (...) s^(d-1) ds. The
hard core is never sampled: its contribution is the exact ball volume.
"""

import math
from enum import StrEnum
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.interpolate import PchipInterpolator

from src.exceptions import ArgumentError, DivergenceError
from src.potentials.quadrature import Integral, adaptive_simpson, integrate_to_infinity
from src.utils.logger import get_logger

logger = get_logger(__name__)


class BallConvention(StrEnum):
    """How |B| in R(beta) is read: unit-ball volume (default) or unit-sphere area."""

    VOLUME = "volume"
    SURFACE = "surface"


def ball_volume(dim: int) -> float:
    """V_d = pi^(d/2) / Gamma(d/2 + 1)."""
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1)


def sphere_area(dim: int) -> float:
    """S_(d-1) = 2 pi^(d/2) / Gamma(d/2), the area of the unit sphere in R^d."""
    return 2.0 * math.pi ** (dim / 2) / math.gamma(dim / 2)


# ============================================================================
# TAILS
# ============================================================================


class NoTail(BaseModel):
    """Pure hard core: nothing outside the core."""

    model_config = ConfigDict(frozen=True)
    type: Literal["none"] = "none"

    def __call__(self, s: float) -> float:
        return 0.0

    def pieces(self, core: float) -> list[tuple[float, float]]:
        return []

    def reach(self, core: float) -> float:
        return core


class SquareWell(BaseModel):
    """phi = -epsilon on [r, lambda r], zero beyond."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)
    type: Literal["square_well"] = "square_well"
    epsilon: float = Field(gt=0.0, allow_inf_nan=False, description="Well depth (energy)")
    lambda_: float = Field(alias="lambda", gt=1.0, allow_inf_nan=False, description="Range in core radii")
    _edge: float = PrivateAttr(default=math.inf)

    def bind(self, core: float) -> None:
        self._edge = self.lambda_ * core

    def __call__(self, s: float) -> float:
        return -self.epsilon if s <= self._edge else 0.0

    def pieces(self, core: float) -> list[tuple[float, float]]:
        return [(core, self.lambda_ * core)]

    def reach(self, core: float) -> float:
        return self.lambda_ * core


class InversePower(BaseModel):
    """phi = c / s^p; the tail integral converges only for p > dim."""

    model_config = ConfigDict(frozen=True)
    type: Literal["inverse_power"] = "inverse_power"
    c: float = Field(allow_inf_nan=False, description="Strength (energy x length^p)")
    p: float = Field(gt=0.0, allow_inf_nan=False, description="Decay exponent")

    def __call__(self, s: float) -> float:
        return self.c / s**self.p

    def pieces(self, core: float) -> list[tuple[float, float]]:
        return [(core, math.inf)]

    def reach(self, core: float) -> float:
        return math.inf


class Tabulated(BaseModel):
    """
    Sampled tail, interpolated with a monotone piecewise cubic and treated as
    zero beyond `cutoff`.
    """

    model_config = ConfigDict(frozen=True)
    type: Literal["tabulated"] = "tabulated"
    r: list[float] = Field(min_length=2)
    phi: list[float] = Field(min_length=2)
    cutoff: float = Field(gt=0.0, allow_inf_nan=False)
    _curve: Any = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_samples(self) -> "Tabulated":
        if len(self.r) != len(self.phi):
            raise ValueError("r and phi must have the same number of samples")
        if any(b <= a for a, b in zip(self.r, self.r[1:], strict=False)):
            raise ValueError("sample radii must be strictly increasing")
        if not all(math.isfinite(v) for v in self.phi):
            raise ValueError("sampled energies must be finite")
        if self.r[-1] < self.cutoff:
            raise ValueError(f"last sample {self.r[-1]} must lie beyond the cutoff {self.cutoff}")
        if self.cutoff <= self.r[0]:
            raise ValueError("cutoff must exceed the first sample radius")
        return self

    def __call__(self, s: float) -> float:
        if s > self.cutoff or s < self.r[0]:
            return 0.0
        if self._curve is None:
            self._curve = PchipInterpolator(self.r, self.phi, extrapolate=False)
        return float(self._curve(s))

    def pieces(self, core: float) -> list[tuple[float, float]]:
        if core >= self.cutoff:
            return []
        knots = [core] + [x for x in self.r if core < x < self.cutoff] + [self.cutoff]
        return list(zip(knots, knots[1:], strict=False))

    def reach(self, core: float) -> float:
        return self.cutoff


Tail = Annotated[NoTail | SquareWell | InversePower | Tabulated, Field(discriminator="type")]


# ============================================================================
# POTENTIAL
# ============================================================================


class RadialPotential(BaseModel):
    """
    Central pair potential: +inf inside the hard core, `tail` outside it.

    JSON form: {"dim": 3, "core_radius": 1.0,
                "tail": {"type": "square_well", "epsilon": 1.0, "lambda": 1.5}, "B": 1.0}
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    dim: int = Field(ge=1, description="Spatial dimension d")
    hard_core_radius: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, alias="core_radius")
    tail: Tail = Field(default_factory=NoTail)
    stability_B: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, alias="B")

    @model_validator(mode="after")
    def _check_tail(self) -> "RadialPotential":
        r = self.hard_core_radius
        if isinstance(self.tail, SquareWell):
            if r <= 0.0:
                raise ValueError("a square well is measured in core radii and needs core_radius > 0")
            self.tail.bind(r)
        if isinstance(self.tail, Tabulated) and self.tail.r[0] > r:
            raise ValueError(f"tabulated tail must start at or inside the core radius {r}")
        return self

    def model_post_init(self, __context: Any) -> None:
        if self.stability_B == 0.0 and self._has_attraction():
            logger.warning("Potential has an attractive tail but stability constant B = 0")

    def _has_attraction(self) -> bool:
        tail = self.tail
        if isinstance(tail, SquareWell):
            return True
        if isinstance(tail, InversePower):
            return tail.c < 0.0
        if isinstance(tail, Tabulated):
            return min(tail.phi) < 0.0
        return False

    @property
    def reach(self) -> float:
        """Distance beyond which the potential vanishes (inf for power laws)."""
        return self.tail.reach(self.hard_core_radius)

    @property
    def core_volume(self) -> float:
        return ball_volume(self.dim) * self.hard_core_radius**self.dim

    def phi(self, s: float) -> float:
        if s < self.hard_core_radius:
            return math.inf
        return self.tail(s)

    def boltzmann(self, s: float, beta: float) -> float:
        if s < self.hard_core_radius:
            return 0.0
        return math.exp(-beta * self.tail(s))

    def mayer_f(self, s: float, beta: float) -> float:
        """e^(-beta phi) - 1, equal to -1 inside the core."""
        if s < self.hard_core_radius:
            return -1.0
        return math.expm1(-beta * self.tail(s))

    def breakpoints(self) -> list[float]:
        """Radii where the potential jumps, sorted."""
        points = {self.hard_core_radius} if self.hard_core_radius > 0.0 else set()
        for lo, hi in self.tail.pieces(self.hard_core_radius):
            points.update(x for x in (lo, hi) if math.isfinite(x) and x > 0.0)
        return sorted(points)


class TemperResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    C_beta: float
    R_beta: float
    C_err: float
    R_err: float


# ============================================================================
# TEMPEREDNESS INTEGRALS
# ============================================================================


def _check_integrable(pot: RadialPotential) -> None:
    tail = pot.tail
    if isinstance(tail, InversePower):
        if tail.p <= pot.dim:
            raise DivergenceError(f"power-law tail with p={tail.p} <= dim={pot.dim}")
        if pot.hard_core_radius == 0.0:
            raise DivergenceError("power-law tail without a hard core diverges at the origin")


def _radial_tail_integral(
    pot: RadialPotential, integrand: Any, tol: float | None
) -> Integral:
    """S_(d-1) times the sum over tail pieces of int integrand(s) s^(d-1) ds."""
    d = pot.dim

    def weighted(s: float) -> float:
        return integrand(s) * s ** (d - 1)

    value = error = 0.0
    for lo, hi in pot.tail.pieces(pot.hard_core_radius):
        piece = integrate_to_infinity(weighted, lo, tol) if math.isinf(hi) else adaptive_simpson(weighted, lo, hi, tol)
        value += piece.value
        error += piece.error
    area = sphere_area(d)
    return Integral(area * value, area * error)


def _require_beta(beta: float) -> None:
    if not beta > 0.0 or not math.isfinite(beta):
        raise ArgumentError(f"beta must be a positive finite number, got {beta}")


def compute_C(pot: RadialPotential, beta: float, tol: float | None = None) -> Integral:
    """C(beta): exact core volume plus the quadrature of |e^(-beta phi) - 1| outside it."""
    _require_beta(beta)
    _check_integrable(pot)

    def absolute_mayer(s: float) -> float:
        return abs(math.expm1(-beta * pot.tail(s)))

    tail = _radial_tail_integral(pot, absolute_mayer, tol)
    return Integral(pot.core_volume + tail.value, tail.error)


def compute_R(
    pot: RadialPotential,
    beta: float,
    convention: BallConvention = BallConvention.VOLUME,
    tol: float | None = None,
) -> Integral:
    """R(beta) = |B| r^d + beta S_(d-1) int_r^inf |phi(s)| s^(d-1) ds."""
    _require_beta(beta)
    _check_integrable(pot)

    def absolute_tail(s: float) -> float:
        return abs(pot.tail(s))

    coefficient = ball_volume(pot.dim) if convention is BallConvention.VOLUME else sphere_area(pot.dim)
    tail = _radial_tail_integral(pot, absolute_tail, tol)
    return Integral(coefficient * pot.hard_core_radius**pot.dim + beta * tail.value, beta * tail.error)


def mayer_integral(pot: RadialPotential, beta: float, tol: float | None = None) -> Integral:
    """Signed int (e^(-beta phi) - 1) d^d x; the second cluster coefficient is half of it."""
    _require_beta(beta)
    _check_integrable(pot)
    tail = _radial_tail_integral(pot, lambda s: math.expm1(-beta * pot.tail(s)), tol)
    return Integral(tail.value - pot.core_volume, tail.error)


def temperedness(
    pot: RadialPotential,
    beta: float,
    convention: BallConvention = BallConvention.VOLUME,
    tol: float | None = None,
) -> TemperResult:
    logger.info(f"Computing C and R at beta={beta} for a d={pot.dim} potential")
    c = compute_C(pot, beta, tol)
    r = compute_R(pot, beta, convention, tol)
    return TemperResult(C_beta=c.value, R_beta=r.value, C_err=c.error, R_err=r.error)


def load_potential(text: str) -> RadialPotential:
    """Parse a JSON potential document."""
    return RadialPotential.model_validate_json(text)


__all__ = [
    "BallConvention",
    "InversePower",
    "NoTail",
    "RadialPotential",
    "SquareWell",
    "Tabulated",
    "TemperResult",
    "ball_volume",
    "compute_C",
    "compute_R",
    "load_potential",
    "mayer_integral",
    "sphere_area",
    "temperedness",
]
