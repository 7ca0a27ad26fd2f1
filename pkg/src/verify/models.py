"""Exactly solvable models with known cluster and virial coefficients."""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any

from src.exceptions import ArgumentError
from src.potentials import RadialPotential, ball_volume, mayer_integral
from src.series import PowerSeries
from src.utils.logger import get_logger
from src.verify.mayer import hard_sphere_b3

logger = get_logger(__name__)

Scalar = Fraction | float


@dataclass(frozen=True)
class ModelSeries:
    """
    Cluster coefficients b_1..b_N of a model, its exact virial coefficients
    beta c_n when known, and the temperedness data the bounds need.
    """

    name: str
    b_series: PowerSeries
    exact_c_n: PowerSeries | None = None
    C_beta: Scalar | None = None
    R_beta: Scalar | None = None
    B: float = 0.0
    beta: float = 1.0
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.b_series.order < 1 or self.b_series[0] != 0 or self.b_series[1] != 1:
            raise ArgumentError(f"Model '{self.name}' needs b_0 = 0 and b_1 = 1")

    @property
    def order(self) -> int:
        return self.b_series.order

    def with_temperedness(
        self, C_beta: Scalar | None = None, R_beta: Scalar | None = None, B: float | None = None
    ) -> "ModelSeries":
        """Copy with any supplied temperedness values replacing the model's own."""
        return replace(
            self,
            C_beta=self.C_beta if C_beta is None else C_beta,
            R_beta=self.R_beta if R_beta is None else R_beta,
            B=self.B if B is None else B,
        )

    def truncate(self, order: int) -> "ModelSeries":
        exact = None if self.exact_c_n is None else self.exact_c_n.truncate(order)
        return replace(self, b_series=self.b_series.truncate(order), exact_c_n=exact)


def ideal_gas(order: int) -> ModelSeries:
    """beta P = z = rho. No interaction, so no temperedness data either."""
    _check_order(order)
    return ModelSeries(
        name="ideal",
        b_series=PowerSeries.from_coeffs([0, 1], order),
        exact_c_n=PowerSeries.from_coeffs([0, 1], order),
    )


def tonks_gas(sigma: Scalar, order: int) -> ModelSeries:
    """
    Hard rods of length sigma: b_n = n^(n-1) (-sigma)^(n-1) / n! and
    beta P = rho / (1 - sigma rho), so beta c_n = sigma^(n-1). C = R = 2 sigma.
    """
    _check_order(order)
    if not sigma > 0:
        raise ArgumentError(f"sigma must be positive, got {sigma}")
    s = Fraction(sigma) if isinstance(sigma, int | Fraction) else sigma
    b = [0] + [n ** (n - 1) * (-s) ** (n - 1) / math.factorial(n) for n in range(1, order + 1)]
    c = [0] + [s ** (n - 1) for n in range(1, order + 1)]
    return ModelSeries(
        name="tonks",
        b_series=PowerSeries.from_coeffs(b, order),
        exact_c_n=PowerSeries.from_coeffs(c, order),
        C_beta=2 * s,
        R_beta=2 * s,
        metadata={"sigma": str(s)},
    )


def hard_sphere_potential(sigma: float) -> RadialPotential:
    return RadialPotential(dim=3, hard_core_radius=sigma)


def hard_spheres(sigma: float, seed: int | None = None, workers: int = 1) -> ModelSeries:
    """
    Hard spheres of diameter sigma in d = 3, truncated at n = 3.

    b_2 comes from quadrature of the Mayer function and b_3 from the seeded
    quasi-Monte Carlo oracle; the exact virial coefficients are
    beta c_2 = 2 pi sigma^3 / 3 and beta c_3 = 5 pi^2 sigma^6 / 18.
    """
    pot = hard_sphere_potential(sigma)
    b2 = 0.5 * mayer_integral(pot, 1.0).value
    b3 = hard_sphere_b3(sigma, seed=seed, workers=workers)
    volume = ball_volume(3) * sigma**3
    return ModelSeries(
        name="hard_sphere",
        b_series=PowerSeries.from_coeffs([0.0, 1.0, b2, b3.value], 3),
        exact_c_n=PowerSeries.from_coeffs(
            [0.0, 1.0, 2.0 * math.pi * sigma**3 / 3.0, 5.0 * math.pi**2 * sigma**6 / 18.0], 3
        ),
        C_beta=volume,
        R_beta=volume,
        metadata={"sigma": sigma, "seed": b3.seed, "b3_stderr": b3.stderr, "samples": b3.samples},
    )


def _check_order(order: int) -> None:
    if order < 1:
        raise ArgumentError(f"Model order must be >= 1, got {order}")


MODEL_NAMES = ("ideal", "tonks", "hard_sphere")


def build_model(
    name: str, order: int, sigma: Scalar = 1, seed: int | None = None, workers: int = 1
) -> ModelSeries:
    """Look a shipped model up by name."""
    if name == "ideal":
        return ideal_gas(order)
    if name == "tonks":
        return tonks_gas(sigma, order)
    if name == "hard_sphere":
        _check_order(order)
        if order > 3:
            logger.warning(f"hard_sphere is only known to n = 3, truncating order {order}")
        return hard_spheres(float(sigma), seed=seed, workers=workers).truncate(min(order, 3))
    raise ArgumentError(f"Unknown model '{name}', expected one of {', '.join(MODEL_NAMES)}")


__all__ = [
    "MODEL_NAMES",
    "ModelSeries",
    "build_model",
    "hard_sphere_potential",
    "hard_spheres",
    "ideal_gas",
    "tonks_gas",
]
