"""Uniform beta*B grids over the comparison factors of the three radius bounds."""

from concurrent.futures import ThreadPoolExecutor
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.bounds import ComparisonFactors, comparison_factors
from src.config import AppConfig
from src.exceptions import ArgumentError
from src.formatters import Table
from src.utils.logger import get_logger

logger = get_logger(__name__)

SweepOutput = Literal["r1", "r2", "f1", "f2", "r1_over_r2", "f1_over_f2", "quotients"]

# Column order of every sweep table, after betaB
COLUMN_ORDER = ("r1", "r2", "r1_over_r2", "f1", "f2", "f1_over_f2")

FIGURES: dict[int, tuple[str, ...]] = {
    1: ("r1", "r2"),
    2: ("r1_over_r2",),
    3: ("f1_over_f2",),
}


class SweepSpec(BaseModel):
    """A uniform grid over beta*B, endpoints included, and the columns to report."""

    model_config = ConfigDict(frozen=True)

    variable: Literal["betaB"] = "betaB"
    min: float = Field(ge=0.0, allow_inf_nan=False)
    max: float = Field(allow_inf_nan=False)
    steps: int = Field(ge=2)
    outputs: tuple[SweepOutput, ...]

    @field_validator("outputs")
    @classmethod
    def _outputs_present(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if not value:
            raise ArgumentError("A sweep needs at least one output column")
        return value

    @model_validator(mode="after")
    def _ordered_range(self) -> "SweepSpec":
        if not self.min < self.max:
            raise ValueError(f"min ({self.min}) must be below max ({self.max})")
        return self

    @classmethod
    def for_figure(cls, figure: int, lo: float, hi: float, steps: int) -> "SweepSpec":
        if figure not in FIGURES:
            raise ArgumentError(f"Unknown figure {figure}, expected one of {sorted(FIGURES)}")
        return cls(min=lo, max=hi, steps=steps, outputs=FIGURES[figure])

    def columns(self) -> tuple[str, ...]:
        wanted = set(self.outputs)
        if "quotients" in wanted:
            wanted |= {"r1_over_r2", "f1_over_f2"}
        return ("betaB", *(name for name in COLUMN_ORDER if name in wanted))

    def grid(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.steps)


def _row(factors: ComparisonFactors, columns: tuple[str, ...]) -> tuple[float, ...]:
    values = {
        "betaB": factors.beta_b,
        "r1": factors.r1,
        "r2": factors.r2,
        "r1_over_r2": factors.r1_over_r2,
        "f1": factors.f1,
        "f2": factors.f2,
        "f1_over_f2": factors.f1_over_f2,
    }
    return tuple(float(values[name]) for name in columns)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> Table:
    """
    Evaluate the comparison factors on the spec's grid.

    Grid points may be computed by several threads; rows are always assembled
    in grid order, so the table does not depend on `workers`.
    """
    workers = AppConfig.SWEEP_WORKERS if workers is None else workers
    columns = spec.columns()
    points = [float(x) for x in spec.grid()]
    logger.info(f"Sweeping betaB over [{spec.min}, {spec.max}] in {spec.steps} steps")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            factors = list(pool.map(comparison_factors, points))
    else:
        factors = [comparison_factors(x) for x in points]

    return Table(
        columns=columns,
        rows=tuple(_row(f, columns) for f in factors),
        metadata={"variable": spec.variable, "min": spec.min, "max": spec.max, "steps": spec.steps},
    )


def compare_table(lo: float, hi: float, steps: int, workers: int | None = None) -> Table:
    """Every comparison column, as printed by the compare command."""
    spec = SweepSpec(min=lo, max=hi, steps=steps, outputs=("r1", "r2", "f1", "f2", "quotients"))
    return run_sweep(spec, workers)


__all__ = ["FIGURES", "SweepSpec", "compare_table", "run_sweep"]
