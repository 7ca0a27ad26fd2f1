"""
End-to-end checks of the bounds against exactly solvable models.

The density series rho(z) = sum n b_n z^n is reverted to z(rho) and substituted
into beta P(z) = sum b_n z^n, which yields beta P(rho) = sum beta c_n rho^n.
Every bound family is then required to dominate the resulting coefficients.
"""

import math
import sys
from fractions import Fraction

from pydantic import BaseModel, ConfigDict

from src.bounds import (
    BoundResult,
    CorollaryInput,
    classic_lp_bound,
    improved_lp_bound,
    pu_bound,
)
from src.exceptions import ConfigurationError, InversionError, VerificationFailure
from src.series import PowerSeries, compose, lagrange_burmann, revert
from src.utils.logger import get_logger
from src.verify.models import ModelSeries

logger = get_logger(__name__)

# Relative rounding room for floating-point cluster coefficients
FLOAT_SLACK = 8 * sys.float_info.epsilon


# ============================================================================
# CLUSTER -> VIRIAL
# ============================================================================


def density_series(b_series: PowerSeries) -> PowerSeries:
    """rho(z) = z d/dz (beta P) = sum n b_n z^n."""
    return PowerSeries.from_coeffs(
        [n * c for n, c in enumerate(b_series.coeffs)], b_series.order
    )


def virial_from_cluster(b_series: PowerSeries, order: int) -> PowerSeries:
    """
    beta P as a series in rho, coefficient n being beta c_n.

    Raises:
        InversionError: b_1 == 0
    """
    if b_series.order < 1 or b_series[1] == 0:
        raise InversionError("Cluster series needs b_1 != 0")
    z_of_rho = revert(density_series(b_series), order)
    return compose(b_series.truncate(order), z_of_rho)


def virial_from_cluster_lagrange(b_series: PowerSeries, order: int) -> PowerSeries:
    """
    Same series as virial_from_cluster, by Lagrange-Buermann inversion.

    With h(z) = rho(z) / z, z solves z = rho phi(z) for phi = 1/h, so
    [rho^n] beta P = (1/n) [z^(n-1)] H'(z) phi(z)^n with H = beta P(z).
    """
    if b_series.order < 1 or b_series[1] == 0:
        raise InversionError("Cluster series needs b_1 != 0")
    rho = density_series(b_series)
    h = PowerSeries.from_coeffs(rho.coeffs[1:], rho.order - 1)
    return lagrange_burmann(b_series, h.reciprocal(), order)


def model_virial_coefficients(model: ModelSeries, order: int) -> PowerSeries:
    """The model's exact beta c_n when shipped, otherwise the reverted series."""
    if model.exact_c_n is not None and model.exact_c_n.order >= order:
        return model.exact_c_n.truncate(order)
    return virial_from_cluster(model.b_series, order)


# ============================================================================
# REPORTS
# ============================================================================


class DominationRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    exact: float
    exact_text: str
    lp_improved: float
    pu: float
    lp_classic: float
    margin: float
    ok: bool


class DominationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: str
    order: int
    rows: list[DominationRow]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def raise_for_violations(self) -> None:
        if self.failures:
            raise VerificationFailure(
                f"{len(self.failures)} bound violation(s) for model '{self.model}': "
                + "; ".join(self.failures)
            )


class HypothesisRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    n_b_n: float
    bound: float
    ok: bool


class HypothesisReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: str
    a: float
    b: float
    rows: list[HypothesisRow]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    def raise_for_violations(self) -> None:
        bad = [row.n for row in self.rows if not row.ok]
        if bad:
            raise VerificationFailure(
                f"Cluster bound hypothesis fails for model '{self.model}' at n = {bad}"
            )


def _format_exact(value: Fraction | float) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


def _bounds_for(model: ModelSeries) -> dict[str, BoundResult]:
    if model.C_beta is None or model.R_beta is None:
        raise ConfigurationError(
            f"Model '{model.name}' has no temperedness data; supply C(beta) and R(beta)"
        )
    inp = CorollaryInput(
        beta=model.beta, B=model.B, C_beta=float(model.C_beta), R_beta=float(model.R_beta)
    )
    return {
        "lp_improved": improved_lp_bound(inp),
        "pu": pu_bound(inp),
        "lp_classic": classic_lp_bound(inp),
    }


def domination_report(model: ModelSeries, order: int) -> DominationReport:
    """
    Compare |beta c_n| with every bound family for n = 1..order.

    Comparisons between Fractions and floats are exact in Python, so rational
    models are checked without rounding. n = 1 is an equality by construction;
    higher orders must be strictly dominated.
    """
    bounds = _bounds_for(model)
    coefficients = model_virial_coefficients(model, order)
    logger.info(f"Checking {len(bounds)} bound families on '{model.name}' up to n={order}")

    rows: list[DominationRow] = []
    failures: list[str] = []
    for n in range(1, order + 1):
        exact = abs(coefficients[n])
        values = {name: result.coeff_bound_scaled(n) for name, result in bounds.items()}
        ok = True
        for name, value in values.items():
            holds = exact <= value if n == 1 else exact < value
            if not holds:
                ok = False
                failures.append(f"n={n} {name}: |beta c_n|={_format_exact(exact)} >= {value!r}")
        tightest = min(values.values())
        margin = math.inf if exact == 0 else tightest / float(exact)
        rows.append(
            DominationRow(
                n=n,
                exact=float(exact),
                exact_text=_format_exact(coefficients[n]),
                margin=margin,
                ok=ok,
                **values,
            )
        )
    return DominationReport(model=model.name, order=order, rows=rows, failures=failures)


def check_bound_domination(model: ModelSeries, order: int) -> DominationReport:
    """
    domination_report, failing hard on any violation.

    Raises:
        ConfigurationError: the model lacks C(beta) or R(beta)
        VerificationFailure: some bound does not dominate
    """
    report = domination_report(model, order)
    report.raise_for_violations()
    return report


def cluster_bound_check(model: ModelSeries, a: float, b: float, order: int) -> HypothesisReport:
    """
    Check |n b_n| <= a n^(n-1)/n! b^n for n = 1..order.

    a and b are floats, which are exact binary rationals, so the right-hand
    side is evaluated in Fractions. Rational models are compared without
    rounding; floating-point models may touch the bound with equality (hard
    spheres at n = 2), where a and b carry the rounding of 1/C, so they get
    FLOAT_SLACK of relative room.
    """
    qa, qb = Fraction(a), Fraction(b)
    rows = []
    for n in range(1, min(order, model.order) + 1):
        lhs = abs(n * model.b_series[n])
        rhs = qa * Fraction(n ** (n - 1), math.factorial(n)) * qb**n
        if isinstance(lhs, Fraction):
            ok = lhs <= rhs
        else:
            ok = Fraction(lhs) <= rhs * (1 + Fraction(FLOAT_SLACK))
        rows.append(HypothesisRow(n=n, n_b_n=float(lhs), bound=float(rhs), ok=ok))
    return HypothesisReport(model=model.name, a=a, b=b, rows=rows)


def corollary_hypotheses(model: ModelSeries, order: int) -> list[HypothesisReport]:
    """The cluster hypothesis under each corollary's (a, b) assignment."""
    reports = []
    for name, result in _bounds_for(model).items():
        if name == "lp_classic":
            continue
        report = cluster_bound_check(model, result.a, result.b, order)
        reports.append(report.model_copy(update={"model": f"{model.name}/{name}"}))
    return reports


__all__ = [
    "DominationReport",
    "DominationRow",
    "HypothesisReport",
    "HypothesisRow",
    "check_bound_domination",
    "cluster_bound_check",
    "corollary_hypotheses",
    "density_series",
    "domination_report",
    "model_virial_coefficients",
    "virial_from_cluster",
    "virial_from_cluster_lagrange",
]
