"""
Closed-form virial bounds and the optimisers that confirm them.

Every bound starts from cluster-coefficient bounds |n b_n| <= a n^(n-1)/n! b^n.
Maximising the density lower bound r(s) = s (e^(-s) (1+ab)/b - a) gives, with
mu = e ab / (1 + ab) and W the Lambert W-function,

    radius_lower = a (W(mu) - 1)^2 / W(mu)
    |beta c_n|  <= (1/n) coeff_base^(n-1),   coeff_base = 1 / radius_lower

The corollaries only differ in how (a, b) are built from the temperedness data
C(beta), R(beta) and the stability constant B.
"""

import math
import sys
from enum import StrEnum
from functools import partial
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from src.bounds.optimize import BracketEdgeError, Maximum, golden_section_maximize
from src.exceptions import ArgumentError, DegenerateInputError, RangeError
from src.lambertw import lambert_w0
from src.utils.logger import get_logger

logger = get_logger(__name__)

E = math.e
W_HALF_E = lambert_w0(E / 2.0)

# Morais-Procacci asymptotic constant
MP_ASYMPTOTIC_CONSTANT = 0.24026

# Maximiser brackets
S_EPSILON = 1e-12
ALPHA_BRACKET = (1e-6, 50.0)
ALPHA_MAX_EXPANSIONS = 3
EDGE_FRACTION = 1e-6


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


# ============================================================================
# MODELS
# ============================================================================


class BoundStatus(StrEnum):
    OK = "ok"
    VANISHING = "vanishing"


class BoundParams(BaseModel):
    """The (a, b) pair of a cluster-coefficient bound, at inverse temperature beta."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0, allow_inf_nan=False, description="Inverse-volume prefactor")
    b: float = Field(ge=0.0, allow_inf_nan=False, description="Volume scale")
    beta: float = Field(default=1.0, gt=0.0, allow_inf_nan=False, description="Inverse temperature")

    @model_validator(mode="after")
    def _product_is_finite(self) -> "BoundParams":
        if not math.isfinite(self.a * self.b):
            raise ValueError("a * b must be finite")
        return self

    @property
    def ab(self) -> float:
        return self.a * self.b


class CorollaryInput(BaseModel):
    """Temperedness data feeding the corollary bounds."""

    model_config = ConfigDict(frozen=True)

    beta: float = Field(gt=0.0, allow_inf_nan=False)
    B: float = Field(default=0.0, ge=0.0, allow_inf_nan=False, description="Stability constant")
    C_beta: float | None = Field(default=None, description="Temperedness integral C(beta)")
    R_beta: float | None = Field(default=None, description="Hard core plus tail integral R(beta)")

    @property
    def beta_b(self) -> float:
        return self.beta * self.B

    @property
    def u(self) -> float:
        return _exp(2.0 * self.beta_b)

    def require_C(self) -> float:
        if self.C_beta is None or not self.C_beta > 0.0 or not math.isfinite(self.C_beta):
            raise ArgumentError(f"C(beta) must be a positive finite number, got {self.C_beta}")
        return self.C_beta

    def require_R(self) -> float:
        if self.R_beta is None or not self.R_beta > 0.0 or not math.isfinite(self.R_beta):
            raise ArgumentError(f"R(beta) must be a positive finite number, got {self.R_beta}")
        return self.R_beta


class BoundResult(BaseModel):
    """Outcome of one bound evaluation."""

    model_config = ConfigDict(frozen=True)

    name: str
    a: float
    b: float
    mu: float
    w: float
    coeff_base: float
    radius_lower: float
    rho_lower: float
    status: BoundStatus = BoundStatus.OK

    def coeff_bound_scaled(self, n: int) -> float:
        """Bound on |beta c_n|: (1/n) coeff_base^(n-1)."""
        if n < 1:
            raise ArgumentError(f"Virial coefficient order must be >= 1, got {n}")
        if n == 1:
            return 1.0
        try:
            return self.coeff_base ** (n - 1) / n
        except OverflowError:
            return math.inf

    def coeff_bound(self, n: int, beta: float) -> float:
        """Bound on |c_n|: (beta^-1 / n) coeff_base^(n-1)."""
        return self.coeff_bound_scaled(n) / beta


class MPOptimum(NamedTuple):
    alpha_star: float
    F: float


class ComparisonFactors(NamedTuple):
    beta_b: float
    r1: float
    r2: float
    f1: float
    f2: float

    @property
    def r1_over_r2(self) -> float:
        return self.r1 / self.r2 if self.r2 > 0.0 else math.nan

    @property
    def f1_over_f2(self) -> float:
        return self.f1 / self.f2 if self.f2 > 0.0 else math.nan


# ============================================================================
# THEOREM: GENERAL BOUND
# ============================================================================


def _mu_from_product(ab: float) -> float:
    # e ab / (1 + ab), arranged so neither ab -> 0 nor ab -> inf loses precision
    if ab <= 1.0:
        return E * ab / (1.0 + ab)
    return E / (1.0 + 1.0 / ab)


def _evaluate(name: str, a: float, b: float, ab: float) -> BoundResult:
    mu = _mu_from_product(ab)
    if mu >= E:
        logger.info(f"{name}: mu reached e, reporting a vanishing bound")
        return BoundResult(
            name=name, a=a, b=b, mu=E, w=1.0, coeff_base=math.inf,
            radius_lower=0.0, rho_lower=0.0, status=BoundStatus.VANISHING,
        )

    w = lambert_w0(mu)
    if a >= sys.float_info.min and w > 0.0:
        radius = a * (1.0 - w) ** 2 / w
    else:
        # a underflowed: a / W(mu) = (a + 1/b) e^(W - 1), from W e^W = mu
        radius = (a + 1.0 / b) * (1.0 - w) ** 2 * math.exp(w - 1.0)
    if radius == 0.0:
        return BoundResult(
            name=name, a=a, b=b, mu=mu, w=w, coeff_base=math.inf,
            radius_lower=0.0, rho_lower=0.0, status=BoundStatus.VANISHING,
        )
    return BoundResult(
        name=name, a=a, b=b, mu=mu, w=w, coeff_base=1.0 / radius,
        radius_lower=radius, rho_lower=radius,
    )


def general_bound(params: BoundParams) -> BoundResult:
    """
    Radius and coefficient bounds for |n b_n| <= a n^(n-1)/n! b^n.

    Raises:
        DegenerateInputError: a == 0 or b == 0
    """
    if params.a == 0.0 or params.b == 0.0:
        raise DegenerateInputError()
    return _evaluate("general", params.a, params.b, params.ab)


def rho_lower_profile(params: BoundParams, s: float) -> float:
    """
    r(s) = s (e^(-s) (1 + ab)/b - a), positive for s in (0, ln(1 + 1/(ab))).

    Raises:
        RangeError: s outside the closed positive range
    """
    if params.a == 0.0 or params.b == 0.0:
        raise DegenerateInputError()
    s_max = math.log1p(1.0 / params.ab)
    if not 0.0 <= s <= s_max * (1.0 + 1e-12):
        raise RangeError(f"s={s} is outside [0, {s_max}]")
    # a s ((1 + 1/ab) e^-s - 1), via expm1 to keep the near-root cancellation exact
    return params.a * s * math.expm1(math.log1p(1.0 / params.ab) - s)


def maximize_rho_lower(params: BoundParams) -> tuple[float, float]:
    """Numerically maximise rho_lower_profile; returns (s_star, value)."""
    if params.a == 0.0 or params.b == 0.0:
        raise DegenerateInputError()
    s_max = math.log1p(1.0 / params.ab)
    lo, hi = S_EPSILON, s_max - S_EPSILON
    if not lo < hi:
        # ab -> inf: the positive range collapses onto s = 0
        return 0.0, 0.0
    best = golden_section_maximize(partial(rho_lower_profile, params), lo, hi)
    return best.x, best.value


# ============================================================================
# COROLLARIES
# ============================================================================


def improved_lp_bound(inp: CorollaryInput) -> BoundResult:
    """a = C^-1 e^(-4 beta B), b = e^(2 beta B) C, so ab = e^(-2 beta B)."""
    C = inp.require_C()
    t = inp.beta_b
    return _evaluate("improved-lp", math.exp(-4.0 * t) / C, _exp(2.0 * t) * C, math.exp(-2.0 * t))


def pu_bound(inp: CorollaryInput) -> BoundResult:
    """a = R^-1, b = R e^(beta B), so ab = e^(beta B)."""
    R = inp.require_R()
    t = inp.beta_b
    return _evaluate("pu", 1.0 / R, R * _exp(t), _exp(t))


def classic_lp_bound(inp: CorollaryInput) -> BoundResult:
    """Lebowitz-Penrose: C^-1 2/(1 + e^(2 beta B)) (W(e/2) - 1)^2 / W(e/2)."""
    C = inp.require_C()
    t = inp.beta_b
    damping = 2.0 * math.exp(-2.0 * t) / (1.0 + math.exp(-2.0 * t))
    radius = damping * (1.0 - W_HALF_E) ** 2 / W_HALF_E / C
    a = math.exp(-4.0 * t) / C
    b = _exp(2.0 * t) * C
    if radius == 0.0:
        return BoundResult(
            name="classic-lp", a=a, b=b, mu=E / 2.0, w=W_HALF_E, coeff_base=math.inf,
            radius_lower=0.0, rho_lower=0.0, status=BoundStatus.VANISHING,
        )
    return BoundResult(
        name="classic-lp", a=a, b=b, mu=E / 2.0, w=W_HALF_E, coeff_base=1.0 / radius,
        radius_lower=radius, rho_lower=radius,
    )


def classic_lp_profile(v: float) -> float:
    """f(v) = v - v^2 g(v/2) with g(w) = (1 - e^-w)/w; maximum 2 (W(e/2)-1)^2/W(e/2)."""
    if v == 0.0:
        return 0.0
    half = 0.5 * v
    return v - v * v * (-math.expm1(-half) / half)


def maximize_classic_lp_profile() -> tuple[float, float]:
    """Numeric optimum of classic_lp_profile on (0, 2 ln 2); returns (v_star, value)."""
    best = golden_section_maximize(classic_lp_profile, S_EPSILON, 2.0 * math.log(2.0) - S_EPSILON)
    return best.x, best.value


# ============================================================================
# MORAIS-PROCACCI
# ============================================================================


def mp_profile(u: float, alpha: float) -> float:
    """ln(1 + u(1 - e^-a)) / (u e^a (1 + u(1 - e^-a)))."""
    q = -u * math.expm1(-alpha)
    return math.log1p(q) / (u * math.exp(alpha) * (1.0 + q))


def _maximize_alpha(u: float) -> Maximum:
    lo, hi = ALPHA_BRACKET
    best = Maximum(math.nan, math.nan, 0)
    for attempt in Retrying(
        retry=retry_if_exception_type(BracketEdgeError),
        stop=stop_after_attempt(ALPHA_MAX_EXPANSIONS + 1),
        reraise=True,
    ):
        with attempt:
            upper = hi * 2 ** (attempt.retry_state.attempt_number - 1)
            best = golden_section_maximize(partial(mp_profile, u), lo, upper)
            if best.x >= upper * (1.0 - EDGE_FRACTION):
                logger.warning(f"mp_F(u={u}): maximum at bracket edge {upper}, expanding")
                raise BracketEdgeError(upper)
    return best


def mp_F(u: float) -> MPOptimum:
    """
    F(u) = max over alpha in (0, inf) of mp_profile(u, alpha), for u = e^(2 beta B) >= 1.

    Raises:
        ArgumentError: u < 1
    """
    if not u >= 1.0 or not math.isfinite(u):
        raise ArgumentError(f"mp_F needs a finite u >= 1, got {u}")
    try:
        best = _maximize_alpha(u)
    except BracketEdgeError as e:
        raise ArgumentError(f"mp_F(u={u}): no interior maximum below alpha={e.hi}") from e
    return MPOptimum(best.x, best.value)


def mp_free_energy_coeff_bound(k: int, inp: CorollaryInput, alpha_star: float) -> float:
    """
    Bound on the coefficient of rho^(k+1) in the free energy:

        (1/(k+1) + (e^a - 1) e^(a k)) e^(2 beta B (k-1)) (k+1)^k / k! C^k
    """
    if k < 1:
        raise ArgumentError(f"Free-energy coefficient index must be >= 1, got {k}")
    C = inp.require_C()
    bracket = 1.0 / (k + 1) + math.expm1(alpha_star) * math.exp(alpha_star * k)
    tree = (k + 1) ** k / math.factorial(k)
    return bracket * _exp(2.0 * inp.beta_b * (k - 1)) * tree * C**k


def mp_asymptotic_base(inp: CorollaryInput) -> float:
    """Geometric base e^(2 beta B) C / 0.24026 of the asymptotic virial bound."""
    return inp.u * inp.require_C() / MP_ASYMPTOTIC_CONSTANT


def mp_virial_coeff_bound(n: int, inp: CorollaryInput) -> float:
    """|c_n| <= (beta^-1/n) C^(n-1) F(u)^-(n-1)."""
    if n < 1:
        raise ArgumentError(f"Virial coefficient order must be >= 1, got {n}")
    C = inp.require_C()
    optimum = mp_F(inp.u)
    return (C / optimum.F) ** (n - 1) / (n * inp.beta)


# ============================================================================
# COMPARISON FACTORS
# ============================================================================


def comparison_factors(beta_b: float) -> ComparisonFactors:
    """
    The C- and R-independent factors of the three radius bounds at a given beta*B.

    r1 (= f1): improved Lebowitz-Penrose, r2: classic Lebowitz-Penrose,
    f2: Poghosyan-Ueltschi.
    """
    if not beta_b >= 0.0 or not math.isfinite(beta_b):
        raise ArgumentError(f"beta*B must be a finite nonnegative number, got {beta_b}")
    unit = CorollaryInput(beta=1.0, B=beta_b, C_beta=1.0, R_beta=1.0)
    r1 = improved_lp_bound(unit).radius_lower
    r2 = classic_lp_bound(unit).radius_lower
    f2 = pu_bound(unit).radius_lower
    return ComparisonFactors(beta_b, r1, r2, r1, f2)


__all__ = [
    "MP_ASYMPTOTIC_CONSTANT",
    "BoundParams",
    "BoundResult",
    "BoundStatus",
    "ComparisonFactors",
    "CorollaryInput",
    "MPOptimum",
    "classic_lp_bound",
    "classic_lp_profile",
    "comparison_factors",
    "general_bound",
    "improved_lp_bound",
    "maximize_classic_lp_profile",
    "maximize_rho_lower",
    "mp_F",
    "mp_asymptotic_base",
    "mp_free_energy_coeff_bound",
    "mp_profile",
    "mp_virial_coeff_bound",
    "pu_bound",
    "rho_lower_profile",
]
