"""
Truncated one-variable formal power series.

A PowerSeries carries its coefficients c_0..c_N together with the truncation
order N; the order is never inferred from trailing zeros. Coefficients are
either exact rationals (fractions.Fraction) or floats, and mixing the two
promotes the result to floats.

Besides ring arithmetic the module provides composition, compositional
inversion (Newton iteration) and Lagrange inversion, which are independent
routes to the same series and are cross-checked in the test-suite.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from src.exceptions import ArgumentError, InversionError
from src.utils.logger import get_logger

logger = get_logger(__name__)

Coefficient = Fraction | float


# ============================================================================
# LIST KERNELS
# ============================================================================


def _zero(exact: bool) -> Coefficient:
    return Fraction(0) if exact else 0.0


def _one(exact: bool) -> Coefficient:
    return Fraction(1) if exact else 1.0


def _mul(a: Sequence[Coefficient], b: Sequence[Coefficient], n: int, exact: bool) -> list[Coefficient]:
    """Product of two coefficient lists truncated to x^n."""
    out = [_zero(exact)] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            out[i + j] += ai * bj
    return out


def _compose(outer: Sequence[Coefficient], inner: Sequence[Coefficient], n: int, exact: bool) -> list[Coefficient]:
    """Horner evaluation of outer(inner) truncated to x^n; inner[0] must be zero."""
    degree = min(len(outer) - 1, n)
    result = [_zero(exact)] * (n + 1)
    result[0] = outer[degree]
    for k in range(degree - 1, -1, -1):
        result = _mul(result, inner, n, exact)
        result[0] += outer[k]
    return result


def _reciprocal(a: Sequence[Coefficient], n: int, exact: bool) -> list[Coefficient]:
    """Coefficients of 1/a truncated to x^n; a[0] must be nonzero."""
    inv0 = _one(exact) / a[0]
    out = [_zero(exact)] * (n + 1)
    out[0] = inv0
    for k in range(1, n + 1):
        acc = _zero(exact)
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += a[j] * out[k - j]
        out[k] = -acc * inv0
    return out


def _coerce(values: Iterable[Coefficient | int], exact: bool) -> list[Coefficient]:
    if exact:
        return [Fraction(v) for v in values]
    return [float(v) for v in values]


# ============================================================================
# POWER SERIES
# ============================================================================


@dataclass(frozen=True)
class PowerSeries:
    """
    Truncated power series c_0 + c_1 x + ... + c_N x^N + O(x^(N+1)).

    Invariant: len(coeffs) == order + 1.
    """

    coeffs: tuple[Coefficient, ...]
    order: int

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ArgumentError(f"Series order must be nonnegative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ArgumentError(
                f"Series of order {self.order} needs {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Coefficient | int], order: int | None = None) -> PowerSeries:
        """
        Build a series from coefficients, zero padding or truncating to `order`.

        Integers and Fractions give an exact series; any float makes the whole
        series floating point.
        """
        values = list(coeffs)
        if not values:
            raise ArgumentError("A series needs at least one coefficient")
        exact = not any(isinstance(v, float) for v in values)
        if order is None:
            order = len(values) - 1
        values = values[: order + 1] + [0] * (order + 1 - len(values))
        return cls(tuple(_coerce(values, exact)), order)

    # ------------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------------

    @property
    def exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    def __getitem__(self, n: int) -> Coefficient:
        if not 0 <= n <= self.order:
            raise ArgumentError(f"Coefficient {n} is beyond the truncation order {self.order}")
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_revertible(self) -> bool:
        return self.order >= 1 and self.coeffs[0] == 0 and self.coeffs[1] != 0

    # ------------------------------------------------------------------------
    # Conversions
    # ------------------------------------------------------------------------

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise ArgumentError(f"Cannot extend a series of order {self.order} to order {order}")
        return PowerSeries(self.coeffs[: order + 1], order)

    def _aligned(self, other: PowerSeries) -> tuple[bool, int]:
        return self.exact and other.exact, min(self.order, other.order)

    # ------------------------------------------------------------------------
    # Ring arithmetic
    # ------------------------------------------------------------------------

    def __add__(self, other: PowerSeries) -> PowerSeries:
        exact, n = self._aligned(other)
        a = _coerce(self.coeffs[: n + 1], exact)
        b = _coerce(other.coeffs[: n + 1], exact)
        return PowerSeries(tuple(x + y for x, y in zip(a, b, strict=True)), n)

    def __neg__(self) -> PowerSeries:
        return PowerSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        return self + (-other)

    def __mul__(self, other: PowerSeries | Coefficient | int) -> PowerSeries:
        if isinstance(other, PowerSeries):
            exact, n = self._aligned(other)
            product = _mul(_coerce(self.coeffs, exact), _coerce(other.coeffs, exact), n, exact)
            return PowerSeries(tuple(product), n)
        exact = self.exact and not isinstance(other, float)
        scalar = Fraction(other) if exact else float(other)
        return PowerSeries(tuple(_coerce((c * scalar for c in self.coeffs), exact)), self.order)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PowerSeries:
        if k < 0:
            raise ArgumentError("Negative powers need reciprocal()")
        result = constant(1, self.order, exact=self.exact)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> PowerSeries:
        """Term-wise derivative; the order drops by one."""
        if self.order == 0:
            return PowerSeries((_zero(self.exact),), 0)
        return PowerSeries(tuple(k * self.coeffs[k] for k in range(1, self.order + 1)), self.order - 1)

    def reciprocal(self) -> PowerSeries:
        if self.coeffs[0] == 0:
            raise ArgumentError("Reciprocal needs a nonzero constant term")
        return PowerSeries(tuple(_reciprocal(self.coeffs, self.order, self.exact)), self.order)


# ============================================================================
# CONSTRUCTORS
# ============================================================================


def constant(value: Coefficient | int, order: int, exact: bool = True) -> PowerSeries:
    return PowerSeries.from_coeffs(_coerce([value], exact), order)


def identity(order: int, exact: bool = True) -> PowerSeries:
    if order < 1:
        raise ArgumentError("The identity series needs order >= 1")
    return PowerSeries.from_coeffs(_coerce([0, 1], exact), order)


def exp_series(order: int) -> PowerSeries:
    """e^x = sum x^n / n!, exact."""
    return PowerSeries(tuple(Fraction(1, math.factorial(n)) for n in range(order + 1)), order)


def tree_function_series(order: int) -> PowerSeries:
    """
    f(x) = sum_{n>=1} n^(n-1)/n! x^n with exact coefficients.

    f is the compositional inverse of x e^(-x).
    """
    if order < 1:
        raise ArgumentError(f"tree_function_series needs order >= 1, got {order}")
    coeffs = [Fraction(0)] + [Fraction(n ** (n - 1), math.factorial(n)) for n in range(1, order + 1)]
    return PowerSeries(tuple(coeffs), order)


def inverse_tree_series(order: int) -> PowerSeries:
    """x e^(-x) = sum_{n>=1} (-1)^(n-1) x^n / (n-1)!, exact."""
    if order < 1:
        raise ArgumentError(f"inverse_tree_series needs order >= 1, got {order}")
    coeffs = [Fraction(0)] + [
        Fraction((-1) ** (n - 1), math.factorial(n - 1)) for n in range(1, order + 1)
    ]
    return PowerSeries(tuple(coeffs), order)


# ============================================================================
# COMPOSITION AND INVERSION
# ============================================================================


def compose(outer: PowerSeries, inner: PowerSeries) -> PowerSeries:
    """
    outer(inner(x)) truncated at min(outer.order, inner.order).

    Raises:
        ArgumentError: inner has a nonzero constant term
    """
    if inner.coeffs[0] != 0:
        raise ArgumentError("compose needs an inner series with zero constant term")
    exact = outer.exact and inner.exact
    n = min(outer.order, inner.order)
    result = _compose(_coerce(outer.coeffs, exact), _coerce(inner.coeffs, exact), n, exact)
    return PowerSeries(tuple(result), n)


def revert(series: PowerSeries, order: int) -> PowerSeries:
    """
    Compositional inverse g of `series`, so that series(g(x)) = x + O(x^(order+1)).

    Newton iteration g <- g - (f(g) - x) / f'(g), doubling the number of correct
    coefficients on each pass.

    Raises:
        InversionError: c_0 != 0 or c_1 == 0
        ArgumentError: order is not in [1, series.order]
    """
    if not series.is_revertible():
        raise InversionError()
    if not 1 <= order <= series.order:
        raise ArgumentError(f"Reversion order must lie in [1, {series.order}], got {order}")

    exact = series.exact
    f = list(series.coeffs[: order + 1])
    # f' is only ever needed below x^order, so the unknown top term is padded with zero
    fp = [k * f[k] for k in range(1, order + 1)] + [_zero(exact)]
    x = [_zero(exact)] * (order + 1)
    x[1] = _one(exact)

    g = [_zero(exact)] * (order + 1)
    g[1] = _one(exact) / f[1]
    correct = 1
    while correct < order:
        correct = min(2 * correct + 1, order)
        residual = [a - b for a, b in zip(_compose(f, g, correct, exact), x, strict=False)]
        slope = _reciprocal(_compose(fp, g, correct, exact), correct, exact)
        step = _mul(residual, slope, correct, exact)
        g = [gk - sk for gk, sk in zip(g, step, strict=False)] + g[correct + 1 :]
        logger.debug(f"revert: {correct} coefficients settled")

    return PowerSeries(tuple(g), order)


def lagrange_invert(phi: PowerSeries, order: int) -> PowerSeries:
    """
    Solve s = y * phi(s) for the series s(y).

    Uses [y^n] s = (1/n) [s^(n-1)] phi(s)^n.

    Raises:
        ArgumentError: phi(0) == 0, order < 1, or phi truncated below order - 1
    """
    return lagrange_burmann(identity(order + 1, exact=phi.exact), phi, order)


def lagrange_burmann(outer: PowerSeries, phi: PowerSeries, order: int) -> PowerSeries:
    """
    Series of H(s(y)) where s = y * phi(s), without forming s(y).

    Uses [y^n] H(s(y)) = (1/n) [s^(n-1)] H'(s) phi(s)^n for n >= 1.
    """
    if order < 1:
        raise ArgumentError(f"Lagrange inversion needs order >= 1, got {order}")
    if phi.coeffs[0] == 0:
        raise ArgumentError("Lagrange inversion needs phi(0) != 0")
    if phi.order < order - 1 or outer.order < order:
        raise ArgumentError(f"Inputs are truncated below the requested order {order}")

    exact = phi.exact and outer.exact
    n_max = order - 1
    phi_c = _coerce(phi.coeffs[: n_max + 1], exact)
    dh = _coerce(outer.derivative().coeffs[: n_max + 1], exact)

    out = [_coerce([outer.coeffs[0]], exact)[0]]
    power = list(phi_c)
    for n in range(1, order + 1):
        weighted = _mul(dh, power, n - 1, exact)
        out.append(weighted[n - 1] / n)
        power = _mul(power, phi_c, n_max, exact)
    return PowerSeries(tuple(out), order)


__all__ = [
    "Coefficient",
    "PowerSeries",
    "compose",
    "constant",
    "exp_series",
    "identity",
    "inverse_tree_series",
    "lagrange_burmann",
    "lagrange_invert",
    "revert",
    "tree_function_series",
]
