"""
Brute-force Mayer oracle for low-order cluster coefficients.

    b_n = (1/n!) int U_n(0, x_2, ..., x_n) dx_2 ... dx_n

where U_n is the Ursell function, written through set partitions of the n
particles as sum_P (-1)^(|P|-1) (|P|-1)! prod_{blocks} W(block), W being the
product of pair Boltzmann factors inside a block.
"""

import math
from collections.abc import Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.stats import qmc

from src.config import AppConfig
from src.exceptions import ArgumentError, ConfigurationError
from src.potentials import NoTail, RadialPotential, SquareWell, ball_volume
from src.utils.logger import get_logger

logger = get_logger(__name__)

MAX_CLUSTER_ORDER = 5

# Per-piece Gauss-Legendre nodes; the nested integrands of order <= 5 are
# polynomials of degree <= 3 between breakpoints
GAUSS_NODES, GAUSS_WEIGHTS = leggauss(4)


class MonteCarloEstimate(NamedTuple):
    value: float
    stderr: float
    samples: int
    seed: int


# ============================================================================
# URSELL FUNCTION
# ============================================================================


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Every partition of `items` into blocks; blocks keep the input order."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [(first,), *partition]
        for i, block in enumerate(partition):
            yield [*partition[:i], (first, *block), *partition[i + 1 :]]


@lru_cache(maxsize=None)
def _partition_terms(n: int) -> tuple[tuple[int, tuple[tuple[int, ...], ...]], ...]:
    terms = []
    for partition in set_partitions(list(range(n))):
        k = len(partition)
        terms.append(((-1) ** (k - 1) * math.factorial(k - 1), tuple(partition)))
    return tuple(terms)


def ursell(pair_weight: dict[tuple[int, int], np.ndarray | float], n: int) -> np.ndarray | float:
    """U_n from pair Boltzmann factors keyed by (i, j), i < j."""
    block_weight: dict[tuple[int, ...], np.ndarray | float] = {}

    def weight(block: tuple[int, ...]) -> np.ndarray | float:
        if block not in block_weight:
            w: np.ndarray | float = 1.0
            for pair in combinations(block, 2):
                w = w * pair_weight[pair]
            block_weight[block] = w
        return block_weight[block]

    total: np.ndarray | float = 0.0
    for coefficient, partition in _partition_terms(n):
        product: np.ndarray | float = 1.0
        for block in partition:
            product = product * weight(block)
        total = total + coefficient * product
    return total


# ============================================================================
# ONE-DIMENSIONAL STEP POTENTIALS
# ============================================================================


def _step_radii(pot: RadialPotential) -> list[float]:
    if not isinstance(pot.tail, NoTail | SquareWell):
        raise ConfigurationError(
            f"The quadrature oracle needs a step potential, got tail '{pot.tail.type}'"
        )
    return pot.breakpoints()


def _boltzmann_array(pot: RadialPotential, beta: float, distance: np.ndarray | float) -> np.ndarray:
    s = np.abs(distance)
    out = np.where(s < pot.hard_core_radius, 0.0, 1.0)
    if isinstance(pot.tail, SquareWell):
        edge = pot.tail.lambda_ * pot.hard_core_radius
        inside = (s >= pot.hard_core_radius) & (s <= edge)
        out = np.where(inside, math.exp(beta * pot.tail.epsilon), out)
    return out


def _signed_offsets(radii: list[float], terms: int) -> list[float]:
    """All sums of at most `terms` values drawn from +-radii."""
    offsets = {0.0}
    for _ in range(terms):
        offsets |= {round(o + sign * r, 12) for o in offsets for r in radii for sign in (1.0, -1.0)}
    return sorted(offsets)


def _gauss_points(cuts: list[float]) -> tuple[np.ndarray, np.ndarray]:
    lo = np.asarray(cuts[:-1])
    hi = np.asarray(cuts[1:])
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = (mid[:, None] + half[:, None] * GAUSS_NODES[None, :]).ravel()
    weights = (half[:, None] * GAUSS_WEIGHTS[None, :]).ravel()
    return nodes, weights


def cluster_coefficient_1d(pot: RadialPotential, beta: float, n: int) -> float:
    """
    b_n for a one-dimensional step potential (hard rods, square wells).

    The Ursell integrand is piecewise constant, so each nested integral is a
    piecewise polynomial whose breakpoints sit at sums of signed radii from
    the outer positions. Integrating piece by piece with Gauss-Legendre is
    exact up to rounding.
    """
    if pot.dim != 1:
        raise ConfigurationError(f"The quadrature oracle is one-dimensional, got dim={pot.dim}")
    if not 1 <= n <= MAX_CLUSTER_ORDER:
        raise ArgumentError(f"Cluster order must lie in [1, {MAX_CLUSTER_ORDER}], got {n}")
    if n == 1:
        return 1.0
    radii = _step_radii(pot)
    if not radii:
        return 0.0

    reach = (n - 1) * max(radii)
    offsets = {m: _signed_offsets(radii, m) for m in range(1, n)}
    pairs = list(combinations(range(n), 2))

    def integrate(level: int, fixed: list[float]) -> float:
        shifts = offsets[n - level]
        cuts = {-reach, reach}
        cuts.update(x + o for x in fixed for o in shifts if -reach < x + o < reach)
        nodes, weights = _gauss_points(sorted(cuts))
        if level == n - 1:
            positions: list[np.ndarray | float] = [*fixed, nodes]
            pair_weight = {
                (i, j): _boltzmann_array(pot, beta, positions[i] - positions[j]) for i, j in pairs
            }
            return float(np.dot(weights, np.broadcast_to(ursell(pair_weight, n), nodes.shape)))
        return sum(w * integrate(level + 1, [*fixed, x]) for x, w in zip(nodes, weights, strict=True))

    logger.info(f"Computing b_{n} by nested quadrature at beta={beta}")
    return integrate(1, [0.0]) / math.factorial(n)


# ============================================================================
# HARD SPHERES, d = 3
# ============================================================================


def _ball_points(unit: np.ndarray, sigma: float) -> np.ndarray:
    """Map points of [0,1)^3 to uniform points of the ball of radius sigma."""
    radius = sigma * np.cbrt(unit[:, 0])
    cos_theta = 1.0 - 2.0 * unit[:, 1]
    sin_theta = np.sqrt(np.clip(1.0 - cos_theta**2, 0.0, None))
    phi = 2.0 * math.pi * unit[:, 2]
    return np.column_stack(
        (radius * sin_theta * np.cos(phi), radius * sin_theta * np.sin(phi), radius * cos_theta)
    )


def _overlap_fraction(seed: np.random.SeedSequence, samples: int, sigma: float) -> float:
    sampler = qmc.Halton(d=6, scramble=True, seed=np.random.default_rng(seed))
    unit = sampler.random(samples)
    x2 = _ball_points(unit[:, :3], sigma)
    x3 = _ball_points(unit[:, 3:], sigma)
    return float(np.mean(np.sum((x2 - x3) ** 2, axis=1) < sigma * sigma))


def hard_sphere_b3(
    sigma: float,
    seed: int | None = None,
    shards: int | None = None,
    samples: int | None = None,
    workers: int = 1,
) -> MonteCarloEstimate:
    """
    b_3 of hard spheres of diameter sigma in three dimensions.

    With V the excluded volume, b_3 = (3 V^2 + T) / 6 where the triangle term
    T = -V^2 P(|x_2 - x_3| < sigma), x_2 and x_3 uniform in the excluded ball.
    P is estimated by randomised quasi-Monte Carlo: each shard owns a scrambled
    Halton sequence seeded from one SeedSequence, and the standard error comes
    from the spread of the shard means. Results depend on (seed, shards,
    samples) only, never on `workers`.
    """
    seed = AppConfig.VIRIAL_SEED if seed is None else seed
    shards = AppConfig.MC_SHARDS if shards is None else shards
    samples = AppConfig.MC_SAMPLES if samples is None else samples
    if not sigma > 0.0:
        raise ArgumentError(f"sigma must be positive, got {sigma}")
    if shards < 2:
        raise ArgumentError(f"At least two shards are needed for an error estimate, got {shards}")

    logger.info(f"Estimating hard-sphere b_3 with {shards} shards x {samples} points, seed={seed}")
    children = np.random.SeedSequence(seed).spawn(shards)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            fractions = list(pool.map(lambda child: _overlap_fraction(child, samples, sigma), children))
    else:
        fractions = [_overlap_fraction(child, samples, sigma) for child in children]

    volume = ball_volume(3) * sigma**3
    p = np.asarray(fractions)
    p_mean = float(p.mean())
    p_stderr = float(p.std(ddof=1) / math.sqrt(shards))
    value = volume**2 * (3.0 - p_mean) / 6.0
    stderr = volume**2 * p_stderr / 6.0
    return MonteCarloEstimate(value, stderr, shards * samples, seed)


__all__ = [
    "MAX_CLUSTER_ORDER",
    "MonteCarloEstimate",
    "cluster_coefficient_1d",
    "hard_sphere_b3",
    "set_partitions",
    "ursell",
]
