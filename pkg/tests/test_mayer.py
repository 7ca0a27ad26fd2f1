import math
import random
from fractions import Fraction

import pytest

from src.exceptions import ArgumentError, ConfigurationError
from src.potentials import InversePower, RadialPotential, SquareWell, mayer_integral
from src.verify.mayer import (
    MAX_CLUSTER_ORDER,
    cluster_coefficient_1d,
    hard_sphere_b3,
    set_partitions,
    ursell,
)
from src.verify.models import tonks_gas

HARD_SPHERE_B3 = 3.0 * math.pi**2 / 4.0


def rods(sigma: float = 1.0) -> RadialPotential:
    return RadialPotential(dim=1, core_radius=sigma)


class TestUrsell:
    @pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_partition_counts(self, n, bell):
        assert sum(1 for _ in set_partitions(list(range(n)))) == bell

    def test_partitions_cover_every_item_once(self):
        for partition in set_partitions([0, 1, 2, 3]):
            assert sorted(i for block in partition for i in block) == [0, 1, 2, 3]

    def test_two_particles_give_mayer_function(self):
        assert ursell({(0, 1): 0.3}, 2) == pytest.approx(-0.7)

    def test_three_particles_match_mayer_graphs(self):
        rng = random.Random(7)
        f = {pair: rng.uniform(-1.0, 2.0) for pair in [(0, 1), (0, 2), (1, 2)]}
        e = {pair: 1.0 + value for pair, value in f.items()}
        graphs = (
            f[0, 1] * f[0, 2] * f[1, 2]
            + f[0, 1] * f[0, 2]
            + f[0, 1] * f[1, 2]
            + f[0, 2] * f[1, 2]
        )
        assert ursell(e, 3) == pytest.approx(graphs, rel=1e-12)

    def test_no_interaction_gives_zero(self):
        weights = {(i, j): 1.0 for i in range(4) for j in range(i + 1, 4)}
        assert ursell(weights, 4) == pytest.approx(0.0, abs=1e-12)


class TestOneDimensionalOracle:
    def test_first_coefficient(self):
        assert cluster_coefficient_1d(rods(), 1.0, 1) == 1.0

    @pytest.mark.parametrize("n,expected", [(2, -1.0), (3, 1.5), (4, -8.0 / 3.0)])
    def test_tonks_values(self, n, expected):
        assert cluster_coefficient_1d(rods(), 1.0, n) == pytest.approx(expected, abs=1e-6)

    @pytest.mark.parametrize("n", [2, 3])
    def test_matches_closed_form_for_other_lengths(self, n):
        sigma = 0.75
        exact = float(tonks_gas(Fraction(3, 4), n).b_series[n])
        assert cluster_coefficient_1d(rods(sigma), 2.0, n) == pytest.approx(exact, rel=1e-8)

    def test_square_well_b2_matches_mayer_integral(self):
        pot = RadialPotential(dim=1, core_radius=1.0, tail=SquareWell(epsilon=0.4, **{"lambda": 1.8}), B=1.0)
        expected = 0.5 * mayer_integral(pot, 1.3).value
        assert cluster_coefficient_1d(pot, 1.3, 2) == pytest.approx(expected, rel=1e-10)

    def test_square_well_b3_is_finite(self):
        pot = RadialPotential(dim=1, core_radius=1.0, tail=SquareWell(epsilon=0.4, **{"lambda": 1.8}), B=1.0)
        assert math.isfinite(cluster_coefficient_1d(pot, 1.0, 3))

    def test_needs_one_dimension(self):
        with pytest.raises(ConfigurationError):
            cluster_coefficient_1d(RadialPotential(dim=3, core_radius=1.0), 1.0, 2)

    def test_needs_step_potential(self):
        pot = RadialPotential(dim=1, core_radius=1.0, tail=InversePower(c=1.0, p=4.0))
        with pytest.raises(ConfigurationError):
            cluster_coefficient_1d(pot, 1.0, 2)

    @pytest.mark.parametrize("n", [0, MAX_CLUSTER_ORDER + 1])
    def test_order_range(self, n):
        with pytest.raises(ArgumentError):
            cluster_coefficient_1d(rods(), 1.0, n)

    def test_ideal_gas_has_no_clusters(self):
        assert cluster_coefficient_1d(RadialPotential(dim=1), 1.0, 3) == 0.0


class TestHardSphereOracle:
    def test_close_to_exact(self):
        estimate = hard_sphere_b3(1.0, seed=42, shards=4, samples=4096)
        assert estimate.value == pytest.approx(HARD_SPHERE_B3, rel=1e-2)
        assert 0.0 < estimate.stderr < 0.05 * HARD_SPHERE_B3
        assert estimate.samples == 4 * 4096
        assert estimate.seed == 42

    def test_scales_with_sigma_to_the_sixth(self):
        one = hard_sphere_b3(1.0, seed=3, shards=2, samples=1024)
        two = hard_sphere_b3(2.0, seed=3, shards=2, samples=1024)
        assert two.value == pytest.approx(64.0 * one.value, rel=1e-12)

    def test_deterministic_for_a_seed(self):
        first = hard_sphere_b3(1.0, seed=11, shards=3, samples=512)
        second = hard_sphere_b3(1.0, seed=11, shards=3, samples=512)
        assert first == second

    def test_workers_do_not_change_result(self):
        serial = hard_sphere_b3(1.0, seed=5, shards=4, samples=512, workers=1)
        threaded = hard_sphere_b3(1.0, seed=5, shards=4, samples=512, workers=4)
        assert serial == threaded

    def test_seed_changes_result(self):
        assert hard_sphere_b3(1.0, seed=1, shards=2, samples=256).value != hard_sphere_b3(
            1.0, seed=2, shards=2, samples=256
        ).value

    def test_defaults_from_settings(self, mocker):
        mocker.patch("src.verify.mayer.AppConfig", mocker.Mock(VIRIAL_SEED=9, MC_SHARDS=2, MC_SAMPLES=128))
        estimate = hard_sphere_b3(1.0)
        assert estimate.seed == 9
        assert estimate.samples == 256

    @pytest.mark.parametrize("kwargs", [{"sigma": 0.0}, {"sigma": 1.0, "shards": 1}])
    def test_rejects(self, kwargs):
        with pytest.raises(ArgumentError):
            hard_sphere_b3(**kwargs, samples=64)
