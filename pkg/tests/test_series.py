import math
import random
from fractions import Fraction

import pytest

from src.exceptions import ArgumentError, InversionError
from src.series import (
    PowerSeries,
    compose,
    constant,
    exp_series,
    identity,
    inverse_tree_series,
    lagrange_burmann,
    lagrange_invert,
    revert,
    tree_function_series,
)


def random_admissible(rng: random.Random, order: int) -> PowerSeries:
    coeffs = [Fraction(0), Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))]
    coeffs += [Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(order - 1)]
    return PowerSeries.from_coeffs(coeffs, order)


def random_unit_phi(rng: random.Random, order: int) -> PowerSeries:
    coeffs = [Fraction(rng.choice([-2, -1, 1, 2, 3]), rng.randint(1, 3))]
    coeffs += [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(order)]
    return PowerSeries.from_coeffs(coeffs, order)


class TestPowerSeries:
    def test_length_invariant(self):
        with pytest.raises(ArgumentError):
            PowerSeries((Fraction(0), Fraction(1)), 3)

    def test_from_coeffs_pads_to_order(self):
        s = PowerSeries.from_coeffs([0, 1], 4)
        assert s.coeffs == (0, 1, 0, 0, 0)
        assert s.order == 4
        assert s.exact

    def test_from_coeffs_truncates(self):
        assert PowerSeries.from_coeffs([1, 2, 3, 4], 1).coeffs == (1, 2)

    def test_float_promotes(self):
        s = PowerSeries.from_coeffs([0, 1, 0.5])
        assert not s.exact
        assert all(isinstance(c, float) for c in s.coeffs)

    def test_mixed_arithmetic_is_float(self):
        exact = PowerSeries.from_coeffs([1, Fraction(1, 3)])
        approx = PowerSeries.from_coeffs([1.0, 0.25])
        assert not (exact + approx).exact

    def test_order_of_sum_is_minimum(self):
        s = PowerSeries.from_coeffs([1, 1, 1], 2) + PowerSeries.from_coeffs([1, 1], 1)
        assert s.order == 1

    def test_getitem_beyond_order(self):
        with pytest.raises(ArgumentError):
            identity(3)[4]

    def test_reciprocal_of_exp(self):
        inverse = exp_series(8).reciprocal()
        expected = [Fraction((-1) ** n, math.factorial(n)) for n in range(9)]
        assert list(inverse.coeffs) == expected

    def test_reciprocal_needs_constant(self):
        with pytest.raises(ArgumentError):
            identity(3).reciprocal()

    def test_derivative_drops_order(self):
        d = exp_series(6).derivative()
        assert d.order == 5
        assert d.coeffs == exp_series(5).coeffs

    def test_power(self):
        s = PowerSeries.from_coeffs([1, 1], 3)
        assert (s**3).coeffs == (1, 3, 3, 1)

    def test_scalar_multiplication(self):
        assert (Fraction(1, 2) * identity(2)).coeffs == (0, Fraction(1, 2), 0)

    def test_constant(self):
        assert constant(3, 2).coeffs == (3, 0, 0)


class TestTreeFunction:
    def test_cayley_coefficients(self):
        f = tree_function_series(20)
        for n in range(1, 21):
            assert f[n] == Fraction(n ** (n - 1), math.factorial(n))

    def test_revert_inverse_tree_gives_tree(self):
        assert revert(inverse_tree_series(20), 20) == tree_function_series(20)

    def test_compose_with_inverse_is_identity(self):
        assert compose(tree_function_series(20), inverse_tree_series(20)) == identity(20)

    def test_inverse_tree_is_x_exp_minus_x(self):
        x_exp = identity(10) * PowerSeries.from_coeffs(
            [Fraction((-1) ** n, math.factorial(n)) for n in range(11)], 10
        )
        assert x_exp == inverse_tree_series(10)

    def test_order_zero_rejected(self):
        with pytest.raises(ArgumentError):
            tree_function_series(0)


class TestCompose:
    def test_hand_expansion(self):
        s = PowerSeries.from_coeffs([0, 1, 1], 4)
        assert compose(s, s).coeffs == (0, 1, 2, 2, 1)

    def test_identity_is_neutral(self):
        s = PowerSeries.from_coeffs([Fraction(2), 3, Fraction(-1, 7), 5], 3)
        assert compose(s, identity(3)) == s

    def test_order_is_minimum(self):
        assert compose(exp_series(6), identity(3)).order == 3

    def test_inner_constant_rejected(self):
        with pytest.raises(ArgumentError):
            compose(identity(3), PowerSeries.from_coeffs([1, 1], 3))

    def test_exp_of_log1p(self):
        log1p = PowerSeries.from_coeffs(
            [0] + [Fraction((-1) ** (n - 1), n) for n in range(1, 9)], 8
        )
        assert compose(exp_series(8), log1p).coeffs == (1, 1) + (0,) * 7


class TestRevert:
    def test_identity(self):
        assert revert(identity(5), 5) == identity(5)

    def test_linear_rescale(self):
        assert revert(PowerSeries.from_coeffs([0, 2]), 1).coeffs == (0, Fraction(1, 2))

    @pytest.mark.parametrize("seed", range(5))
    def test_round_trip_random(self, seed):
        rng = random.Random(seed)
        s = random_admissible(rng, 12)
        assert compose(s, revert(s, 12)) == identity(12)

    def test_float_round_trip(self):
        s = PowerSeries.from_coeffs([0.0, 1.5, -0.25, 0.125, 0.5], 4)
        back = compose(s, revert(s, 4))
        assert back.coeffs == pytest.approx([0.0, 1.0, 0.0, 0.0, 0.0], abs=1e-14)

    def test_needs_zero_constant(self):
        with pytest.raises(InversionError):
            revert(PowerSeries.from_coeffs([1, 1, 0], 2), 2)

    def test_needs_linear_term(self):
        with pytest.raises(InversionError):
            revert(PowerSeries.from_coeffs([0, 0, 1], 2), 2)

    def test_order_beyond_input(self):
        with pytest.raises(ArgumentError):
            revert(identity(3), 4)


class TestLagrange:
    @pytest.mark.parametrize("seed", range(4))
    def test_agrees_with_revert(self, seed):
        rng = random.Random(100 + seed)
        phi = random_unit_phi(rng, 10)
        y_of_s = identity(10) * phi.reciprocal()
        assert lagrange_invert(phi, 10) == revert(y_of_s, 10)

    def test_exp_phi_gives_tree_function(self):
        assert lagrange_invert(exp_series(15), 15) == tree_function_series(15)

    def test_burmann_with_identity_outer(self):
        phi = exp_series(8)
        assert lagrange_burmann(identity(9), phi, 8) == lagrange_invert(phi, 8)

    def test_burmann_of_square(self):
        phi = exp_series(8)
        s = lagrange_invert(phi, 8)
        square = PowerSeries.from_coeffs([0, 0, 1], 8)
        assert lagrange_burmann(square, phi, 8) == (s * s)

    def test_linear_phi(self):
        # s = y (1 + s) is y / (1 - y)
        phi = PowerSeries.from_coeffs([1, 1], 2)
        assert lagrange_invert(phi, 3).coeffs == (0, 1, 1, 1)

    def test_catalan(self):
        # s = y / (1 - s), i.e. s - s^2 = y, has Catalan coefficients
        phi = PowerSeries.from_coeffs([1, 1, 1, 1, 1, 1])
        assert lagrange_invert(phi, 6).coeffs == (0, 1, 1, 2, 5, 14, 42)

    def test_phi_zero_rejected(self):
        with pytest.raises(ArgumentError):
            lagrange_invert(identity(4), 3)

    def test_truncated_phi_rejected(self):
        with pytest.raises(ArgumentError):
            lagrange_invert(exp_series(2), 6)
