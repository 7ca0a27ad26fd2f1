import math

import pytest

from src.bounds import mp_F
from src.bounds.optimize import INV_PHI, Maximum, golden_section_maximize
from src.exceptions import ArgumentError


class TestGoldenSection:
    def test_parabola(self):
        best = golden_section_maximize(lambda x: -((x - 0.3) ** 2), 0.0, 1.0)
        assert best.x == pytest.approx(0.3, abs=1e-8)
        assert best.value == pytest.approx(0.0, abs=1e-16)

    def test_skewed_objective(self):
        # x e^-x peaks at x = 1
        best = golden_section_maximize(lambda x: x * math.exp(-x), 1e-9, 20.0)
        assert best.x == pytest.approx(1.0, abs=1e-9)
        assert best.value == pytest.approx(1.0 / math.e, rel=1e-15)

    def test_polish_beats_value_resolution(self):
        # flat cosine top: value comparisons alone stall near 1e-8 in x
        best = golden_section_maximize(lambda x: math.cos(x - 0.7), 0.0, 3.0)
        assert best.x == pytest.approx(0.7, abs=1e-9)

    def test_kink_is_not_pushed_away(self):
        best = golden_section_maximize(lambda x: -abs(x - 1.0), 0.0, 4.0)
        assert best.x == pytest.approx(1.0, abs=1e-9)

    def test_monotone_objective_ends_at_edge(self):
        best = golden_section_maximize(lambda x: x, 0.0, 2.0)
        assert best.x == pytest.approx(2.0, rel=1e-10)

    def test_counts_iterations(self):
        best = golden_section_maximize(lambda x: -abs(x - 1.0), 0.0, 4.0, rel_tol=1e-6)
        assert 0 < best.iterations < 100

    def test_empty_interval(self):
        with pytest.raises(ArgumentError):
            golden_section_maximize(lambda x: x, 1.0, 1.0)

    def test_ratio_constant(self):
        assert INV_PHI == pytest.approx(1.0 / ((1.0 + math.sqrt(5.0)) / 2.0), rel=1e-15)


class TestBracketExpansion:
    def test_gives_up_after_expansions(self, mocker):
        edge = mocker.patch(
            "src.bounds.golden_section_maximize",
            side_effect=lambda f, lo, hi: Maximum(hi, 0.0, 0),
        )
        with pytest.raises(ArgumentError, match="no interior maximum"):
            mp_F(2.0)
        assert edge.call_count == 4
        uppers = [call.args[2] for call in edge.call_args_list]
        assert uppers == [50.0, 100.0, 200.0, 400.0]

    def test_recovers_after_one_expansion(self, mocker):
        calls = []

        def fake(f, lo, hi):
            calls.append(hi)
            if len(calls) == 1:
                return Maximum(hi, 0.0, 0)
            return Maximum(0.5, f(0.5), 0)

        mocker.patch("src.bounds.golden_section_maximize", side_effect=fake)
        optimum = mp_F(1.0)
        assert calls == [50.0, 100.0]
        assert optimum.alpha_star == 0.5
