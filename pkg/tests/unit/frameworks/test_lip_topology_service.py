from math import sqrt

import numpy as np
import pytest

from src.core.exceptions import ValidationException
from src.domain.entities.lip_map import identity
from src.domain.entities.metric_space import ProductSpace
from src.infrastructure.frameworks.families import (
    REAL_LINE,
    circle_grid,
    circle_zero,
    f_t,
    f_zero,
    piecewise_linear,
    sawtooth,
    t_sin,
    t_sin_over_t,
)
from src.infrastructure.frameworks.lip_topology_service import three_point_trend


class TestThreePointTrend:

    def test_geometric_tail_converges(self):
        verdict = three_point_trend([4.0, 1.0, 0.5, 0.25])
        assert verdict.converges
        assert verdict.tail == (1.0, 0.5, 0.25)
        assert verdict.extrapolated_limit == pytest.approx(0.0, abs=1e-12)

    def test_tail_stalling_away_from_zero(self):
        verdict = three_point_trend([1.0, 0.9, 0.85])
        assert not verdict.converges
        assert verdict.extrapolated_limit == pytest.approx(0.8)

    def test_growing_tail(self):
        verdict = three_point_trend([0.1, 0.2, 0.3])
        assert not verdict.converges
        assert verdict.extrapolated_limit is None

    def test_tail_already_at_zero(self):
        assert three_point_trend([1.0, 1e-13, 0.0]).converges

    def test_needs_three_values(self):
        with pytest.raises(ValidationException):
            three_point_trend([1.0, 0.5])


class TestDistances:

    def test_uniform_distance(self, topology):
        value, index = topology.uniform_distance(f_t(0.25), f_zero())
        assert value == pytest.approx(0.5)
        assert f_t(0.25).samples()[index, 0] >= 0.5

    def test_bt_distance(self, topology):
        report = topology.bt_distance(f_t(0.25), f_zero())
        assert report.sup_part == pytest.approx(0.5)
        assert report.lip_part == pytest.approx(2.0)
        assert report.total == pytest.approx(2.5)

    def test_mt_distance_sees_the_slope(self, topology):
        report = topology.mt_distance(f_t(0.25), f_zero())
        assert report.sup_part == pytest.approx(0.5)
        assert report.lip_part == pytest.approx(2.0)
        assert report.lip_part >= 2.0 - 1e-9

    def test_sawtooth_goes_to_zero_uniformly_only(self, topology):
        report = topology.mt_distance(sawtooth(8), f_zero())
        assert report.sup_part == pytest.approx(1.0 / 16.0)
        assert report.lip_part == pytest.approx(1.0)

    def test_mt_of_identical_maps(self, topology):
        f = piecewise_linear([0.0, 1.0, -1.0])
        report = topology.mt_distance(f, f)
        assert report.total == 0.0

    def test_product_with_a_fixed_factor(self, topology):
        f, g, h = f_t(0.25), f_zero(), piecewise_linear([0.0, 1.0, -1.0])
        points = f.samples()
        on_slice = ProductSpace(f.domain, h.domain).join(points, [[0.3]])
        lifted = topology.mt_distance(f.times(h), g.times(h), on_slice)
        plain = topology.mt_distance(f, g, points)
        assert lifted.sup_part == plain.sup_part
        assert lifted.lip_part == plain.lip_part

    def test_samples_are_required(self, topology):
        with pytest.raises(ValidationException):
            topology.uniform_distance(identity(REAL_LINE), identity(REAL_LINE))


class TestConvergenceDiagnostic:

    def test_f_t_converges_uniformly_but_not_in_mt(self, topology):
        rows, verdicts = topology.convergence_diagnostic(f_t, f_zero(), [0.5, 0.25, 0.125, 0.0625])
        assert [row["t"] for row in rows] == [0.5, 0.25, 0.125, 0.0625]
        for row in rows:
            assert row["uniform_dist"] == pytest.approx(sqrt(row["t"]))
            assert row["mt_lip"] == pytest.approx(1.0 / sqrt(row["t"]))
            assert row["mt_total"] == pytest.approx(row["mt_sup"] + row["mt_lip"])
        assert verdicts["co_convergent"].converges
        assert not verdicts["mt_convergent"].converges


class TestC1:

    def test_c1_distance(self, topology):
        samples = circle_grid(256)
        assert topology.c1_distance(t_sin(0.25), circle_zero(), samples) == pytest.approx(0.5)
        assert topology.c1_distance(t_sin_over_t(0.25), circle_zero(), samples) == pytest.approx(1.25)

    def test_c1_needs_derivatives(self, topology):
        with pytest.raises(ValidationException):
            topology.c1_distance(f_t(0.25), f_zero(), np.zeros((3, 1)))

    def test_mt_is_comparable_to_c1(self, topology):
        rows = topology.c1_comparison(t_sin, circle_zero(), [0.5, 0.25, 0.125], samples=circle_grid(256))
        for row in rows:
            assert row["c1_dist"] == pytest.approx(2.0 * row["t"])
            assert row["ratio"] == pytest.approx(1.0, rel=1e-3)


class TestStructure:

    def test_linear_postcomposition(self, topology):
        f = piecewise_linear([0.0, 1.0, 0.5])
        g = piecewise_linear([0.5, 0.0, 0.0])
        composed, scaled = topology.linear_postcomposition(np.array([[3.0]]), f, g)
        assert composed == pytest.approx(scaled)

    def test_addition_diagnostic(self, topology):
        f1, g1 = piecewise_linear([0.0, 1.0]), piecewise_linear([1.0, 0.0])
        f2, g2 = piecewise_linear([0.0, 0.5]), piecewise_linear([0.5, 0.0])
        result = topology.addition_diagnostic(f1, g1, f2, g2)
        assert set(result) == {"mt_sum", "bt_terms", "ratio"}
        assert result["ratio"] == pytest.approx(result["mt_sum"] / result["bt_terms"])

    def test_bilipschitz_comparison_with_an_isometry(self, topology):
        f, g = piecewise_linear([0.0, 1.0, 0.0]), piecewise_linear([0.2, 0.2, 0.9])
        result = topology.bilipschitz_comparison(identity(REAL_LINE), 1.0, 1.0, f, g)
        assert result["upper_holds"] and result["lower_holds"]
        assert result["bt"].sup_part == pytest.approx(result["mt"].sup_part)
