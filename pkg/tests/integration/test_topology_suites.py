from math import sqrt

import pytest

from src.application.use_cases.run_c1_compare_suite import RunC1CompareSuiteUseCase
from src.application.use_cases.run_f_t_suite import RunFtSuiteUseCase
from src.application.use_cases.run_mt_metric_suite import RunMtMetricSuiteUseCase
from src.application.use_cases.run_snowflake_suite import RunSnowflakeSuiteUseCase


def _failed(outcome):
    return [v.check for v in outcome.verdicts if not v.passed]


class TestFtSuite:

    @pytest.fixture
    def use_case(self, topology):
        return RunFtSuiteUseCase(topology=topology)

    def test_default_run_passes(self, use_case):
        outcome = use_case.execute(t_values=[0.25, 0.125, 0.0625])
        assert outcome.passed, _failed(outcome)
        assert [row["family"] for row in outcome.rows] == ["f_t"] * 3 + ["sawtooth"] * 3

    def test_f_t_rows(self, use_case):
        outcome = use_case.execute(t_values=[0.25, 0.125, 0.0625])
        for row in outcome.rows[:3]:
            t = row["t"]
            assert row["uniform_dist"] == pytest.approx(sqrt(t))
            assert row["mt_lip"] >= (1.0 - 1e-9) / sqrt(t)
            assert row["bt_lip"] == pytest.approx(1.0 / sqrt(t))
        assert outcome.metadata["f_t_trends"]["co_convergent"]["converges"]
        assert not outcome.metadata["f_t_trends"]["mt_convergent"]["converges"]

    def test_sawtooth_rows_leave_bt_columns_empty(self, use_case):
        outcome = use_case.execute(t_values=[0.25, 0.125, 0.0625], sawtooth_n=[4, 8, 16])
        sawtooth = outcome.rows[3:]
        assert [int(row["t"]) for row in sawtooth] == [4, 8, 16]
        assert all(row["bt_total"] is None for row in sawtooth)

    def test_coarse_grid_fails_resolution_check(self, use_case):
        outcome = use_case.execute(t_values=[0.25, 0.125, 0.0625], samples=33)
        assert "grid resolves f_t at t=0.0625" in _failed(outcome)


class TestC1CompareSuite:

    @pytest.fixture
    def use_case(self, topology):
        return RunC1CompareSuiteUseCase(topology=topology)

    def test_small_run_passes(self, use_case):
        outcome = use_case.execute(t_values=[0.5, 0.25, 0.125], samples=256)
        assert outcome.passed, _failed(outcome)
        assert outcome.metadata["plan"]["kind"] == "consecutive"

    def test_smooth_family_tracks_c1(self, use_case):
        outcome = use_case.execute(t_values=[0.5, 0.25, 0.125], samples=256)
        smooth = [row for row in outcome.rows if row["family"] == "t_sin"]
        assert [row["c1_dist"] for row in smooth] == pytest.approx([1.0, 0.5, 0.25])
        assert all(0.0 < row["ratio"] <= 1.0 + 1e-12 for row in smooth)

    def test_oscillating_family_stays_away(self, use_case):
        outcome = use_case.execute(t_values=[0.5, 0.25, 0.125], samples=256)
        oscillating = [row for row in outcome.rows if row["family"] == "t_sin_over_t"]
        assert len(oscillating) == 3
        assert all(row["mt_total"] >= 0.5 for row in oscillating)


class TestMtMetricSuite:

    @pytest.fixture
    def use_case(self, free_space, topology, lipschitz):
        return RunMtMetricSuiteUseCase(free_space=free_space, topology=topology, lipschitz=lipschitz)

    def test_small_run_passes(self, use_case):
        outcome = use_case.execute(
            n_four_point=50,
            n_dirac=50,
            n_inclusion=5,
            n_map_pairs=5,
            n_norm_checks=5,
            map_samples=17,
        )
        assert outcome.passed, _failed(outcome)
        checks = {row["check"] for row in outcome.rows}
        assert "four-point kernel vs LP" in checks
        assert "MT triangle" in checks
        assert "BT lip part below MT" in checks
        product = next(row for row in outcome.rows if row["check"] == "product with a fixed factor")
        assert product["worst"] == 0.0
        assert outcome.metadata["product_varying_b_excess"] >= 0.0

    def test_rows_are_check_tables(self, use_case):
        outcome = use_case.execute(n_four_point=10, n_dirac=10, n_inclusion=2, n_map_pairs=2, n_norm_checks=2, map_samples=9)
        for row in outcome.rows:
            assert row["worst"] <= row["tolerance"]
            assert row["instances"] >= 1


class TestSnowflakeSuite:

    @pytest.fixture
    def use_case(self, lipschitz):
        return RunSnowflakeSuiteUseCase(lipschitz=lipschitz)

    def test_default_run_passes(self, use_case):
        outcome = use_case.execute()
        assert outcome.passed, _failed(outcome)
        assert [row["h"] for row in outcome.rows] == [1e-2, 1e-4]

    def test_estimates_follow_power_law(self, use_case):
        outcome = use_case.execute(alpha=0.5, meshes=[1e-2, 1e-3, 1e-4])
        for row in outcome.rows:
            assert row["predicted"] == pytest.approx(row["h"] ** -0.5)
            assert row["relative_error"] < 0.05
        scaling = outcome.metadata["scaling"]
        assert scaling["observed_ratio"] == pytest.approx(scaling["predicted_ratio"], rel=0.05)
