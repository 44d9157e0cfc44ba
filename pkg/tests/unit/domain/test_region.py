import numpy as np
import pytest

from src.domain.entities.region import (
    Ball,
    CloudComplementRegion,
    HalfSpace,
    ShrinkResult,
    SuperLevelRegion,
)


class TestRegions:

    def test_ball(self):
        ball = Ball([0.0, 0.0], 1.0)
        rho = ball.rho(np.array([[0.0, 0.0], [0.5, 0.0], [2.0, 0.0]]))
        assert rho.tolist() == pytest.approx([1.0, 0.5, 0.0])
        assert ball.contains(np.array([[1.0, 0.0]])).tolist() == [False]

    def test_half_space_uses_the_unit_normal(self):
        half = HalfSpace([2.0, 0.0], 2.0)
        rho = half.rho(np.array([[0.0, 5.0], [1.0, 0.0], [3.0, 0.0]]))
        assert rho.tolist() == pytest.approx([1.0, 0.0, 0.0])

    def test_super_level(self):
        region = SuperLevelRegion(Ball([0.0], 1.0), 0.25)
        assert region.rho(np.array([[0.0], [0.7]])).tolist() == pytest.approx([0.75, 0.05])
        assert region.describe()["base"]["kind"] == "ball"

    def test_cloud_complement(self):
        region = CloudComplementRegion([[0.0, 0.0], [2.0, 0.0]])
        rho = region.rho(np.array([[1.0, 0.0], [0.0, 0.0], [2.0, 1.0]]))
        assert rho.tolist() == pytest.approx([1.0, 0.0, 1.0])
        assert region.describe() == {"kind": "cloud-complement", "removed": [[0.0, 0.0], [2.0, 0.0]]}

    def test_shrink_margin(self):
        result = ShrinkResult(SuperLevelRegion(Ball([0.0], 1.0), 0.25), 0.5)
        assert result.margin == pytest.approx(0.25)
