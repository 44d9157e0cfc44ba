import numpy as np
import pytest

from src.core.exceptions import ValidationException
from src.domain.entities.lip_map import linear
from src.domain.entities.metric_space import CircleSpace, EuclideanSpace, PointCloud
from src.domain.entities.signed_measure import FreeSpaceElement, SignedMeasure

PLANE = EuclideanSpace(2)
LINE = EuclideanSpace(1)


class TestNorms:

    def test_dirac_difference_is_the_distance(self, free_space):
        assert free_space.dirac_norm(PLANE, [0.0, 0.0], [3.0, 4.0]) == pytest.approx(5.0)
        m = FreeSpaceElement.of(PLANE, [[1.0, 1.0], [4.0, 5.0]], [1.0, -1.0], base_point=[9.0, 9.0])
        assert free_space.ae_norm(m) == pytest.approx(5.0, abs=1e-8)
        assert free_space.ae_norm(m, method="transport") == pytest.approx(5.0, abs=1e-8)

    def test_single_atom_is_the_distance_to_the_base(self, free_space):
        assert free_space.norm_of(PLANE, [[3.0, 4.0]], [-2.0]) == pytest.approx(10.0, abs=1e-8)

    def test_lp_and_transport_agree(self, free_space, rng):
        points = rng.normal(size=(7, 2))
        weights = rng.normal(size=7)
        m = FreeSpaceElement.of(PLANE, points, weights, base_point=rng.normal(size=2))
        assert free_space.ae_norm(m, "lp") == pytest.approx(free_space.ae_norm(m, "transport"), abs=1e-7)

    def test_circle_carrier(self, free_space):
        m = FreeSpaceElement.of(CircleSpace(), [[0.1], [2.0 * np.pi - 0.1]], [1.0, -1.0], base_point=[np.pi])
        assert free_space.ae_norm(m) == pytest.approx(0.2, abs=1e-8)

    def test_atoms_at_the_base_point_cost_nothing(self, free_space):
        m = FreeSpaceElement.of(LINE, [[0.0]], [4.0])
        assert free_space.ae_norm(m) == 0.0
        assert free_space.ae_norm(m, "transport") == 0.0

    def test_unknown_method(self, free_space):
        m = FreeSpaceElement.of(LINE, [[1.0]], [1.0])
        with pytest.raises(ValidationException) as exc:
            free_space.ae_norm(m, method="simplex")
        assert exc.value.details == {"known": ["lp", "transport"]}

    def test_unbalanced_transport_input(self, transport):
        with pytest.raises(ValidationException):
            transport.balanced_cost(SignedMeasure.from_atoms(LINE, [[0.0], [1.0]], [1.0, -0.5]))

    def test_inclusion_into_a_larger_cloud_is_isometric(self, free_space, rng):
        cloud = PointCloud(PLANE, rng.normal(size=(12, 2)))
        m = FreeSpaceElement.of(cloud, cloud.points[:4], [1.0, -2.0, 0.5, 1.5], base_point=cloud.points[11])
        small = free_space.ae_norm(m)
        assert free_space.ae_norm(m, over_carrier=True) == pytest.approx(small, abs=1e-7)

    def test_lp_instance_over_the_carrier(self, free_space):
        cloud = PointCloud(LINE, [[0.0], [1.0], [2.0], [3.0]])
        m = FreeSpaceElement.of(cloud, [[1.0]], [1.0])
        assert free_space.lp_instance(m).size == 1
        assert free_space.lp_instance(m, over_carrier=True).size == 3


class TestFourPointNorm:

    def test_matches_the_lp(self, free_space, rng):
        for _ in range(5):
            p1, p2, p3, p4 = rng.normal(size=(4, 2))
            m = FreeSpaceElement.of(PLANE, [p1, p2, p3, p4], [1.0, -1.0, -1.0, 1.0], base_point=[10.0, 10.0])
            expected = free_space.ae_norm(m)
            assert free_space.four_point_norm(PLANE, p1, p2, p3, p4)[0] == pytest.approx(expected, abs=1e-7)

    def test_coincident_points(self, free_space):
        value = free_space.four_point_norm(LINE, [0.0], [1.0], [1.0], [0.0])
        assert value[0] == pytest.approx(2.0)

    def test_batched(self, free_space, rng):
        batch = rng.normal(size=(4, 10, 2))
        values = free_space.four_point_norm(PLANE, *batch)
        assert values.shape == (10,)
        assert np.all(values >= 0.0)


class TestStructuralMaps:

    def test_pushforward_by_a_scaling(self, free_space):
        m = FreeSpaceElement.of(LINE, [[1.0], [3.0]], [1.0, -0.5])
        pushed = free_space.pushforward_dual(linear([[2.0]]), m)
        assert pushed.measure.points.tolist() == [[2.0], [6.0]]
        assert free_space.ae_norm(pushed) == pytest.approx(2.0 * free_space.ae_norm(m), abs=1e-8)

    def test_product_embedding_adds_norms(self, free_space):
        mu = FreeSpaceElement.of(LINE, [[1.0]], [1.0])
        nu = FreeSpaceElement.of(LINE, [[1.0]], [2.0])
        embedded = free_space.product_embed(mu, nu)
        assert embedded.measure.points.tolist() == [[0.0, 1.0], [1.0, 0.0]]
        assert free_space.ae_norm(embedded) == pytest.approx(3.0, abs=1e-8)

    def test_product_embedding_of_zero(self, free_space):
        zero = FreeSpaceElement(SignedMeasure.zero(LINE), [0.0])
        assert free_space.product_embed(zero, zero).measure.is_zero

    def test_rebase_is_isometric(self, free_space):
        m = FreeSpaceElement.of(PLANE, [[1.0, 2.0]], [1.0], base_point=[0.0, 0.0])
        rebased = free_space.rebase(m, [5.0, -1.0])
        assert rebased.measure.weights.tolist() == [-1.0, 1.0]
        assert free_space.ae_norm(rebased) == pytest.approx(free_space.ae_norm(m), abs=1e-8)

    def test_rebase_back_and_forth(self, free_space):
        m = FreeSpaceElement.of(PLANE, [[1.0, 2.0], [3.0, 0.0]], [1.0, 0.5], base_point=[0.0, 0.0])
        back = free_space.rebase(free_space.rebase(m, [5.0, -1.0]), [0.0, 0.0])
        assert back.equivalent(m)
