import numpy as np
import pytest

from src.core.exceptions import DegreeMismatchException, ValidationException
from src.domain.entities.current import (
    CurrentValue,
    GridSpec,
    LipSimplex,
    MassEstimate,
    MeasureChain,
    TestForm,
)
from src.domain.entities.lip_map import identity, linear
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.signed_measure import SignedMeasure

PLANE = EuclideanSpace(2)


def _coordinate(i):
    return lambda p: p[:, i]


class TestTestForm:

    def test_degree_and_values(self):
        form = TestForm("x dy", _coordinate(0), (_coordinate(1),), f_bound=1.0, f_lipschitz=1.0, pi_lipschitz=(1.0,))
        points = np.array([[2.0, 3.0]])
        assert form.k == 1
        assert form.f_values(points).tolist() == [2.0]
        assert form.pi_values(points).tolist() == [[3.0]]

    def test_constants_must_match_the_pis(self):
        with pytest.raises(ValidationException):
            TestForm("bad", _coordinate(0), (_coordinate(1),), pi_lipschitz=(1.0, 1.0))

    def test_promote_moves_f_into_the_pis(self):
        form = TestForm("x dy", _coordinate(0), (_coordinate(1),), f_lipschitz=2.0, pi_lipschitz=(3.0,))
        promoted = form.promote()
        points = np.array([[2.0, 3.0]])
        assert promoted.k == 2
        assert promoted.f_values(points).tolist() == [1.0]
        assert promoted.pi_values(points).tolist() == [[2.0, 3.0]]
        assert promoted.pi_lipschitz == (2.0, 3.0)

    def test_pullback_scales_constants(self):
        form = TestForm("x dy", _coordinate(0), (_coordinate(1),), f_lipschitz=1.0, pi_lipschitz=(1.0,))
        pulled = form.pullback(linear([[2.0, 0.0], [0.0, 2.0]]))
        assert pulled.f_values(np.array([[1.0, 1.0]])).tolist() == [2.0]
        assert pulled.f_lipschitz == pytest.approx(2.0)
        assert pulled.pi_lipschitz == pytest.approx((2.0,))

    def test_swapped_and_combined(self):
        form = TestForm("dx dy", lambda p: np.ones(len(p)), (_coordinate(0), _coordinate(1)), pi_lipschitz=(1.0, 2.0))
        swapped = form.swapped(0, 1)
        assert swapped.pi_values(np.array([[1.0, 5.0]])).tolist() == [[5.0, 1.0]]
        assert swapped.pi_lipschitz == (2.0, 1.0)
        combined = form.combine(form, 2.0, -1.0)
        assert combined.f_values(np.array([[0.0, 0.0]])).tolist() == [1.0]
        assert combined.f_bound == pytest.approx(3.0)


class TestLipSimplex:

    def test_affine_simplex_evaluation(self):
        simplex = LipSimplex.affine([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
        assert simplex.k == 2
        assert simplex(np.array([[0.5, 0.5]])).tolist() == [[1.0, 1.0]]

    def test_faces_drop_one_vertex(self):
        simplex = LipSimplex.affine([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        face = simplex.face(0)
        assert face.k == 1
        assert face.vertices.tolist() == [[1.0, 0.0], [0.0, 1.0]]

    def test_equal_vertex_lists_share_a_key(self):
        base = identity(PLANE)
        a = LipSimplex(base, [[0.0, 0.0], [1.0, 0.0]])
        b = LipSimplex(base, np.array([[0.0, 0.0], [1.0, 0.0]]))
        assert a.key == b.key
        assert a.key != a.face(0).key

    def test_standard_simplex(self):
        simplex = LipSimplex.standard(identity(EuclideanSpace(2)))
        assert simplex.vertices.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]

    def test_point_simplex(self):
        point = LipSimplex(identity(PLANE), [[3.0, 4.0]])
        assert point.k == 0
        assert point(np.zeros((1, 0))).tolist() == [[3.0, 4.0]]

    def test_pushed(self):
        simplex = LipSimplex.affine([[0.0], [1.0]])
        pushed = simplex.pushed(linear([[3.0]]))
        assert pushed(np.array([[0.5]])).tolist() == [[1.5]]

    def test_as_lip_map_samples_the_lattice(self):
        simplex = LipSimplex.affine([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        as_map = simplex.as_lip_map(4)
        assert len(as_map.samples()) == 15


class TestMeasureChain:

    def test_equal_simplices_merge(self):
        a = LipSimplex.affine([[0.0], [1.0]])
        b = LipSimplex.affine([[0.0], [1.0]])
        chain = MeasureChain.from_atoms(1, [(a, 1.0), (b, 2.0)])
        assert len(chain) == 1
        assert chain.weights.tolist() == [3.0]

    def test_pushed_copies_merge(self):
        phi = linear([[2.0]])
        a = LipSimplex.affine([[0.0], [1.0]])
        chain = MeasureChain.from_atoms(1, [(a.pushed(phi), 1.0), (a.pushed(phi), -1.0)])
        assert chain.is_zero

    def test_distinct_maps_sharing_a_name_are_rejected(self):
        a = LipSimplex(linear([[2.0]], name="scale"), [[0.0], [1.0]])
        b = LipSimplex(linear([[3.0]], name="scale"), [[0.0], [1.0]])
        assert a.key == b.key
        assert not a.agrees_with(b)
        with pytest.raises(ValidationException) as exc:
            MeasureChain.from_atoms(1, [(a, 1.0), (b, -1.0)])
        assert exc.value.details == {"name": "scale"}

    def test_cancellation(self):
        a = LipSimplex.affine([[0.0], [1.0]])
        chain = MeasureChain.single(a) - MeasureChain.single(a)
        assert chain.is_zero

    def test_degree_is_checked(self):
        a = LipSimplex.affine([[0.0], [1.0]])
        with pytest.raises(DegreeMismatchException) as exc:
            MeasureChain.from_atoms(2, [(a, 1.0)])
        assert exc.value.details == {"expected": 2, "actual": 1}
        with pytest.raises(DegreeMismatchException):
            MeasureChain.single(a) + MeasureChain.zero(0)

    def test_zero_chain_reads_as_a_measure(self):
        measure = SignedMeasure.from_atoms(PLANE, [[0.0, 1.0], [1.0, 0.0]], [2.0, -1.0])
        chain = MeasureChain.from_measure(measure)
        assert chain.k == 0
        assert chain.total_variation == pytest.approx(3.0)
        assert chain.to_measure().same_atoms(measure)

    def test_empty_chain_needs_a_carrier(self):
        with pytest.raises(ValidationException):
            MeasureChain.zero(0).to_measure()
        assert MeasureChain.zero(0).to_measure(PLANE).is_zero

    def test_positive_degree_is_not_a_measure(self):
        a = LipSimplex.affine([[0.0], [1.0]])
        with pytest.raises(DegreeMismatchException):
            MeasureChain.single(a).to_measure()

    def test_scaling(self):
        a = LipSimplex.affine([[0.0], [1.0]])
        chain = 2.0 * MeasureChain.single(a, 1.5)
        assert chain.weights.tolist() == [3.0]
        assert chain.same_atoms(MeasureChain.single(a, 3.0))


class TestGridAndMass:

    def test_grid_parameter_is_positive(self):
        with pytest.raises(ValidationException):
            GridSpec(0)
        assert GridSpec(4).mesh == pytest.approx(0.25)
        assert GridSpec(4, refine=False).refined() == GridSpec(8, refine=False)

    def test_current_values_add(self):
        grid = GridSpec(2)
        total = CurrentValue(1.0, 0.1, grid) + CurrentValue(2.0, 0.2, grid)
        assert total.value == pytest.approx(3.0)
        assert total.error_estimate == pytest.approx(0.3)
        assert (CurrentValue(1.0, None, grid) + CurrentValue(1.0, 0.1, grid)).error_estimate is None

    def test_mass_estimate_weights_are_nonnegative(self):
        with pytest.raises(ValidationException):
            MassEstimate(SignedMeasure.from_atoms(PLANE, [[0.0, 0.0]], [-1.0]), 1.0)

    def test_mass_bound(self):
        estimate = MassEstimate(SignedMeasure.from_atoms(PLANE, [[1.0, 0.0], [3.0, 0.0]], [0.5, 0.25]), 2.0)
        assert estimate.bound(lambda p: -p[:, 0]) == pytest.approx(2.0 * (0.5 + 0.75))
