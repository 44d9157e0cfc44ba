from math import factorial

import numpy as np
import pytest

from src.core.exceptions import DegenerateStepException, DegreeMismatchException, ValidationException
from src.domain.entities.current import GridSpec, LipSimplex, TestForm
from src.domain.entities.lip_map import identity
from src.domain.entities.metric_space import EuclideanSpace
from src.infrastructure.frameworks.forms import coordinate_form, volume_form
from src.infrastructure.frameworks.quadrature_service import QuadratureService, determinant


class TestDeterminant:

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_numpy(self, k, rng):
        batch = rng.normal(size=(20, k, k))
        assert np.allclose(determinant(batch), np.linalg.det(batch))

    def test_empty_matrix(self):
        assert determinant(np.zeros((3, 0, 0))).tolist() == [1.0, 1.0, 1.0]


class TestIntegrate:

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_standard_simplex_volume(self, quadrature, k):
        simplex = LipSimplex.standard(identity(EuclideanSpace(k)))
        value = quadrature.integrate(simplex, volume_form(k), GridSpec(4))
        assert value.value == pytest.approx(1.0 / factorial(k), abs=1e-10)
        assert value.error_estimate == pytest.approx(0.0, abs=1e-10)

    def test_scaled_triangle(self, quadrature):
        simplex = LipSimplex.affine([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]])
        assert quadrature.integrate(simplex, volume_form(2), GridSpec(3)).value == pytest.approx(2.0, abs=1e-10)

    def test_orientation_flips_the_sign(self, quadrature):
        simplex = LipSimplex.affine([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]])
        assert quadrature.integrate(simplex, volume_form(2), GridSpec(3)).value == pytest.approx(-0.5, abs=1e-10)

    def test_linear_integrand_is_exact(self, quadrature):
        simplex = LipSimplex.standard(identity(EuclideanSpace(2)))
        form = coordinate_form([0, 1], f=lambda p: p[:, 0], f_lipschitz=1.0)
        assert quadrature.integrate(simplex, form, GridSpec(5)).value == pytest.approx(1.0 / 6.0, abs=1e-10)

    def test_quadratic_integrand_converges(self, quadrature):
        simplex = LipSimplex.standard(identity(EuclideanSpace(2)))
        form = coordinate_form([0, 1], f=lambda p: p[:, 0] ** 2, f_lipschitz=2.0)
        value = quadrature.integrate(simplex, form, GridSpec(32))
        assert value.value == pytest.approx(1.0 / 12.0, abs=1e-3)
        assert 0.0 < value.error_estimate < 1e-3

    def test_unrefined_grid_has_no_error_estimate(self, quadrature):
        simplex = LipSimplex.standard(identity(EuclideanSpace(1)))
        assert quadrature.integrate(simplex, volume_form(1), GridSpec(2, refine=False)).error_estimate is None

    def test_point_evaluation(self, quadrature):
        point = LipSimplex(identity(EuclideanSpace(2)), [[2.0, 3.0]])
        form = TestForm("x", lambda p: p[:, 0])
        value = quadrature.integrate(point, form, GridSpec(8))
        assert value.value == 2.0
        assert value.error_estimate == 0.0

    def test_degree_mismatch(self, quadrature):
        simplex = LipSimplex.standard(identity(EuclideanSpace(2)))
        with pytest.raises(DegreeMismatchException):
            quadrature.integrate(simplex, volume_form(1), GridSpec(2))

    def test_reductions_agree(self, quadrature):
        fsum_quadrature = QuadratureService(chunk_size=7, reduction="fsum")
        simplex = LipSimplex.affine([[0.0, 0.0], [1.0, 0.5], [0.2, 1.0]])
        form = coordinate_form([0, 1], f=lambda p: np.sin(p[:, 0]) + p[:, 1], f_lipschitz=2.0)
        first = quadrature.integrate_at(simplex, form, 8)
        second = fsum_quadrature.integrate_at(simplex, form, 8)
        assert first == pytest.approx(second, abs=1e-14)


class TestConfiguration:

    def test_unknown_reduction(self):
        with pytest.raises(ValidationException):
            QuadratureService(reduction="kahan")

    def test_degenerate_step(self):
        quadrature = QuadratureService(step_floor=0.1)
        simplex = LipSimplex.standard(identity(EuclideanSpace(1)))
        with pytest.raises(DegenerateStepException) as exc:
            quadrature.integrate_at(simplex, volume_form(1), 10)
        assert exc.value.details == {"step": 0.05, "floor": 0.1}


class TestImageMeasure:

    def test_weights_sum_to_the_volume(self, quadrature):
        simplex = LipSimplex.standard(identity(EuclideanSpace(3)))
        nodes, weights = quadrature.image_measure(simplex, 4)
        assert nodes.shape == (64, 3)
        assert weights.sum() == pytest.approx(1.0 / 6.0)
