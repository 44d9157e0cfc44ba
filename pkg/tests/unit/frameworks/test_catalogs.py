from math import sqrt

import numpy as np
import pytest

from src.core.exceptions import NotFoundException, ValidationException
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.simplex_domain import SimplexDomain
from src.infrastructure.frameworks.families import (
    FAMILIES,
    cone_homotopy,
    get_family,
    piecewise_linear,
    projection_homotopy,
    sawtooth,
    smooth_perturbation,
    t_sin_over_t,
    u_eps,
    u_zero,
    v_eps,
)
from src.infrastructure.frameworks.forms import (
    FORMS,
    bump_form,
    constant_pi_form,
    get_form,
    volume_form,
)


class TestFamilies:

    def test_lookup(self):
        assert get_family("f_t") is FAMILIES["f_t"]
        with pytest.raises(NotFoundException) as exc:
            get_family("spiral")
        assert "f_t" in exc.value.details["known"]

    @pytest.mark.parametrize("t", [0.0, 0.75, -0.1])
    def test_f_t_parameter_range(self, t):
        with pytest.raises(ValidationException):
            get_family("f_t")(t)

    def test_t_sin_over_t_needs_an_integer_period(self):
        with pytest.raises(ValidationException):
            t_sin_over_t(0.3)
        assert t_sin_over_t(0.25)([[np.pi / 8.0]])[0, 0] == pytest.approx(0.25)

    def test_u_eps_dimension(self):
        with pytest.raises(ValidationException):
            u_eps(0.1, k=1)

    @pytest.mark.parametrize("eps", [0.1, 0.01])
    def test_u_eps_is_uniformly_close_to_u_zero(self, eps):
        points = SimplexDomain(2).lattice(40)
        gap = np.linalg.norm(u_eps(eps)(points) - u_zero()(points), axis=1).max()
        assert gap <= sqrt(2.0 * eps) + 1e-12

    def test_smooth_perturbation(self):
        points = SimplexDomain(3).lattice(8)
        assert np.array_equal(smooth_perturbation(0.0, k=3)(points), points)
        moved = smooth_perturbation(0.1, k=3)(points)
        assert np.abs(moved - points).max() <= 0.1 * sqrt(2.0) * np.sin(1.0) + 1e-12
        assert np.array_equal(moved[:, 2], points[:, 2])
        with pytest.raises(ValidationException):
            smooth_perturbation(0.1, k=1)

    def test_v_eps_shape(self):
        assert v_eps(0.5)(SimplexDomain(2).lattice(4)).shape == (15, 2)

    def test_sawtooth(self):
        f = sawtooth(4)
        assert np.abs(f(f.samples())).max() == pytest.approx(1.0 / 8.0)

    def test_piecewise_linear_constant(self):
        f = piecewise_linear([0.0, 2.0, 1.0])
        assert f.lipschitz == pytest.approx(4.0)
        assert f([[0.25]])[0, 0] == pytest.approx(1.0)

    def test_homotopies(self):
        cone = cone_homotopy(2)
        assert cone([[1.0, 2.0, 0.0]]).tolist() == [[1.0, 2.0]]
        assert cone([[1.0, 2.0, 1.0]]).tolist() == [[0.0, 0.0]]
        assert projection_homotopy(2)([[1.0, 2.0, 0.7]]).tolist() == [[1.0, 2.0]]


class TestForms:

    def test_volume_form(self):
        form = volume_form(3, f_value=2.0)
        assert form.k == 3
        assert form.f_bound == 2.0
        assert form.pi_lipschitz == (1.0, 1.0, 1.0)

    def test_lookup(self):
        assert get_form("volume", dim=2).k == 2
        assert set(FORMS) == {"volume", "coordinate", "constant_pi"}
        with pytest.raises(NotFoundException):
            get_form("harmonic")

    def test_constant_pi_form(self):
        form = constant_pi_form(3, 3, index=1)
        values = form.pi_values(np.array([[0.1, 0.2, 0.3]]))
        assert values.tolist() == [[0.1, 0.3, 0.3]]
        assert form.pi_lipschitz == (1.0, 0.0, 1.0)
        with pytest.raises(ValidationException):
            constant_pi_form(3, 2, index=2)

    def test_bump_form(self):
        form = bump_form(EuclideanSpace(2), [1.0, 1.0], 0.5)
        values = form.f_values(np.array([[1.0, 1.0], [1.25, 1.0], [3.0, 3.0]]))
        assert values.tolist() == pytest.approx([1.0, 0.5, 0.0])
        assert form.k == 0
        assert form.f_lipschitz == pytest.approx(2.0)
