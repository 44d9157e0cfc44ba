import numpy as np
import pytest

from src.core.exceptions import (
    DegreeMismatchException,
    DegreeNotZeroException,
    DegreeZeroException,
    ValidationException,
)
from src.domain.entities.current import GridSpec, LipSimplex, MeasureChain, TestForm
from src.domain.entities.lip_map import linear
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.signed_measure import SignedMeasure
from src.infrastructure.frameworks.families import smooth_perturbation, u_eps, u_zero, v_eps
from src.infrastructure.frameworks.forms import random_affine_form, volume_form

PLANE = EuclideanSpace(2)


def _triangle(rng):
    return LipSimplex.affine(rng.normal(size=(3, 2)))


class TestChainOperators:

    def test_boundary_of_a_triangle(self, currents):
        triangle = LipSimplex.affine([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        boundary = currents.boundary_chain(MeasureChain.single(triangle))
        assert boundary.k == 1
        assert len(boundary) == 3
        assert sorted(boundary.weights.tolist()) == [-1.0, 1.0, 1.0]

    def test_boundary_of_a_boundary_vanishes(self, currents, rng):
        chain = MeasureChain.from_atoms(2, [(_triangle(rng), 1.5), (_triangle(rng), -0.5)])
        assert currents.boundary_chain(currents.boundary_chain(chain)).is_zero

    def test_no_boundary_in_degree_zero(self, currents):
        point = MeasureChain.from_measure(SignedMeasure.dirac(PLANE, [0.0, 0.0]))
        with pytest.raises(DegreeZeroException):
            currents.boundary_chain(point)

    def test_augmentation(self, currents, rng):
        measure = SignedMeasure.from_atoms(PLANE, rng.normal(size=(4, 2)), [1.0, 2.0, -0.5, 0.25])
        assert currents.augmentation(MeasureChain.from_measure(measure)) == pytest.approx(2.75)
        edge = MeasureChain.single(LipSimplex.affine([[0.0, 0.0], [1.0, 1.0]]))
        assert currents.augmentation(currents.boundary_chain(edge)) == 0.0
        with pytest.raises(DegreeNotZeroException):
            currents.augmentation(edge)

    def test_pushforward_keeps_weights(self, currents, rng):
        chain = MeasureChain.single(_triangle(rng), 2.0)
        pushed = currents.pushforward_chain(linear([[1.0, 1.0], [0.0, 1.0]]), chain)
        assert pushed.weights.tolist() == [2.0]
        assert pushed.simplices[0].base.name.startswith("lin[")


class TestEvaluation:

    def test_chain_is_linear_in_weights(self, currents, rng):
        a, b = _triangle(rng), _triangle(rng)
        form = volume_form(2)
        grid = GridSpec(2)
        chain = MeasureChain.from_atoms(2, [(a, 2.0), (b, -1.0)])
        expected = 2.0 * currents.evaluate_simplex(a, form, grid).value - currents.evaluate_simplex(b, form, grid).value
        assert currents.evaluate_chain(chain, form, grid).value == pytest.approx(expected)

    def test_zero_chain(self, currents):
        value = currents.evaluate_chain(MeasureChain.zero(2), volume_form(2), GridSpec(2))
        assert value.value == 0.0

    def test_degree_mismatch(self, currents, rng):
        with pytest.raises(DegreeMismatchException):
            currents.evaluate_chain(MeasureChain.single(_triangle(rng)), volume_form(1), GridSpec(2))


class TestIdentities:

    def test_stokes_on_affine_triangles(self, currents, rng):
        for _ in range(3):
            chain = MeasureChain.single(_triangle(rng))
            form = random_affine_form(rng, dim=2, degree=1)
            check = currents.boundary_identity(chain, form, GridSpec(4))
            assert check.gap <= 1e-8 * max(1.0, abs(check.lhs))

    def test_stokes_needs_the_lower_degree(self, currents, rng):
        with pytest.raises(DegreeMismatchException):
            currents.boundary_identity(MeasureChain.single(_triangle(rng)), volume_form(2), GridSpec(2))

    def test_naturality(self, currents, rng):
        chain = MeasureChain.single(_triangle(rng))
        phi = linear(rng.normal(size=(2, 2)))
        form = random_affine_form(rng, dim=2, degree=2)
        check = currents.naturality_check(phi, chain, form, GridSpec(3))
        assert check.gap <= 1e-9 * max(1.0, abs(check.lhs))


class TestMass:

    def test_mass_bound_holds_for_a_scaled_triangle(self, currents):
        chain = MeasureChain.single(LipSimplex.affine([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]))
        check = currents.mass_bound_check(chain, volume_form(2), GridSpec(4), lattice_m=8)
        assert check.lhs_abs == pytest.approx(2.0, abs=1e-9)
        assert check.lipschitz_bound == pytest.approx(1.1 * 2.0, rel=1e-6)
        assert check.holds

    def test_simplex_lipschitz_of_an_affine_map(self, currents):
        simplex = LipSimplex.affine([[0.0, 0.0], [3.0, 0.0], [0.0, 1.0]])
        assert currents.simplex_lipschitz(simplex, 8) == pytest.approx(3.0, rel=1e-9)

    def test_mass_estimate_needs_pi_constants(self, currents, rng):
        form = TestForm("bare", lambda p: np.ones(len(p)), (lambda p: p[:, 0], lambda p: p[:, 1]))
        with pytest.raises(ValidationException):
            currents.mass_estimate(MeasureChain.single(_triangle(rng)), form, GridSpec(2), 1.0)


class TestDegreeZero:

    def test_weight_recovery(self, currents):
        measure = SignedMeasure.from_atoms(PLANE, [[0.0, 0.0], [1.0, 0.0], [0.0, 2.0]], [1.0, -2.0, 0.5])
        recovered = currents.weight_recovery(MeasureChain.from_measure(measure))
        assert recovered == pytest.approx(measure.weights)

    def test_single_atom(self, currents):
        measure = SignedMeasure.dirac(PLANE, [3.0, 3.0], 4.0)
        assert currents.weight_recovery(MeasureChain.from_measure(measure)).tolist() == [4.0]


class TestDiagnostics:

    def test_non_integrability_rows(self, currents):
        rows = currents.non_integrability_diagnostic(
            lambda eps: LipSimplex.standard(v_eps(eps)),
            volume_form(2),
            [0.5],
            grid_for=lambda eps: GridSpec(8, refine=False),
        )
        assert rows[0]["eps"] == 0.5
        assert rows[0]["eps_times_value"] == pytest.approx(0.5 * rows[0]["value"])

    @pytest.mark.parametrize("eps", [0.0, 1.5])
    def test_epsilon_range(self, currents, eps):
        with pytest.raises(ValidationException):
            currents.non_integrability_diagnostic(
                lambda e: LipSimplex.standard(v_eps(e)), volume_form(2), [eps], grid_for=lambda e: GridSpec(2)
            )

    def test_smooth_perturbation_converges(self, currents):
        rows = currents.continuity_diagnostic(
            family=lambda t: LipSimplex.standard(smooth_perturbation(t)),
            limit=LipSimplex.standard(smooth_perturbation(0.0)),
            form=volume_form(2),
            params=[0.02, 0.01, 0.005],
            grid_for=lambda t: GridSpec(16, refine=False),
            lattice_m=16,
        )
        for row in rows:
            # det = 1 − t² cos x1 cos x2
            assert abs(row["value"] - 0.5) <= row["t"] ** 2
            assert row["mt_total"] <= row["t"] * np.sqrt(2.0) * np.sin(1.0) * (1 + 2 * 16)
        assert rows[1]["mt_total"] / rows[0]["mt_total"] == pytest.approx(0.5, rel=1e-6)
        assert rows[2]["mt_total"] / rows[1]["mt_total"] == pytest.approx(0.5, rel=1e-6)
        assert rows[2]["uniform_dist"] < rows[0]["uniform_dist"]

    def test_affine_homotopy_converges(self, currents):
        vertices = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        rows = currents.continuity_diagnostic(
            family=lambda t: LipSimplex.affine((1.0 + t) * vertices),
            limit=LipSimplex.affine(vertices),
            form=volume_form(2),
            params=[0.02, 0.01],
            grid_for=lambda t: GridSpec(4, refine=False),
            lattice_m=16,
        )
        for row in rows:
            assert row["value"] == pytest.approx((1.0 + row["t"]) ** 2 / 2.0, rel=1e-9)
            assert row["mt_sup"] == pytest.approx(row["t"], rel=1e-9)
        assert rows[1]["mt_total"] == pytest.approx(0.5 * rows[0]["mt_total"], rel=1e-6)

    def test_u_eps_stays_away_in_mt(self, currents):
        rows = currents.continuity_diagnostic(
            family=lambda eps: LipSimplex.standard(u_eps(eps)),
            limit=LipSimplex.standard(u_zero()),
            form=volume_form(2),
            params=[0.1, 0.05],
            grid_for=lambda eps: GridSpec(80, refine=False),
            lattice_m=32,
        )
        assert rows[1]["uniform_dist"] < rows[0]["uniform_dist"]
        assert rows[1]["mt_lip"] > 5.0 * rows[1]["uniform_dist"]
