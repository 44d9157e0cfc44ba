import pytest

from src.application.use_cases.run_homology_suite import RunHomologySuiteUseCase
from src.application.use_cases.run_mv_cosheaf_suite import RunMvCosheafSuiteUseCase
from src.core.exceptions import NotFoundException, ValidationException


def _failed(outcome):
    return [v.check for v in outcome.verdicts if not v.passed]


class TestMvCosheafSuite:

    @pytest.fixture
    def use_case(self, cosheaf):
        return RunMvCosheafSuiteUseCase(cosheaf=cosheaf)

    def test_small_run_passes(self, use_case):
        outcome = use_case.execute(n_instances=30, n_atoms=10, n_kernel=10)
        assert outcome.passed, _failed(outcome)
        checks = [row["check"] for row in outcome.rows]
        assert "split reproduces ξ" in checks
        assert "kernel witness" in checks
        assert "pair outside the kernel rejected" in checks
        assert "nested shrinking" in checks
        assert "separating level" in checks
        assert "split reproduces ξ (punctured cover)" in checks
        assert "epsilon" in outcome.metadata["separation"]

    def test_half_space_cover(self, use_case):
        outcome = use_case.execute(
            n_instances=20,
            n_atoms=8,
            n_kernel=5,
            u={"kind": "half-space", "normal": [1.0, 0.0], "offset": 0.5},
            v={"kind": "half-space", "normal": [-1.0, 0.0], "offset": 0.5},
        )
        assert outcome.passed, _failed(outcome)

    def test_mismatched_dimensions(self, use_case):
        with pytest.raises(ValidationException):
            use_case.execute(
                n_instances=1,
                n_atoms=2,
                n_kernel=1,
                u={"kind": "ball", "center": [0.0, 0.0], "radius": 1.0},
                v={"kind": "ball", "center": [0.0, 0.0, 0.0], "radius": 1.0},
            )

    def test_unknown_region_kind(self, use_case):
        with pytest.raises(NotFoundException):
            use_case.execute(n_instances=1, n_atoms=2, n_kernel=1, u={"kind": "torus"})


class TestHomologySuite:

    @pytest.fixture
    def use_case(self, homology):
        return RunHomologySuiteUseCase(homology=homology)

    def test_default_run_passes(self, use_case):
        outcome = use_case.execute()
        assert outcome.passed, _failed(outcome)
        betti = outcome.metadata["betti"]
        assert betti["alternating-identity[4]"] == [4, 0, 0, 0, 0, 0, 0]
        assert betti["alternating-identity[4] (reduced)"] == [3, 0, 0, 0, 0, 0, 0]
        assert betti["simplicial-circle"] == [1, 1]
        assert betti["simplicial-circle (reduced)"] == [0, 1]

    def test_extra_complexes(self, use_case):
        complexes = [
            {"name": "interval", "dims": [2, 1], "boundaries": [[[-1.0], [1.0]]], "expected": [1, 0]},
            {"name": "hollow triangle", "builder": "simplicial-circle", "expected": [0, 1], "reduced": True},
        ]
        outcome = use_case.execute(n=2, top_degree=2, n_conjugations=1, complexes=complexes)
        assert outcome.passed, _failed(outcome)
        interval = [row for row in outcome.rows if row["complex"] == "interval"]
        assert [row["betti"] for row in interval] == [1, 0]
        assert [row["expected"] for row in interval] == [1, 0]

    def test_wrong_expectation_fails(self, use_case):
        complexes = [{"name": "interval", "dims": [2, 1], "boundaries": [[[-1.0], [1.0]]], "expected": [2, 0]}]
        outcome = use_case.execute(n=1, top_degree=0, n_conjugations=0, complexes=complexes)
        assert _failed(outcome) == ["betti interval"]

    def test_conjugations_reported(self, use_case):
        outcome = use_case.execute(n=2, top_degree=2, n_conjugations=3)
        labels = {row["complex"] for row in outcome.rows}
        assert "alternating-identity[2] conjugated[2]" in labels
        assert "simplicial-circle conjugated[0]" in labels
