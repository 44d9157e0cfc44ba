import numpy as np
import pytest

from src.core.exceptions import LpNumericsException
from src.infrastructure.frameworks.lp_solver_service import LpInstance, LpSolverService


def _line_instance(weights, labels=None):
    # points 1 and 2 on the line, base point 0
    return LpInstance(
        weights=np.asarray(weights, dtype=float),
        distances=np.array([[0.0, 1.0], [1.0, 0.0]]),
        base_distances=np.array([1.0, 2.0]),
        labels=labels,
    )


class TestLpSolver:

    def test_dirac_difference(self, lp_solver):
        solution = lp_solver.solve(_line_instance([1.0, -1.0]))
        assert solution.value == pytest.approx(1.0, abs=1e-9)
        assert solution.method == "highs-ds"
        assert solution.primal_residual <= 1e-9

    def test_same_sign_atoms(self, lp_solver):
        solution = lp_solver.solve(_line_instance([1.0, 1.0]))
        assert solution.value == pytest.approx(3.0, abs=1e-9)
        assert solution.potentials == pytest.approx([1.0, 2.0], abs=1e-9)

    def test_empty_instance(self, lp_solver):
        empty = LpInstance(np.zeros(0), np.zeros((0, 0)), np.zeros(0))
        solution = lp_solver.solve(empty)
        assert solution.value == 0.0
        assert solution.method == "empty"

    def test_unreachable_tolerance_walks_every_method(self):
        solver = LpSolverService(tolerance=-1.0, methods=["highs-ds", "highs-ipm"], max_attempts=3)
        with pytest.raises(LpNumericsException) as exc:
            solver.solve(_line_instance([1.0, -1.0]))
        assert exc.value.code == "LP_NUMERICS"
        assert exc.value.details["method"] == "highs-ipm"


class TestLpInstance:

    def test_constraint_matrix(self):
        matrix, rhs = _line_instance([1.0, -1.0]).constraint_matrix()
        assert matrix.shape == (2, 2)
        assert matrix.toarray().tolist() == [[1.0, -1.0], [-1.0, 1.0]]
        assert rhs.tolist() == [1.0, 1.0]

    def test_text_dump(self):
        text = _line_instance([1.0, -1.0], labels=["a", "b"]).to_text()
        lines = text.splitlines()
        assert lines[0] == "maximize: 1 a + -1 b"
        assert "a - b <= 1" in lines
        assert "-2 <= b <= 2" in lines
        assert len(lines) == 5
        assert text.endswith("\n")
