from math import factorial
from typing import List

import numpy as np

from src.core.exceptions import NotACycleException
from src.core.logger import app_logger
from src.domain.entities.current import GridSpec, LipSimplex, MeasureChain
from src.domain.entities.lip_map import constant, identity
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.report import SuiteOutcome, Verdict
from src.domain.entities.signed_measure import SignedMeasure
from src.domain.entities.simplex_domain import SimplexDomain
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.families import affine_map, cone_homotopy, u_eps
from src.infrastructure.frameworks.forms import random_affine_form, random_smooth_form, volume_form
from src.infrastructure.frameworks.prism_service import PrismService

AFFINE_TOLERANCE = 1e-9


class RunHomotopyIdentitySuiteUseCase:
    """Use case pour vérifier l'identité d'homotopie de l'opérateur prisme"""

    suite = "homotopy-identity"
    description = "Prism decomposition of Δ^k × I, the chain homotopy P and the contraction of cycles"
    reference = (
        "Prism operator: ∂P and P∂ add up to the difference of the end inclusions, "
        "for simplices and for measure chains; Lipschitz contractible sets kill cycles"
    )
    columns = ["case", "k", "lhs", "rhs", "gap", "error_estimate", "formal_defect"]

    def __init__(self, prism: PrismService, currents: CurrentService):
        self.prism = prism
        self.currents = currents

    def execute(
        self,
        degrees: List[int],
        grid_n: int = 8,
        smooth_grid_n: int = 12,
        smooth_eps: float = 0.1,
        n_forms: int = 3,
        coverage_points: int = 100_000,
        contraction_forms: int = 5,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Calibre l'orientation puis vérifie l'identité d'homotopie

        Workflow :
        1. Calibration du signe sur données affines (k = 1)
        2. Données affines, simplexe constant et u_eps pour chaque degré
        3. Couverture Monte Carlo et volume des cellules
        4. Contraction de cycles par le cône
        """
        app_logger.info(f"Suite {self.suite}: degrees={degrees} grid={grid_n}")
        rng = np.random.default_rng(seed)
        outcome = SuiteOutcome(self.suite, list(self.columns))
        grid = GridSpec(grid_n, refine=False)

        orientation = self.prism.calibrate_orientation(grid, seed=seed)
        outcome.metadata["orientation"] = orientation.as_metadata()

        for k in degrees:
            self._affine_cases(outcome, rng, k, grid, n_forms)
            if k >= 1:
                self._constant_case(outcome, rng, k, grid)
                self._cell_volume(outcome, k, grid)
            coverage, overlap = self.prism.coverage(k, coverage_points, seed)
            outcome.check(Verdict.at_least(f"coverage k={k}", coverage, 1.0 - 1e-3, "prism cells cover Δ^k × I"))
            outcome.check(Verdict.at_most(f"overlap k={k}", overlap, 1e-3, "prism cells have disjoint interiors"))

        if 2 in degrees:
            self._smooth_case(outcome, rng, smooth_eps, smooth_grid_n)

        self._contractions(outcome, rng, grid, contraction_forms)
        app_logger.info(f"Suite {self.suite}: {sum(v.passed for v in outcome.verdicts)}/{len(outcome.verdicts)} checks passed")
        return outcome

    # === Cases ===

    def _row(self, outcome: SuiteOutcome, case: str, k: int, check, formal_defect=None) -> None:
        outcome.add_row(
            case=case,
            k=k,
            lhs=check.lhs,
            rhs=check.rhs,
            gap=check.gap,
            error_estimate=check.error_estimate,
            formal_defect=formal_defect,
        )

    def _affine_cases(self, outcome: SuiteOutcome, rng: np.random.Generator, k: int, grid: GridSpec, n_forms: int) -> None:
        if k == 0:
            sigma = LipSimplex.affine(rng.normal(size=(1, 1)))
            target_dim = 1
        else:
            base = affine_map(rng.normal(size=(k, k)), rng.normal(size=k))
            sigma = LipSimplex(base, SimplexDomain(k).vertices())
            target_dim = k
        defect = self.prism.formal_homotopy_defect(sigma)
        outcome.check(Verdict.at_most(f"formal identity k={k}", defect, 0.0, "prism faces cancel symbolically"))
        for j in range(n_forms):
            form = random_affine_form(rng, dim=target_dim + 1, degree=k)
            check = self.prism.homotopy_identity_check(sigma, form, grid)
            self._row(outcome, f"affine[{j}]", k, check, defect)
            scale = max(1.0, abs(check.lhs), abs(check.rhs))
            outcome.check(Verdict.at_most(
                f"affine homotopy gap k={k} form {j}",
                check.gap,
                AFFINE_TOLERANCE * scale,
                "calibrated homotopy identity on affine data",
            ))

    def _constant_case(self, outcome: SuiteOutcome, rng: np.random.Generator, k: int, grid: GridSpec) -> None:
        space = EuclideanSpace(k)
        base = constant(SimplexDomain(k).space, space, rng.normal(size=k))
        sigma = LipSimplex(base, SimplexDomain(k).vertices())
        form = random_affine_form(rng, dim=k + 1, degree=k)
        check = self.prism.homotopy_identity_check(sigma, form, grid)
        self._row(outcome, "constant", k, check)
        outcome.check(Verdict.at_most(
            f"constant simplex k={k}",
            max(abs(check.lhs), abs(check.rhs)),
            1e-10,
            "locality: degenerate images carry no current",
        ))

    def _cell_volume(self, outcome: SuiteOutcome, k: int, grid: GridSpec) -> None:
        sigma = LipSimplex.standard(identity(SimplexDomain(k).space))
        chain = self.prism.prism_chain(sigma)
        form = volume_form(k + 1)
        total = sum(abs(self.currents.evaluate_simplex(cell, form, grid).value) for cell in chain.simplices)
        outcome.check(Verdict.at_most(
            f"cell volume k={k}",
            abs(total - 1.0 / factorial(k)),
            AFFINE_TOLERANCE,
            "prism cells partition Δ^k × I",
        ))

    def _smooth_case(self, outcome: SuiteOutcome, rng: np.random.Generator, eps: float, n: int) -> None:
        sigma = LipSimplex.standard(u_eps(eps, 2))
        form = random_smooth_form(rng, dim=3, degree=2)
        check = self.prism.homotopy_identity_check(sigma, form, GridSpec(n))
        self._row(outcome, f"u_eps[{eps:g}]", 2, check, self.prism.formal_homotopy_defect(sigma))
        tolerance = max(AFFINE_TOLERANCE, 10.0 * (check.error_estimate or 0.0))
        outcome.check(Verdict.at_most("smooth homotopy gap", check.gap, tolerance, "homotopy identity under refinement"))

    def _contractions(self, outcome: SuiteOutcome, rng: np.random.Generator, grid: GridSpec, n_forms: int) -> None:
        plane = EuclideanSpace(2)
        h = cone_homotopy(2)

        a, b, c = rng.normal(size=(3, 2))
        triangle = MeasureChain.from_atoms(1, [
            (LipSimplex.affine([a, b], plane), 1.0),
            (LipSimplex.affine([b, c], plane), 1.0),
            (LipSimplex.affine([c, a], plane), 1.0),
        ])
        forms = [random_affine_form(rng, dim=2, degree=1) for _ in range(n_forms)]
        self._contraction_case(outcome, "triangle cycle", h, triangle, forms, grid)

        balanced = MeasureChain.from_measure(SignedMeasure.from_atoms(plane, rng.normal(size=(2, 2)), [1.0, -1.0]))
        forms = [random_affine_form(rng, dim=2, degree=0) for _ in range(n_forms)]
        self._contraction_case(outcome, "balanced 0-cycle", h, balanced, forms, grid)

        empty = self.prism.contraction_transport(h, MeasureChain.zero(1), forms, grid)
        outcome.check(Verdict.holds("zero cycle", empty.chain.is_zero, "contraction of the zero chain"))

        try:
            self.prism.contraction_transport(h, MeasureChain.single(LipSimplex.affine([a, b], plane)), forms, grid)
            rejected = False
        except NotACycleException:
            rejected = True
        outcome.check(Verdict.holds("non-cycle rejected", rejected, "contraction requires a cycle"))

    def _contraction_case(self, outcome, case, h, mu, forms, grid) -> None:
        result = self.prism.contraction_transport(h, mu, forms, grid)
        worst = 0.0
        for check in result.checks:
            self._row(outcome, case, mu.k, check)
            worst = max(worst, check.gap / max(1.0, abs(check.lhs), abs(check.rhs)))
        outcome.check(Verdict.at_most(f"contraction {case}", worst, AFFINE_TOLERANCE, "cycles die in a contractible set"))
