import math
from dataclasses import replace
from typing import List

import numpy as np

from src.core.logger import app_logger
from src.domain.entities.current import GridSpec, LipSimplex, MeasureChain
from src.domain.entities.lip_map import identity, linear
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.report import IdentityCheck, SuiteOutcome, Verdict
from src.domain.entities.signed_measure import SignedMeasure
from src.domain.entities.simplex_domain import SimplexDomain
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.families import affine_map, u_eps
from src.infrastructure.frameworks.forms import constant_pi_form, random_affine_form, volume_form

STOKES_TOLERANCE = 1e-6
EXACT_TOLERANCE = 1e-9


class RunBoundaryIdentitySuiteUseCase:
    """Use case pour les identités des courants T^μ (bord, poussée, masse, degré 0)"""

    suite = "boundary-identity"
    description = "Currents of measure chains: boundary identity, naturality, mass bound and degree-0 behaviour"
    reference = (
        "T^μ is a current: T^μ(1 df ∧ dπ) equals T^{∂μ}(f dπ), φ# commutes with ∂, "
        "|T^μ(f dπ)| is dominated by L^k Π Lip(π_i) ∫ |f| dν, and 0-chains act as measures"
    )
    columns = ["case", "k", "grid_n", "lhs", "rhs", "gap", "error_estimate"]

    def __init__(self, currents: CurrentService):
        self.currents = currents

    def execute(
        self,
        degrees: List[int],
        grid_n: int = 32,
        n_forms: int = 5,
        refinement_grids: List[int] = (8, 16, 32),
        refinement_eps: float = 0.1,
        mass_eps: float = 0.05,
        mass_grid_n: int = 64,
        lattice_m: int = 32,
        calibration_grid_n: int = 64,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Vérifie les axiomes de courant sur des chaînes de mesures

        Workflow :
        1. Calibration [id_Δk](1 dx) = 1/k!
        2. Stokes sur données affines et ∂∂ = 0
        3. Cycle triangulaire et augmentation
        4. Raffinement sur u_eps
        5. Naturalité, borne de masse, degré 0, localité, multilinéarité
        """
        app_logger.info(f"Suite {self.suite}: degrees={degrees} grid={grid_n}")
        rng = np.random.default_rng(seed)
        outcome = SuiteOutcome(self.suite, list(self.columns))
        grid = GridSpec(grid_n, refine=False)
        self._calibration(outcome, GridSpec(calibration_grid_n, refine=False))

        for k in degrees:
            mu = self._random_affine_chain(rng, k, atoms=3)
            self._stokes(outcome, rng, mu, grid, n_forms)
            if k >= 2:
                self._boundary_squared(outcome, rng, mu, grid)
            self._naturality(outcome, rng, k, grid)
            self._locality(outcome, rng, k, grid)
            self._multilinearity(outcome, rng, k, grid)

        self._triangle_cycle(outcome, rng, grid, n_forms)
        self._augmentation(outcome, rng)
        self._refinement(outcome, rng, refinement_eps, refinement_grids)
        self._mass(outcome, rng, mass_eps, GridSpec(mass_grid_n, refine=False), lattice_m)
        self._degree_zero(outcome, rng, grid)

        app_logger.info(f"Suite {self.suite}: {sum(v.passed for v in outcome.verdicts)}/{len(outcome.verdicts)} checks passed")
        return outcome

    # === Builders ===

    @staticmethod
    def _random_affine_simplex(rng: np.random.Generator, k: int) -> LipSimplex:
        """Affine k-simplex in R^(k+1)"""
        base = affine_map(rng.normal(size=(k + 1, k)), rng.normal(size=k + 1))
        return LipSimplex(base, SimplexDomain(k).vertices())

    def _random_affine_chain(self, rng: np.random.Generator, k: int, atoms: int) -> MeasureChain:
        return MeasureChain.from_atoms(k, [(self._random_affine_simplex(rng, k), rng.normal()) for _ in range(atoms)])

    def _row(self, outcome: SuiteOutcome, case: str, k: int, grid: GridSpec, check: IdentityCheck) -> None:
        outcome.add_row(
            case=case,
            k=k,
            grid_n=grid.n,
            lhs=check.lhs,
            rhs=check.rhs,
            gap=check.gap,
            error_estimate=check.error_estimate,
        )

    @staticmethod
    def _relative_gap(check: IdentityCheck) -> float:
        return check.gap / max(1.0, abs(check.lhs), abs(check.rhs))

    # === Cases ===

    def _calibration(self, outcome: SuiteOutcome, grid: GridSpec) -> None:
        for k in (1, 2, 3):
            sigma = LipSimplex.standard(identity(EuclideanSpace(k)))
            value = self.currents.evaluate_simplex(sigma, volume_form(k), grid).value
            check = IdentityCheck(value, 1.0 / math.factorial(k))
            self._row(outcome, "standard simplex volume", k, grid, check)
            outcome.check(Verdict.at_most(f"simplex calibration k={k}", check.gap, STOKES_TOLERANCE, "[id_Δk](1 dx) = vol Δ^k = 1/k!"))

    def _stokes(self, outcome: SuiteOutcome, rng: np.random.Generator, mu: MeasureChain, grid: GridSpec, n_forms: int) -> None:
        k = mu.k
        worst = 0.0
        for j in range(n_forms):
            form = random_affine_form(rng, dim=k + 1, degree=k - 1)
            check = self.currents.boundary_identity(mu, form, grid)
            self._row(outcome, f"affine stokes[{j}]", k, grid, check)
            worst = max(worst, self._relative_gap(check))
        outcome.check(Verdict.at_most(f"boundary identity k={k}", worst, STOKES_TOLERANCE, "T^μ(1 df ∧ dπ) = T^{∂μ}(f dπ)"))

    def _boundary_squared(self, outcome: SuiteOutcome, rng: np.random.Generator, mu: MeasureChain, grid: GridSpec) -> None:
        k = mu.k
        boundary = self.currents.boundary_chain(mu)
        formal = self.currents.boundary_chain(boundary)
        outcome.check(Verdict.holds(f"formal ∂∂ = 0 k={k}", formal.is_zero, "∂∂ = 0 on measure chains", measured=formal.total_variation))
        form = random_affine_form(rng, dim=k + 1, degree=k - 2)
        check = self.currents.boundary_identity(boundary, form, grid)
        self._row(outcome, "boundary of boundary", k, grid, check)
        outcome.check(Verdict.at_most(f"numeric ∂∂ = 0 k={k}", abs(check.lhs), 1e-8, "T^{∂μ} vanishes on exact forms"))

    def _naturality(self, outcome: SuiteOutcome, rng: np.random.Generator, k: int, grid: GridSpec) -> None:
        space = SimplexDomain(k).space
        sigma = LipSimplex.standard(identity(space))
        matrix = rng.normal(size=(k, k))
        phi = linear(matrix, EuclideanSpace(k))
        mu = MeasureChain.single(sigma)

        pushed = self.currents.evaluate_chain(self.currents.pushforward_chain(phi, mu), volume_form(k), grid).value
        expected = float(np.linalg.det(matrix)) / float(np.prod(np.arange(1, k + 1)))
        check = IdentityCheck(pushed, expected)
        self._row(outcome, "pushforward det", k, grid, check)
        outcome.check(Verdict.at_most(f"pushforward scaling k={k}", self._relative_gap(check), EXACT_TOLERANCE, "φ# scales volume by det φ"))

        form = random_affine_form(rng, dim=k, degree=k)
        check = self.currents.naturality_check(phi, mu, form, grid)
        self._row(outcome, "naturality", k, grid, check)
        outcome.check(Verdict.at_most(f"naturality k={k}", self._relative_gap(check), EXACT_TOLERANCE, "T^{φ#μ} = φ#T^μ"))

        left = self.currents.pushforward_chain(phi, self.currents.boundary_chain(mu))
        right = self.currents.boundary_chain(self.currents.pushforward_chain(phi, mu))
        outcome.check(Verdict.holds(f"φ# ∂ = ∂ φ# k={k}", left.same_atoms(right), "pushforward is a chain map"))

    def _locality(self, outcome: SuiteOutcome, rng: np.random.Generator, k: int, grid: GridSpec) -> None:
        sigma = self._random_affine_simplex(rng, k)
        form = constant_pi_form(dim=k + 1, degree=k, index=k - 1)
        value = self.currents.evaluate_simplex(sigma, form, grid).value
        outcome.check(Verdict.at_most(f"constant π k={k}", abs(value), 1e-14, "locality: a constant π kills the current"))

        if k >= 2:
            form = random_affine_form(rng, dim=k + 1, degree=k)
            direct = self.currents.evaluate_simplex(sigma, form, grid).value
            swapped = self.currents.evaluate_simplex(sigma, form.swapped(0, 1), grid).value
            check = IdentityCheck(swapped, -direct)
            self._row(outcome, "antisymmetry", k, grid, check)
            outcome.check(Verdict.at_most(f"antisymmetry k={k}", self._relative_gap(check), 1e-12, "alternating in the π's"))

    def _multilinearity(self, outcome: SuiteOutcome, rng: np.random.Generator, k: int, grid: GridSpec) -> None:
        sigma = self._random_affine_simplex(rng, k)
        first = random_affine_form(rng, dim=k + 1, degree=k)
        gradient = rng.normal(size=k + 1)
        second = replace(first, name="cos-variant", f=lambda points: np.cos(points @ gradient), f_bound=1.0)
        a, b = rng.normal(size=2)
        combined = self.currents.evaluate_simplex(sigma, first.combine(second, a, b), grid).value
        separate = (
            a * self.currents.evaluate_simplex(sigma, first, grid).value
            + b * self.currents.evaluate_simplex(sigma, second, grid).value
        )
        check = IdentityCheck(combined, separate)
        self._row(outcome, "linearity in f", k, grid, check)
        outcome.check(Verdict.at_most(f"linearity k={k}", self._relative_gap(check), 1e-12, "T^μ is linear in f"))

    def _triangle_cycle(self, outcome: SuiteOutcome, rng: np.random.Generator, grid: GridSpec, n_forms: int) -> None:
        plane = EuclideanSpace(2)
        a, b, c = rng.normal(size=(3, 2))
        cycle = MeasureChain.from_atoms(1, [
            (LipSimplex.affine([a, b], plane), 1.0),
            (LipSimplex.affine([b, c], plane), 1.0),
            (LipSimplex.affine([c, a], plane), 1.0),
        ])
        worst = 0.0
        for _ in range(n_forms):
            check = self.currents.boundary_identity(cycle, random_affine_form(rng, dim=2, degree=0), grid)
            self._row(outcome, "triangle cycle", 1, grid, check)
            worst = max(worst, abs(check.lhs), abs(check.rhs))
        outcome.check(Verdict.at_most("cycle kills exact forms", worst, EXACT_TOLERANCE, "∂μ = 0 gives T^μ(df) = 0"))

    def _augmentation(self, outcome: SuiteOutcome, rng: np.random.Generator) -> None:
        mu = self._random_affine_chain(rng, 1, atoms=6)
        value = self.currents.augmentation(self.currents.boundary_chain(mu))
        outcome.check(Verdict.at_most("augmentation of a boundary", abs(value), 0.0, "ε∘∂ = 0"))

    def _refinement(self, outcome: SuiteOutcome, rng: np.random.Generator, eps: float, grids: List[int]) -> None:
        mu = MeasureChain.single(LipSimplex.standard(u_eps(eps, 2)))
        form = random_affine_form(rng, dim=2, degree=1)
        gaps = []
        for n in grids:
            grid = GridSpec(n)
            check = self.currents.boundary_identity(mu, form, grid)
            self._row(outcome, f"u_eps[{eps:g}] refinement", 2, grid, check)
            gaps.append(check.gap)
        outcome.metadata["refinement_gaps"] = gaps
        outcome.check(Verdict.at_most("refinement shrinks the gap", gaps[-1], gaps[0] + 1e-12, "boundary identity under refinement"))

    def _mass(self, outcome: SuiteOutcome, rng: np.random.Generator, eps: float, grid: GridSpec, lattice_m: int) -> None:
        cases = [
            ("affine", self._random_affine_chain(rng, 2, atoms=2), random_affine_form(rng, dim=3, degree=2)),
            (f"u_eps[{eps:g}]", MeasureChain.single(LipSimplex.standard(u_eps(eps, 2))), volume_form(2)),
            ("f = 0", MeasureChain.single(LipSimplex.standard(u_eps(eps, 2))), volume_form(2, f_value=0.0)),
        ]
        for case, mu, form in cases:
            mass = self.currents.mass_bound_check(mu, form, grid, lattice_m)
            self._row(outcome, f"mass {case}", mu.k, grid, IdentityCheck(mass.lhs_abs, mass.rhs_bound))
            outcome.check(Verdict.holds(
                f"mass bound {case}",
                mass.holds,
                "|T^μ(f dπ)| ≤ L^k Π Lip(π_i) ∫ |f| dν",
                measured=mass.lhs_abs,
                tolerance=mass.rhs_bound,
            ))

    def _degree_zero(self, outcome: SuiteOutcome, rng: np.random.Generator, grid: GridSpec) -> None:
        plane = EuclideanSpace(2)
        weights = rng.normal(size=8)
        measure = SignedMeasure.from_atoms(plane, rng.normal(size=(8, 2)), weights)
        mu = MeasureChain.from_measure(measure)

        recovered = self.currents.weight_recovery(mu)
        expected = mu.to_measure().weights
        outcome.check(Verdict.at_most(
            "weight recovery",
            float(np.max(np.abs(recovered - expected))),
            1e-12,
            "a 0-chain is determined by its current",
        ))

        form = random_affine_form(rng, dim=2, degree=0)
        value = self.currents.evaluate_chain(mu, form, grid).value
        check = IdentityCheck(value, measure.evaluate(form.f_values))
        self._row(outcome, "0-chain as measure", 0, grid, check)
        outcome.check(Verdict.at_most("0-chain evaluation", self._relative_gap(check), 1e-12, "T^μ(f) = Σ a_i f(x_i)"))
