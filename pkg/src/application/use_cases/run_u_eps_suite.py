from dataclasses import asdict
from math import ceil, factorial, sin, sqrt
from typing import List

import numpy as np

from src.core.logger import app_logger
from src.domain.entities.current import GridSpec, LipSimplex
from src.domain.entities.lip_map import PairPlanKind, SamplingPlan
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.families import smooth_perturbation, u_eps, u_zero
from src.infrastructure.frameworks.forms import volume_form
from src.infrastructure.frameworks.lip_topology_service import three_point_trend
from src.infrastructure.frameworks.lipschitz_service import LipschitzService

# sup of |(sin x2, sin x1)| over Δ^k
PERTURBATION_SUP = sqrt(2.0) * sin(1.0)


class RunUEpsSuiteUseCase:
    """Use case pour la famille u_eps: courant constant, convergence uniforme, Lip qui explose"""

    suite = "u-eps"
    description = (
        "u_ε → u_0 uniformly while [u_ε](vol) stays at vol(Δ^k) and Lip(u_ε) grows like √(2/ε); "
        "a smooth perturbation σ_t = id + t w converges in MT and its current follows at O(t)"
    )
    reference = (
        "Uniform convergence does not make the current σ ↦ [σ] continuous; "
        "continuity of the current needs convergence in the MT topology"
    )
    columns = [
        "family", "t", "grid_n", "value", "error_estimate", "uniform_dist",
        "mt_sup", "mt_lip", "mt_total", "lip_estimate", "lip_lower_bound",
    ]

    def __init__(self, currents: CurrentService, lipschitz: LipschitzService):
        self.currents = currents
        self.lipschitz = lipschitz

    def execute(
        self,
        epsilons: List[float],
        perturbations: List[float] = (0.02, 0.01, 0.005),
        k: int = 2,
        n_min: int = 64,
        lattice_m: int = 32,
        value_tolerance: float = 0.05,
        lip_fraction: float = 0.9,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Balaye ε et compare [u_ε](vol) au volume du simplexe

        Workflow :
        1. Diagnostic de continuité contre u_0 (valeur, uniforme, MT)
        2. Estimation de Lip(u_ε) sur l'axe x_1
        3. Diagnostic de continuité de id + t w contre id (convergence MT)
        4. Verdicts et tendances
        """
        app_logger.info(f"Suite {self.suite}: epsilons={epsilons} perturbations={list(perturbations)} k={k}")
        outcome = SuiteOutcome(self.suite, list(self.columns))
        volume = 1.0 / factorial(k)
        form = volume_form(k)

        def grid_for(eps: float) -> GridSpec:
            return GridSpec(max(n_min, ceil(8.0 / eps)))

        rows = self.currents.continuity_diagnostic(
            family=lambda eps: LipSimplex.standard(u_eps(eps, k)),
            limit=LipSimplex.standard(u_zero(k)),
            form=form,
            params=epsilons,
            grid_for=grid_for,
            lattice_m=lattice_m,
        )

        for row in rows:
            eps = row["t"]
            lip = self._axis_lipschitz(eps, k)
            lower = lip_fraction * sqrt(2.0 / eps)
            outcome.add_row(family="u_eps", grid_n=grid_for(eps).n, lip_estimate=lip, lip_lower_bound=lower, **row)
            outcome.check(Verdict.at_most(
                f"[u_eps]({form.name}) at eps={eps:g}",
                abs(row["value"] - volume),
                value_tolerance * volume,
                "[u_ε](vol) stays at vol(Δ^k)",
            ))
            outcome.check(Verdict.at_least(f"Lip(u_eps) at eps={eps:g}", lip, lower, "Lip(u_ε) ≥ c √(2/ε)"))

        limit_value = self.currents.evaluate_simplex(LipSimplex.standard(u_zero(k)), form, GridSpec(n_min, refine=False)).value
        outcome.metadata["limit_value"] = limit_value
        outcome.check(Verdict.at_most("[u_0](vol)", abs(limit_value), 1e-12, "the uniform limit carries no current"))

        uniform = [r["uniform_dist"] for r in rows]
        decreasing = all(b < a for a, b in zip(uniform, uniform[1:]))
        outcome.check(Verdict.holds("uniform distance decreases", decreasing, "u_ε → u_0 uniformly", measured=uniform[-1]))

        finest = rows[-1]
        outcome.check(Verdict.at_least(
            "MT stays away at the smallest eps",
            finest["mt_lip"],
            10.0 * finest["uniform_dist"],
            "u_ε does not converge to u_0 in MT",
        ))

        perturbed = self._perturbation_rows(outcome, perturbations, k, n_min, lattice_m)

        if len(rows) >= 3:
            outcome.metadata["trends"] = {
                "uniform": asdict(three_point_trend(uniform)),
                "mt_total": asdict(three_point_trend([r["mt_total"] for r in rows])),
            }
        if len(perturbed) >= 3:
            outcome.metadata.setdefault("trends", {})["perturbation_mt_total"] = asdict(
                three_point_trend([r["mt_total"] for r in perturbed])
            )
        return outcome

    def _perturbation_rows(
        self, outcome: SuiteOutcome, params: List[float], k: int, n_min: int, lattice_m: int
    ) -> List[dict]:
        """σ_t = id + t w against σ_0 = id: the MT-convergent side of the continuity lemma"""
        form = volume_form(k)
        grid = GridSpec(n_min)
        limit = LipSimplex.standard(smooth_perturbation(0.0, k))
        base_value = self.currents.evaluate_simplex(limit, form, grid).value
        outcome.metadata["perturbation_base_value"] = base_value

        rows = self.currents.continuity_diagnostic(
            family=lambda t: LipSimplex.standard(smooth_perturbation(t, k)),
            limit=limit,
            form=form,
            params=params,
            grid_for=lambda t: grid,
            lattice_m=lattice_m,
        )
        # sup part ≤ t sup|w|; lattice neighbours sit 1/m apart
        rate = PERTURBATION_SUP * (1.0 + 2.0 * lattice_m)
        for row in rows:
            t = row["t"]
            outcome.add_row(family="perturbation", grid_n=grid.n, **row)
            outcome.check(Verdict.at_most(
                f"[id + t w]({form.name}) at t={t:g}",
                abs(row["value"] - base_value),
                t * (1.0 / factorial(k)),
                "[σ_t](vol) → [σ_0](vol) at O(t)",
            ))
            outcome.check(Verdict.at_most(
                f"MT to id at t={t:g}",
                row["mt_total"],
                rate * t,
                "σ_t → σ_0 in MT at O(t)",
            ))

        totals = [r["mt_total"] for r in rows]
        decreasing = all(b < a for a, b in zip(totals, totals[1:]))
        outcome.check(Verdict.holds("perturbation MT decreases", decreasing, "σ_t → σ_0 in MT", measured=totals[-1]))
        return rows

    def _axis_lipschitz(self, eps: float, k: int) -> float:
        """Consecutive difference quotients along (x, 0, ..., 0) with step ε/8"""
        axis = np.arange(0.0, 1.0, eps / 8.0)
        points = np.column_stack([axis, np.zeros((len(axis), k - 1))])
        plan = SamplingPlan(kind=PairPlanKind.CONSECUTIVE)
        return self.lipschitz.estimate_value(u_eps(eps, k), plan, points)
