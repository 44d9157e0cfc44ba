from math import ceil, isfinite
from typing import List

import numpy as np

from src.core.logger import app_logger
from src.domain.entities.current import GridSpec, LipSimplex
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.families import v_eps
from src.infrastructure.frameworks.forms import volume_form


class RunVEpsSuiteUseCase:
    """Use case pour la famille v_eps: valeurs du courant en 1/ε"""

    suite = "v-eps"
    description = "[v_ε](vol) grows like 1/(4ε) while v_ε → 0 uniformly"
    reference = (
        "A uniformly convergent sequence of Lipschitz simplices whose currents diverge: "
        "the current is not bounded by the uniform norm"
    )
    columns = ["eps", "grid_n", "value", "error_estimate", "eps_times_value"]

    def __init__(self, currents: CurrentService):
        self.currents = currents

    def execute(
        self,
        epsilons: List[float],
        n_min: int = 64,
        spread_tolerance: float = 0.1,
        seed: int = 0,
    ) -> SuiteOutcome:
        app_logger.info(f"Suite {self.suite}: epsilons={epsilons}")
        outcome = SuiteOutcome(self.suite, list(self.columns))

        def grid_for(eps: float) -> GridSpec:
            # one grid step per 1.25 radians of phase keeps ε·value stable
            return GridSpec(max(n_min, ceil(1.25 / (eps * eps))))

        rows = self.currents.non_integrability_diagnostic(
            family=lambda eps: LipSimplex.standard(v_eps(eps)),
            form=volume_form(2),
            epsilons=epsilons,
            grid_for=grid_for,
        )
        for row in rows:
            outcome.add_row(grid_n=grid_for(row["eps"]).n, **row)

        values = [r["value"] for r in rows]
        outcome.check(Verdict.holds("finite values", all(isfinite(v) for v in values), "[v_ε](vol) is finite for each ε"))

        scaled = np.array([r["eps_times_value"] for r in rows])
        mean = float(np.mean(scaled))
        spread = float(np.max(scaled) - np.min(scaled))
        outcome.check(Verdict.at_most(
            "eps * value spread",
            spread,
            spread_tolerance * abs(mean),
            "ε·[v_ε](vol) stays constant, so [v_ε](vol) ~ 1/ε",
        ))
        outcome.metadata["eps_times_value_mean"] = mean
        outcome.metadata["expected_eps_times_value"] = 0.25
        outcome.metadata["ratios"] = [
            {"eps": b["eps"], "ratio": b["value"] / a["value"] if a["value"] else None}
            for a, b in zip(rows, rows[1:])
        ]
        return outcome
