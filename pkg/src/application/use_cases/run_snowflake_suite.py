from typing import List

import numpy as np

from src.core.logger import app_logger
from src.domain.entities.metric_space import SnowflakeSpace
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.families import REAL_LINE, interval_grid, snowflake_constant, snowflake_curve
from src.infrastructure.frameworks.lipschitz_service import LipschitzService


class RunSnowflakeSuiteUseCase:
    """Use case pour les courbes dans un espace flocon (R, |·|^α)"""

    suite = "snowflake"
    description = "The identity [0,1] → (R, |·|^α) has difference quotients h^(α−1): no Lipschitz curve but constants"
    reference = (
        "A snowflaked space carries no non-constant Lipschitz curves, "
        "so its Lipschitz homology is concentrated in degree zero"
    )
    columns = ["h", "lip_estimate", "predicted", "relative_error"]

    def __init__(self, lipschitz: LipschitzService):
        self.lipschitz = lipschitz

    def execute(
        self,
        alpha: float = 0.5,
        meshes: List[float] = (1e-2, 1e-4),
        anchors: int = 17,
        scaling_tolerance: float = 0.05,
        seed: int = 0,
    ) -> SuiteOutcome:
        app_logger.info(f"Suite {self.suite}: alpha={alpha} meshes={meshes}")
        outcome = SuiteOutcome(self.suite, list(self.columns))

        table = self.lipschitz.snowflake_curve_diagnostic(snowflake_curve(alpha), meshes, anchors)
        for h, estimate in table:
            predicted = h ** (alpha - 1.0)
            outcome.add_row(h=h, lip_estimate=estimate, predicted=predicted, relative_error=abs(estimate - predicted) / predicted)

        estimates = [e for _, e in table]
        outcome.check(Verdict.holds(
            "estimates grow as h shrinks",
            all(b > a for a, b in zip(estimates, estimates[1:])),
            "difference quotients blow up",
        ))
        (h1, e1), (h2, e2) = table[0], table[-1]
        observed = e2 / e1
        predicted = (h2 / h1) ** (alpha - 1.0)
        outcome.check(Verdict.at_most(
            "scaling exponent",
            abs(observed / predicted - 1.0),
            scaling_tolerance,
            "Lip estimate at scale h is h^(α−1)",
        ))
        outcome.metadata["scaling"] = {"observed_ratio": observed, "predicted_ratio": predicted}

        constant_lip = self.lipschitz.estimate_value(snowflake_constant(alpha), points=interval_grid(anchors))
        outcome.check(Verdict.at_most("constant curve", constant_lip, 0.0, "constant curves stay Lipschitz"))

        space = SnowflakeSpace(REAL_LINE, alpha)
        points = np.random.default_rng(seed).uniform(-1.0, 1.0, size=(200, 1))
        defect = self.lipschitz.metric_axiom_defect(space, points, n_triples=1000, seed=seed)
        outcome.check(Verdict.at_most("snowflake metric axioms", defect, 1e-12, "d^α is a metric for α ≤ 1"))
        return outcome
