from typing import List

from src.core.logger import app_logger
from src.domain.entities.lip_map import PairPlanKind, SamplingPlan
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.families import circle_grid, circle_zero, t_sin, t_sin_over_t
from src.infrastructure.frameworks.lip_topology_service import LipTopologyService


class RunC1CompareSuiteUseCase:
    """Use case pour comparer MT et C1 sur le cercle"""

    suite = "c1-compare"
    description = "On C1 maps S¹ → R, MT convergence follows C1 convergence (t sin θ) and fails without it (t sin(θ/t))"
    reference = (
        "For C1 maps on a compact manifold the MT distance is controlled by the C1 distance; "
        "uniform convergence with non-vanishing derivatives keeps MT away from zero"
    )
    columns = ["family", "t", "c1_dist", "mt_sup", "mt_lip", "mt_total", "ratio"]

    def __init__(self, topology: LipTopologyService):
        self.topology = topology

    def execute(
        self,
        t_values: List[float],
        samples: int = 2048,
        floor: float = 0.5,
        seed: int = 0,
    ) -> SuiteOutcome:
        app_logger.info(f"Suite {self.suite}: t={t_values} samples={samples}")
        outcome = SuiteOutcome(self.suite, list(self.columns))
        points = circle_grid(samples)
        plan = SamplingPlan(kind=PairPlanKind.CONSECUTIVE)
        limit = circle_zero(samples)

        smooth = self.topology.c1_comparison(lambda t: t_sin(t, samples), limit, t_values, points, plan)
        for row in smooth:
            t = row["t"]
            outcome.add_row(family="t_sin", **row)
            outcome.check(Verdict.at_most(f"C1 distance of t sin at t={t:g}", abs(row["c1_dist"] - 2.0 * t), 1e-12, "‖t sin‖_C1 = 2t"))
            outcome.check(Verdict.at_most(f"MT below C1 at t={t:g}", row["mt_total"], 2.0 * t + 1e-9, "mt ≤ C1 distance"))
            outcome.check(Verdict.holds(
                f"ratio in (0, 1] at t={t:g}",
                0.0 < row["ratio"] <= 1.0 + 1e-12,
                "MT is dominated by C1",
                measured=row["ratio"],
                tolerance=1.0,
            ))

        totals = [r["mt_total"] for r in smooth]
        c1 = [r["c1_dist"] for r in smooth]
        comonotone = all(
            (m2 < m1) == (d2 < d1)
            for (m1, m2), (d1, d2) in zip(zip(totals, totals[1:]), zip(c1, c1[1:]))
        )
        outcome.check(Verdict.holds("MT and C1 decrease together", comonotone, "C1 convergence gives MT convergence"))

        oscillating = self.topology.c1_comparison(lambda t: t_sin_over_t(t, samples), limit, t_values, points, plan)
        for row in oscillating:
            t = row["t"]
            outcome.add_row(family="t_sin_over_t", **row)
            outcome.check(Verdict.at_least(f"C1 stays above 1 at t={t:g}", row["c1_dist"], 1.0, "derivative keeps unit size"))
            outcome.check(Verdict.at_least(f"MT stays above floor at t={t:g}", row["mt_total"], floor, "no MT convergence without C1"))
        outcome.metadata["plan"] = plan.describe()
        return outcome
