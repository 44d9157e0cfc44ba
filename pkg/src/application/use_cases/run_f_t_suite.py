from dataclasses import asdict
from math import sqrt
from typing import List

from src.core.logger import app_logger
from src.domain.entities.lip_map import PairPlanKind, SamplingPlan
from src.domain.entities.report import SuiteOutcome, Verdict
from src.infrastructure.frameworks.families import f_t, f_zero, interval_grid, sawtooth
from src.infrastructure.frameworks.lip_topology_service import LipTopologyService


class RunFtSuiteUseCase:
    """Use case pour f_t et les dents de scie: convergence uniforme sans convergence MT"""

    suite = "f-t"
    description = "f_t → 0 uniformly at rate √t while the MT Lipschitz part grows like 1/√t; sawtooth maps keep MT distance 1"
    reference = (
        "The MT topology is strictly finer than the compact-open one: "
        "CO-convergent sequences of Lipschitz maps need not converge in MT"
    )
    columns = [
        "family", "t", "uniform_dist", "mt_sup", "mt_lip", "mt_total",
        "lip_estimate", "bt_sup", "bt_lip", "bt_total",
    ]

    def __init__(self, topology: LipTopologyService):
        self.topology = topology

    def execute(
        self,
        t_values: List[float],
        samples: int = 257,
        sawtooth_n: List[int] = (4, 8, 16),
        seed: int = 0,
    ) -> SuiteOutcome:
        app_logger.info(f"Suite {self.suite}: t={t_values} samples={samples}")
        outcome = SuiteOutcome(self.suite, list(self.columns))
        points = interval_grid(samples)
        plan = SamplingPlan(kind=PairPlanKind.ALL)
        mesh = 1.0 / (samples - 1)

        rows, trends = self.topology.convergence_diagnostic(
            lambda t: f_t(t, samples), f_zero(samples), t_values, points, plan
        )
        for row in rows:
            t = row["t"]
            bt = self.topology.bt_distance(f_t(t, samples), f_zero(samples), points, plan)
            outcome.add_row(family="f_t", bt_sup=bt.sup_part, bt_lip=bt.lip_part, bt_total=bt.total, **row)

            outcome.check(Verdict.at_most(f"grid resolves f_t at t={t:g}", mesh, t / 4.0, "sample mesh at most t/4"))
            outcome.check(Verdict.at_most(
                f"uniform distance at t={t:g}",
                abs(row["uniform_dist"] - sqrt(t)),
                1e-9,
                "‖f_t‖_∞ = √t",
            ))
            outcome.check(Verdict.at_least(
                f"MT Lipschitz part at t={t:g}",
                row["mt_lip"],
                (1.0 - 1e-9) / sqrt(t),
                "mt_lip(f_t, 0) ≥ 1/√t",
            ))
            outcome.check(Verdict.at_most(
                f"BT parts at t={t:g}",
                max(abs(bt.sup_part - sqrt(t)), abs(bt.lip_part - 1.0 / sqrt(t)) * sqrt(t)),
                1e-9,
                "bt(f_t, 0) = (√t, 1/√t)",
            ))

        outcome.check(Verdict.holds("f_t converges uniformly", trends["co_convergent"].converges, "f_t → 0 in CO"))
        outcome.check(Verdict.holds("f_t does not converge in MT", not trends["mt_convergent"].converges, "f_t ↛ 0 in MT"))
        outcome.metadata["f_t_trends"] = {name: asdict(v) for name, v in trends.items()}

        saw_rows, saw_trends = self.topology.convergence_diagnostic(
            lambda n: sawtooth(int(n), samples), f_zero(samples), [float(n) for n in sawtooth_n], points, plan
        )
        for row in saw_rows:
            n = int(row["t"])
            outcome.add_row(family="sawtooth", **row)
            outcome.check(Verdict.at_most(
                f"sawtooth sup n={n}",
                row["uniform_dist"],
                1.0 / (2 * n) + 1e-12,
                "‖s_n‖_∞ ≤ 1/(2n)",
            ))
            outcome.check(Verdict.at_least(f"sawtooth MT n={n}", row["mt_lip"], 0.99, "mt_lip(s_n, 0) stays near 1"))

        outcome.check(Verdict.holds("sawtooth does not converge in MT", not saw_trends["mt_convergent"].converges, "s_n ↛ 0 in MT"))
        outcome.metadata["sawtooth_trends"] = {name: asdict(v) for name, v in saw_trends.items()}
        return outcome
