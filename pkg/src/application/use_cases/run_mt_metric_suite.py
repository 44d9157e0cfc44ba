from dataclasses import replace
from typing import Tuple

import numpy as np

from src.core.logger import app_logger
from src.domain.entities.lip_map import LipMap, PairPlanKind, SamplingPlan, constant
from src.domain.entities.metric_space import (
    CircleSpace,
    EuclideanSpace,
    MetricSpace,
    PointCloud,
    ProductSpace,
    SnowflakeSpace,
)
from src.domain.entities.report import SuiteOutcome, Verdict
from src.domain.entities.signed_measure import FreeSpaceElement
from src.infrastructure.frameworks.families import (
    REAL_LINE,
    UNIT_INTERVAL,
    affine_map,
    interval_grid,
    random_piecewise_linear,
)
from src.infrastructure.frameworks.free_space_service import FreeSpaceService
from src.infrastructure.frameworks.lip_topology_service import LipTopologyService
from src.infrastructure.frameworks.lipschitz_service import LipschitzService

NORM_TOLERANCE = 1e-8
MAP_TOLERANCE = 1e-9


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


class RunMtMetricSuiteUseCase:
    """Use case pour la norme d'Arens–Eells et les propriétés de la métrique MT"""

    suite = "mt-metric"
    description = "Arens–Eells norms of finitely supported elements and the MT distance on Lipschitz maps"
    reference = (
        "‖δ_p − δ_q‖ = d(p, q), the four-point kernel formula, isometric inclusions of free spaces, "
        "and MT is a metric compatible with composition, products and BT on normed targets"
    )
    columns = ["check", "instances", "worst", "tolerance"]

    def __init__(self, free_space: FreeSpaceService, topology: LipTopologyService, lipschitz: LipschitzService):
        self.free_space = free_space
        self.topology = topology
        self.lipschitz = lipschitz

    def execute(
        self,
        dim: int = 2,
        n_four_point: int = 1000,
        n_dirac: int = 1000,
        n_inclusion: int = 100,
        n_map_pairs: int = 50,
        n_norm_checks: int = 50,
        map_samples: int = 65,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Vérifie la norme AE puis la métrique MT

        Workflow :
        1. Noyau à quatre points, Dirac, inclusion isométrique
        2. Axiomes de norme et applications structurelles de l'espace libre
        3. Propriétés de MT sur des applications affines par morceaux
        4. Défauts d'axiomes métriques des espaces porteurs
        """
        app_logger.info(f"Suite {self.suite}: dim={dim} seed={seed}")
        rng = np.random.default_rng(seed)
        outcome = SuiteOutcome(self.suite, list(self.columns))
        space = EuclideanSpace(dim)

        self._four_point(outcome, rng, space, n_four_point)
        self._dirac(outcome, rng, space, n_dirac)
        self._inclusion(outcome, rng, space, n_inclusion)
        self._norm_axioms(outcome, rng, space, n_norm_checks)
        self._structural_maps(outcome, rng, space, n_norm_checks)
        self._map_properties(outcome, rng, n_map_pairs, map_samples)
        self._comparisons(outcome, rng, n_map_pairs, map_samples)
        self._metric_axioms(outcome, rng, dim, seed)

        app_logger.info(f"Suite {self.suite}: {sum(v.passed for v in outcome.verdicts)}/{len(outcome.verdicts)} checks passed")
        return outcome

    # === Free space ===

    def _element(self, rng: np.random.Generator, space: MetricSpace, atoms: int) -> FreeSpaceElement:
        return FreeSpaceElement.of(space, rng.normal(size=(atoms, space.dim)), rng.normal(size=atoms))

    def _four_point(self, outcome: SuiteOutcome, rng: np.random.Generator, space: EuclideanSpace, n: int) -> None:
        p1, p2, p3, p4 = (rng.normal(size=(n, space.dim)) for _ in range(4))
        kernels = self.free_space.four_point_norm(space, p1, p2, p3, p4)
        lp_worst, transport_worst = 0.0, 0.0
        for i in range(n):
            m = FreeSpaceElement.of(space, np.vstack([p1[i], p2[i], p3[i], p4[i]]), [1.0, -1.0, -1.0, 1.0])
            lp_worst = max(lp_worst, _relative(kernels[i], self.free_space.ae_norm(m, "lp")))
            transport_worst = max(transport_worst, _relative(kernels[i], self.free_space.ae_norm(m, "transport")))
        outcome.record("four-point kernel vs LP", n, lp_worst, NORM_TOLERANCE, "four-point norm is the cheaper matching")
        outcome.record("four-point kernel vs transport", n, transport_worst, NORM_TOLERANCE, "LP and transport norms agree")

    def _dirac(self, outcome: SuiteOutcome, rng: np.random.Generator, space: EuclideanSpace, n: int) -> None:
        worst = 0.0
        for _ in range(n):
            p, q = rng.normal(size=(2, space.dim))
            norm = self.free_space.norm_of(space, np.vstack([p, q]), [1.0, -1.0])
            worst = max(worst, _relative(norm, self.free_space.dirac_norm(space, p, q)))
        outcome.record("dirac difference", n, worst, NORM_TOLERANCE, "‖δ_p − δ_q‖ = d(p, q)")

    def _inclusion(self, outcome: SuiteOutcome, rng: np.random.Generator, space: EuclideanSpace, n: int) -> None:
        worst = 0.0
        for _ in range(n):
            small = PointCloud(space, rng.normal(size=(8, space.dim)))
            large = small.including(rng.normal(size=(6, space.dim)))
            chosen = rng.choice(len(small.points), size=5, replace=False)
            weights = rng.normal(size=5)
            base = small.points[0]
            inner = FreeSpaceElement.of(small, small.points[chosen], weights, base)
            outer = FreeSpaceElement.of(large, small.points[chosen], weights, base)
            worst = max(worst, _relative(
                self.free_space.ae_norm(inner, over_carrier=True),
                self.free_space.ae_norm(outer, over_carrier=True),
            ))
        outcome.record("subspace inclusion", n, worst, NORM_TOLERANCE, "F(A) → F(X) is an isometry")

    def _norm_axioms(self, outcome: SuiteOutcome, rng: np.random.Generator, space: EuclideanSpace, n: int) -> None:
        homogeneity, triangle = 0.0, 0.0
        for _ in range(n):
            m1, m2 = self._element(rng, space, 5), self._element(rng, space, 5)
            c = float(rng.normal()) * 3.0
            n1, n2 = self.free_space.ae_norm(m1), self.free_space.ae_norm(m2)
            homogeneity = max(homogeneity, _relative(self.free_space.ae_norm(m1 * c), abs(c) * n1))
            triangle = max(triangle, self.free_space.ae_norm(m1 + m2) - n1 - n2)
        outcome.record("norm homogeneity", n, homogeneity, NORM_TOLERANCE, "‖c m‖ = |c| ‖m‖")
        outcome.record("norm triangle", n, max(triangle, 0.0), MAP_TOLERANCE, "‖m1 + m2‖ ≤ ‖m1‖ + ‖m2‖")

    def _structural_maps(self, outcome: SuiteOutcome, rng: np.random.Generator, space: EuclideanSpace, n: int) -> None:
        isometry, lipschitz, product, rebase = 0.0, 0.0, 0.0, 0.0
        for _ in range(n):
            m = self._element(rng, space, 5)
            norm = self.free_space.ae_norm(m)

            q, _ = np.linalg.qr(rng.normal(size=(space.dim, space.dim)))
            c = float(rng.uniform(0.5, 2.0))
            similarity = affine_map(c * q, rng.normal(size=space.dim))
            pushed = self.free_space.ae_norm(self.free_space.pushforward_dual(similarity, m))
            isometry = max(isometry, _relative(pushed, c * norm))

            phi = affine_map(rng.normal(size=(space.dim, space.dim)), rng.normal(size=space.dim))
            pushed = self.free_space.ae_norm(self.free_space.pushforward_dual(phi, m))
            lipschitz = max(lipschitz, pushed - phi.lipschitz * norm)

            other = self._element(rng, EuclideanSpace(1), 4)
            embedded = self.free_space.ae_norm(self.free_space.product_embed(m, other))
            product = max(product, _relative(embedded, norm + self.free_space.ae_norm(other)))

            moved = self.free_space.rebase(m, rng.normal(size=space.dim))
            rebase = max(rebase, _relative(self.free_space.ae_norm(moved), norm))

        outcome.record("pushforward by a similarity", n, isometry, NORM_TOLERANCE, "‖φ#m‖ = c ‖m‖ for a c-similarity")
        outcome.record("pushforward bound", n, max(lipschitz, 0.0), NORM_TOLERANCE, "‖φ#m‖ ≤ Lip(φ) ‖m‖")
        outcome.record("product embedding", n, product, NORM_TOLERANCE, "‖(μ, ν)‖ = ‖μ‖ + ‖ν‖ on the sum-metric product")
        outcome.record("change of base point", n, rebase, NORM_TOLERANCE, "rebasing preserves the norm")

    # === MT on maps ===

    def _pair(self, rng: np.random.Generator, samples: int) -> Tuple[LipMap, LipMap]:
        return random_piecewise_linear(rng, samples=samples), random_piecewise_linear(rng, samples=samples)

    def _map_properties(self, outcome: SuiteOutcome, rng: np.random.Generator, n: int, samples: int) -> None:
        points = interval_grid(samples)
        plan = SamplingPlan(kind=PairPlanKind.ALL)
        sine = LipMap(name="sin", domain=REAL_LINE, target=REAL_LINE, fn=np.sin, lipschitz=1.0)
        wide = interval_grid(2 * (samples - 1) + 1)
        tent = LipMap(
            name="tent",
            domain=UNIT_INTERVAL,
            target=UNIT_INTERVAL,
            fn=lambda w: 1.0 - np.abs(2.0 * w - 1.0),
            sample=wide,
            lipschitz=2.0,
        )
        worst = dict.fromkeys(
            ["symmetry", "triangle", "sup", "lip", "post", "pre", "product"], 0.0
        )
        varying_gap = 0.0

        for _ in range(n):
            f, g = self._pair(rng, samples)
            h = random_piecewise_linear(rng, samples=samples)
            fg = self.topology.mt_distance(f, g, points, plan)
            gf = self.topology.mt_distance(g, f, points, plan)
            worst["symmetry"] = max(worst["symmetry"], _relative(fg.total, gf.total))

            fh = self.topology.mt_distance(f, h, points, plan).total
            gh = self.topology.mt_distance(g, h, points, plan).total
            worst["triangle"] = max(worst["triangle"], fh - fg.total - gh)

            uniform, _ = self.topology.uniform_distance(f, g, points)
            worst["sup"] = max(worst["sup"], abs(fg.sup_part - uniform))

            lip_f = self.lipschitz.estimate_value(f, plan, points)
            lip_g = self.lipschitz.estimate_value(g, plan, points)
            worst["lip"] = max(worst["lip"], abs(lip_f - lip_g) - fg.lip_part)

            post = self.topology.mt_distance(sine.compose(f), sine.compose(g), points, plan).total
            worst["post"] = max(worst["post"], post - sine.lipschitz * fg.total)

            pre = self.topology.mt_distance(f.compose(tent), g.compose(tent), wide, plan).total
            worst["pre"] = max(worst["pre"], pre - max(1.0, tent.lipschitz) * fg.total)

            # f × h against g × h, first on A × {b0}, then along a varying B-coordinate
            pairs = ProductSpace(f.domain, h.domain)
            lifted = (f.times(h), g.times(h))
            b0 = float(rng.uniform())
            product = self.topology.mt_distance(*lifted, pairs.join(points, [[b0]]), plan).total
            worst["product"] = max(worst["product"], _relative(product, fg.total))
            varying = self.topology.mt_distance(*lifted, pairs.join(points, points[::-1]), plan).total
            varying_gap = max(varying_gap, varying - fg.total)

        outcome.record("MT symmetry", n, worst["symmetry"], 1e-12, "mt(f, g) = mt(g, f)")
        outcome.record("MT triangle", n, max(worst["triangle"], 0.0), 2e-9, "mt(f, h) ≤ mt(f, g) + mt(g, h)")
        outcome.record("MT sup part is uniform", n, worst["sup"], MAP_TOLERANCE, "supPart = ‖f − g‖_∞")
        outcome.record("MT lip part dominates Lip gap", n, max(worst["lip"], 0.0), 1e-12, "lipPart ≥ |Lip f − Lip g|")
        outcome.record("post-composition", n, max(worst["post"], 0.0), NORM_TOLERANCE, "mt(ψ∘f, ψ∘g) ≤ Lip(ψ) mt(f, g)")
        outcome.record("pre-composition", n, max(worst["pre"], 0.0), MAP_TOLERANCE, "mt(f∘ψ, g∘ψ) ≤ max(1, Lip ψ) mt(f, g)")
        outcome.record("product with a fixed factor", n, worst["product"], 1e-12, "mt(f×h, g×h) = mt(f, g) on A × {b0}")
        outcome.metadata["product_varying_b_excess"] = varying_gap

        single = points[:1]
        f, g = self._pair(rng, samples)
        report = self.topology.mt_distance(f, g, single, plan)
        expected = abs(float(f(single)[0, 0] - g(single)[0, 0]))
        outcome.record("singleton domain", 1, max(report.lip_part, _relative(report.sup_part, expected)), 1e-15, "one point: MT is the target distance")

        c1, c2 = rng.normal(size=2)
        constants = [constant(UNIT_INTERVAL, REAL_LINE, c, sample=points) for c in (c1, c2)]
        report = self.topology.mt_distance(*constants, points, plan)
        outcome.record(
            "constant maps",
            1,
            max(report.lip_part, abs(report.sup_part - abs(c1 - c2))),
            1e-15,
            "constants: MT is the distance of the values",
        )

    def _comparisons(self, outcome: SuiteOutcome, rng: np.random.Generator, n: int, samples: int) -> None:
        points = interval_grid(samples)
        plan = SamplingPlan(kind=PairPlanKind.ALL)
        sup_gap, lip_excess, linear_excess = 0.0, 0.0, 0.0
        ratios, additions = [], []
        for _ in range(n):
            f, g = self._pair(rng, samples)
            bt = self.topology.bt_distance(f, g, points, plan)
            mt = self.topology.mt_distance(f, g, points, plan)
            sup_gap = max(sup_gap, abs(bt.sup_part - mt.sup_part))
            lip_excess = max(lip_excess, bt.lip_part - mt.lip_part)
            if bt.lip_part > 0.0:
                ratios.append(mt.lip_part / bt.lip_part)

            lhs, rhs = self.topology.linear_postcomposition(rng.normal(size=(2, 1)), f, g, points, plan)
            linear_excess = max(linear_excess, lhs - rhs)

            f2, g2 = self._pair(rng, samples)
            additions.append(self.topology.addition_diagnostic(f, g, f2, g2, points, plan))

        outcome.record("BT and MT sup parts", n, sup_gap, 1e-12, "on normed targets the sup parts agree")
        outcome.record("BT lip part below MT", n, max(lip_excess, 0.0), 1e-12, "Lip(f − g) ≤ lipPart")
        outcome.record("linear post-composition", n, max(linear_excess, 0.0), MAP_TOLERANCE, "bt(A∘f, A∘g) ≤ ‖A‖ bt(f, g)")
        outcome.metadata["mt_over_bt_lip"] = {"min": min(ratios, default=None), "max": max(ratios, default=None)}
        outcome.metadata["addition"] = {
            "max_ratio": max((a["ratio"] for a in additions), default=None),
            "instances": len(additions),
        }

        circle = CircleSpace()
        embedding = LipMap(
            name="circle→R2",
            domain=circle,
            target=EuclideanSpace(2),
            fn=lambda theta: np.column_stack([np.cos(theta[:, 0]), np.sin(theta[:, 0])]),
            lipschitz=1.0,
        )
        failures = 0
        for _ in range(n):
            f, g = (
                replace(random_piecewise_linear(rng, samples=samples), target=circle)
                for _ in range(2)
            )
            comparison = self.topology.bilipschitz_comparison(embedding, 2.0 / np.pi, 1.0, f, g, points, plan)
            failures += int(not (comparison["upper_holds"] and comparison["lower_holds"]))
        outcome.check(Verdict.holds(
            "bi-Lipschitz embedding of the circle",
            failures == 0,
            "(2/π) mt.sup ≤ bt(ι∘f, ι∘g).sup ≤ mt.sup",
            measured=failures,
        ))

    def _metric_axioms(self, outcome: SuiteOutcome, rng: np.random.Generator, dim: int, seed: int) -> None:
        cases = [
            (EuclideanSpace(dim), rng.normal(size=(200, dim))),
            (CircleSpace(), rng.uniform(0.0, 2.0 * np.pi, size=(200, 1))),
            (SnowflakeSpace(EuclideanSpace(dim), 0.5), rng.normal(size=(200, dim))),
            (ProductSpace(EuclideanSpace(dim), CircleSpace()), np.hstack([rng.normal(size=(200, dim)), rng.uniform(0.0, 2.0 * np.pi, size=(200, 1))])),
        ]
        for space, points in cases:
            defect = self.lipschitz.metric_axiom_defect(space, points, n_triples=1000, seed=seed)
            outcome.record(f"metric axioms on {space.name}", 1000, defect, 1e-12, "carrier distances form a metric")
