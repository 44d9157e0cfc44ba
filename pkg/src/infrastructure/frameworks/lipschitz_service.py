from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import EmptySampleException, ValidationException
from src.core.logger import app_logger
from src.domain.entities.lip_map import LipMap, SamplingPlan
from src.domain.entities.metric_space import MetricSpace, as_points
from src.domain.entities.report import LipschitzEstimate

PAIR_CHUNK = 1 << 18

class LipschitzService:
    """Service pour estimer les constantes de Lipschitz par échantillonnage"""

    def estimate(
        self,
        f: LipMap,
        plan: Optional[SamplingPlan] = None,
        points: Optional[np.ndarray] = None,
    ) -> LipschitzEstimate:
        """
        max dist(f(a), f(b)) / dist(a, b) over the plan's pairs of sample points.

        Pairs at distance zero are skipped. Raises EmptySampleException when
        the sample holds fewer than two distinct points.
        """
        plan = plan or SamplingPlan()
        samples = as_points(points, f.domain.dim) if points is not None else f.samples()
        distinct = len(np.unique(samples, axis=0)) if len(samples) else 0
        if distinct < 2:
            raise EmptySampleException(
                f"Lipschitz estimate of {f.name} needs two distinct sample points",
                actual=distinct,
            )

        values = f(samples)
        left, right = plan.index_pairs(len(samples))
        best, best_pair, skipped = 0.0, None, 0
        for start in range(0, len(left), PAIR_CHUNK):
            i = left[start:start + PAIR_CHUNK]
            j = right[start:start + PAIR_CHUNK]
            denominators = f.domain.distance(samples[i], samples[j])
            numerators = f.target.distance(values[i], values[j])
            valid = denominators > 0.0
            skipped += int(np.count_nonzero(~valid))
            if not valid.any():
                continue
            ratios = np.zeros_like(numerators)
            ratios[valid] = numerators[valid] / denominators[valid]
            position = int(np.argmax(ratios))
            if best_pair is None or ratios[position] > best:
                best = float(ratios[position])
                best_pair = (int(i[position]), int(j[position]))

        app_logger.debug(f"Lipschitz estimate of {f.name}: {best:.6g} over {len(left)} pairs ({skipped} skipped)")
        return LipschitzEstimate(value=best, pair=best_pair, n_pairs=int(len(left)), skipped_pairs=skipped)

    def estimate_value(self, f: LipMap, plan: Optional[SamplingPlan] = None, points: Optional[np.ndarray] = None) -> float:
        return self.estimate(f, plan, points).value

    def snowflake_curve_diagnostic(
        self,
        sigma: LipMap,
        meshes: Sequence[float],
        anchors: int = 17,
    ) -> List[Tuple[float, float]]:
        """
        Lipschitz estimate of a curve [0,1] → X at scale h, from the pairs
        (s, s + h) with s on `anchors` evenly spaced points of [0, 1 − h].
        """
        meshes = [float(h) for h in meshes]
        if any(h <= 0.0 or h >= 1.0 for h in meshes):
            raise ValidationException("Meshes must lie in (0, 1)", details={"meshes": meshes})
        if any(a <= b for a, b in zip(meshes, meshes[1:])):
            raise ValidationException("Meshes must be strictly decreasing", details={"meshes": meshes})

        table = []
        for h in meshes:
            starts = np.linspace(0.0, 1.0 - h, anchors)
            points = np.concatenate([starts, starts + h]).reshape(-1, 1)
            plan = SamplingPlan.explicit(np.column_stack([np.arange(anchors), np.arange(anchors) + anchors]))
            estimate = self.estimate(sigma, plan, points)
            table.append((h, estimate.value))
            app_logger.debug(f"Snowflake diagnostic {sigma.name} at h={h:g}: {estimate.value:.6g}")
        return table

    def metric_axiom_defect(
        self,
        space: MetricSpace,
        points: np.ndarray,
        n_triples: int = 1000,
        seed: int = 0,
    ) -> float:
        """Largest violation of the metric axioms on random triples of the given points"""
        points = as_points(points, space.dim)
        rng = np.random.default_rng(seed)
        x, y, z = (points[rng.integers(0, len(points), size=n_triples)] for _ in range(3))
        dxy = space.distance(x, y)
        dyx = space.distance(y, x)
        dxz = space.distance(x, z)
        dyz = space.distance(y, z)
        dxx = space.distance(x, x)
        defects = [
            np.abs(dxx),
            np.abs(dxy - dyx),
            np.maximum(0.0, dxz - dxy - dyz),
            np.maximum(0.0, -dxy),
        ]
        return float(max(np.max(d) for d in defects))
