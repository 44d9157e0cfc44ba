from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import ValidationException
from src.core.logger import app_logger
from src.domain.entities.lip_map import LipMap, SamplingPlan, linear
from src.domain.entities.metric_space import as_points
from src.domain.entities.report import BtDistanceReport, ConvergenceVerdict, MtDistanceReport
from src.infrastructure.frameworks.free_space_service import FreeSpaceService
from src.infrastructure.frameworks.lipschitz_service import LipschitzService

MapFamily = Callable[[float], LipMap]

DIAGNOSTIC_COLUMNS = ["t", "uniform_dist", "mt_sup", "mt_lip", "mt_total", "lip_estimate"]


def three_point_trend(values: Sequence[float], atol: float = 1e-12) -> ConvergenceVerdict:
    """
    Classify the tail v1, v2, v3 of a sweep: converging when v3 is already
    within atol of zero, or when the tail is nonincreasing and its Aitken
    extrapolation is small against v1.
    """
    tail = tuple(float(v) for v in values[-3:])
    if len(tail) < 3:
        raise ValidationException("Trend needs at least three parameters", details={"given": len(tail)})
    v1, v2, v3 = tail
    if v3 <= atol:
        return ConvergenceVerdict(True, tail, 0.0)
    if not (v1 >= v2 >= v3):
        return ConvergenceVerdict(False, tail, None)
    denominator = v3 - 2.0 * v2 + v1
    if abs(denominator) <= atol:
        # arithmetic tail, no Aitken limit
        return ConvergenceVerdict(True, tail, None)
    limit = v3 - (v3 - v2) ** 2 / denominator
    return ConvergenceVerdict(abs(limit) <= 0.1 * v1, tail, float(limit))


class LipTopologyService:
    """Service pour les distances BT et MT entre applications lipschitziennes"""

    def __init__(self, lipschitz: LipschitzService, free_space: FreeSpaceService):
        self.lipschitz = lipschitz
        self.free_space = free_space

    @staticmethod
    def _samples(f: LipMap, samples: Optional[np.ndarray]) -> np.ndarray:
        points = as_points(samples, f.domain.dim) if samples is not None else f.samples()
        if len(points) == 0:
            raise ValidationException(f"No sample points for {f.name}")
        return points

    def uniform_distance(self, f: LipMap, g: LipMap, samples: Optional[np.ndarray] = None) -> Tuple[float, int]:
        """max_a d(f(a), g(a)) with the realizing sample index"""
        points = self._samples(f, samples)
        gaps = f.target.distance(f(points), g(points))
        index = int(np.argmax(gaps))
        return float(gaps[index]), index

    def bt_distance(
        self,
        f: LipMap,
        g: LipMap,
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> BtDistanceReport:
        """‖f − g‖_∞ + Lip(f − g) on the samples"""
        difference = f - g
        points = self._samples(f, samples)
        norms = f.target.distance(difference(points), np.zeros((len(points), f.target.dim)))
        sup_index = int(np.argmax(norms))
        lip, pair = 0.0, None
        if len(np.unique(points, axis=0)) >= 2:
            estimate = self.lipschitz.estimate(difference, plan, points)
            lip, pair = estimate.value, estimate.pair
        return BtDistanceReport(float(norms[sup_index]), lip, sup_index, pair)

    def mt_distance(
        self,
        f: LipMap,
        g: LipMap,
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> MtDistanceReport:
        """
        supPart: max over samples of ‖δ_f(a) − δ_g(a)‖.
        lipPart: max over sample pairs of the four-point norm of
        δ_f(a) − δ_g(a) − δ_f(b) + δ_g(b), divided by d(a, b).
        """
        points = self._samples(f, samples)
        fa, ga = f(points), g(points)
        sup_values = f.target.distance(fa, ga)
        sup_index = int(np.argmax(sup_values))

        lip, pair = 0.0, None
        left, right = (plan or SamplingPlan()).index_pairs(len(points))
        if len(left):
            spacing = f.domain.distance(points[left], points[right])
            valid = spacing > 0.0
            if valid.any():
                i, j = left[valid], right[valid]
                kernels = self.free_space.four_point_norm(f.target, fa[i], ga[i], fa[j], ga[j])
                ratios = kernels / spacing[valid]
                best = int(np.argmax(ratios))
                lip, pair = float(ratios[best]), (int(i[best]), int(j[best]))

        app_logger.debug(f"MT distance {f.name} vs {g.name}: sup={sup_values[sup_index]:.6g} lip={lip:.6g}")
        return MtDistanceReport(float(sup_values[sup_index]), lip, sup_index, pair)

    def convergence_diagnostic(
        self,
        family: MapFamily,
        limit: LipMap,
        params: Sequence[float],
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> Tuple[List[Dict[str, float]], Dict[str, ConvergenceVerdict]]:
        """Per-parameter rows (t, uniform, MT parts, Lipschitz estimate) and CO / MT trend verdicts"""
        rows = []
        points = self._samples(limit, samples)
        for t in params:
            f_t = family(float(t))
            uniform, _ = self.uniform_distance(f_t, limit, points)
            mt = self.mt_distance(f_t, limit, points, plan)
            lip = self.lipschitz.estimate_value(f_t, plan, points) if len(points) > 1 else 0.0
            rows.append({
                "t": float(t),
                "uniform_dist": uniform,
                "mt_sup": mt.sup_part,
                "mt_lip": mt.lip_part,
                "mt_total": mt.total,
                "lip_estimate": lip,
            })
        verdicts = {
            "co_convergent": three_point_trend([r["uniform_dist"] for r in rows]),
            "mt_convergent": three_point_trend([r["mt_total"] for r in rows]),
        }
        return rows, verdicts

    def c1_distance(self, f: LipMap, g: LipMap, samples: np.ndarray) -> float:
        """sup ‖f − g‖ + sup ‖f′ − g′‖ from the derivative oracles"""
        if f.derivative is None or g.derivative is None:
            raise ValidationException(f"C1 distance needs derivative oracles ({f.name}, {g.name})")
        points = as_points(samples, f.domain.dim)
        values = np.abs(f(points) - g(points))
        slopes = np.abs(np.asarray(f.derivative(points), dtype=float) - np.asarray(g.derivative(points), dtype=float))
        return float(np.max(np.linalg.norm(values.reshape(len(points), -1), axis=1))) + float(
            np.max(np.linalg.norm(slopes.reshape(len(points), -1), axis=1))
        )

    def c1_comparison(
        self,
        family: MapFamily,
        limit: LipMap,
        params: Sequence[float],
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> List[Dict[str, float]]:
        """Rows (t, c1_dist, mt_total, ratio) along a family of C1 maps"""
        rows = []
        points = self._samples(limit, samples)
        for t in params:
            f_t = family(float(t))
            c1 = self.c1_distance(f_t, limit, points)
            mt = self.mt_distance(f_t, limit, points, plan)
            rows.append({
                "t": float(t),
                "c1_dist": c1,
                "mt_sup": mt.sup_part,
                "mt_lip": mt.lip_part,
                "mt_total": mt.total,
                "ratio": mt.total / c1 if c1 > 0.0 else 0.0,
            })
        return rows

    def linear_postcomposition(
        self,
        matrix: np.ndarray,
        f: LipMap,
        g: LipMap,
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> Tuple[float, float]:
        """(bt(A∘f, A∘g).total, ‖A‖ · bt(f, g).total)"""
        a = linear(matrix, domain=f.target)
        composed = self.bt_distance(a.compose(f), a.compose(g), samples, plan)
        original = self.bt_distance(f, g, samples, plan)
        return composed.total, a.lipschitz * original.total

    def addition_diagnostic(
        self,
        f1: LipMap,
        g1: LipMap,
        f2: LipMap,
        g2: LipMap,
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> Dict[str, float]:
        """mt(f1 + g1, f2 + g2) recorded against bt(f1, f2) + bt(g1, g2)"""
        mt = self.mt_distance(f1 + g1, f2 + g2, samples, plan)
        bt = self.bt_distance(f1, f2, samples, plan).total + self.bt_distance(g1, g2, samples, plan).total
        return {"mt_sum": mt.total, "bt_terms": bt, "ratio": mt.total / bt if bt > 0.0 else 0.0}

    def bilipschitz_comparison(
        self,
        embedding: LipMap,
        lower: float,
        upper: float,
        f: LipMap,
        g: LipMap,
        samples: Optional[np.ndarray] = None,
        plan: Optional[SamplingPlan] = None,
    ) -> Dict[str, Any]:
        """
        For ι with lower·d <= |ι(x) − ι(y)| <= upper·d, compare bt(ι∘f, ι∘g)
        with mt(f, g): lower·mt.sup <= bt.sup <= upper·mt.sup.
        """
        bt = self.bt_distance(embedding.compose(f), embedding.compose(g), samples, plan)
        mt = self.mt_distance(f, g, samples, plan)
        slack = 1e-12 * max(1.0, mt.sup_part)
        return {
            "bt": bt,
            "mt": mt,
            "upper_holds": bt.sup_part <= upper * mt.sup_part + slack,
            "lower_holds": lower * mt.sup_part <= bt.sup_part + slack,
        }
