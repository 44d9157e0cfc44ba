import numpy as np
import ot

from src.core.exceptions import ValidationException
from src.core.logger import app_logger
from src.domain.entities.signed_measure import SignedMeasure

class TransportService:
    """Service pour le chemin rapide par transport optimal (POT)"""

    def __init__(self, max_iterations: int = 1_000_000):
        self.max_iterations = max_iterations

    def balanced_cost(self, measure: SignedMeasure) -> float:
        """
        Earth mover cost between the positive and negative parts of a balanced
        measure, i.e. its free-space norm.
        """
        if measure.is_zero:
            return 0.0
        if abs(measure.total_mass) > 1e-12 * max(1.0, measure.total_variation):
            raise ValidationException(
                "Transport cost needs a balanced measure",
                details={"total_mass": measure.total_mass},
            )
        positive = measure.weights > 0
        negative = measure.weights < 0
        if not positive.any() or not negative.any():
            return 0.0
        sources = measure.weights[positive]
        sinks = -measure.weights[negative]
        # exact balance keeps the network simplex feasible
        sinks = sinks * (sources.sum() / sinks.sum())
        cost = measure.carrier.pairwise(measure.points[positive], measure.points[negative])
        value = float(ot.emd2(sources, sinks, np.ascontiguousarray(cost), numItermax=self.max_iterations))
        app_logger.debug(f"Transport cost over {len(sources)}x{len(sinks)} atoms: {value:.12g}")
        return value
