from typing import List, Optional, Tuple

import numpy as np

from src.configs import get_settings
from src.core.exceptions import NotAComplexException
from src.core.logger import app_logger
from src.domain.entities.finite_complex import FiniteComplex, HomologyResult

settings = get_settings()


class HomologyService:
    """Service pour l'homologie des complexes de dimension finie (rang par SVD)"""

    def __init__(
        self,
        relative_threshold: float = settings.RANK_RELATIVE_THRESHOLD,
        complex_tolerance: float = settings.COMPLEX_TOLERANCE,
    ):
        self.relative_threshold = relative_threshold
        self.complex_tolerance = complex_tolerance

    def rank(self, matrix: np.ndarray) -> Tuple[int, float]:
        """(rank, spectral gap) with singular values below threshold·σ_max counted as zero"""
        if matrix.size == 0:
            return 0, 1.0
        singular = np.linalg.svd(matrix, compute_uv=False)
        top = float(singular[0]) if len(singular) else 0.0
        if top == 0.0:
            return 0, 1.0
        rank = int(np.sum(singular > self.relative_threshold * top))
        next_value = float(singular[rank]) if rank < len(singular) else 0.0
        return rank, (float(singular[rank - 1]) - next_value) / top

    def homology(self, complex_: FiniteComplex, reduced: bool = False) -> HomologyResult:
        """betti_k = dim C_k − rank ∂_k − rank ∂_{k+1}; reduced mode uses ∂_0 = augmentation"""
        defect = complex_.defect()
        if reduced and complex_.top_degree >= 1:
            augmentation = np.ones((1, complex_.dims[0]))
            defect = max(defect, float(np.max(np.abs(augmentation @ complex_.boundary(1)), initial=0.0)))
        if defect > self.complex_tolerance:
            raise NotAComplexException(
                f"∂∂ = {defect:.3g} exceeds {self.complex_tolerance:.3g} on {complex_.name}",
                defect=defect,
                tolerance=self.complex_tolerance,
            )

        ranks: List[int] = []
        gaps: List[float] = []
        for k in range(complex_.top_degree + 2):
            if k == 0:
                matrix = np.ones((1, complex_.dims[0])) if reduced else np.zeros((0, complex_.dims[0]))
            else:
                matrix = complex_.boundary(k)
            rank, gap = self.rank(matrix)
            ranks.append(rank)
            gaps.append(gap)

        betti = tuple(
            complex_.dims[k] - ranks[k] - ranks[k + 1]
            for k in range(complex_.top_degree + 1)
        )
        app_logger.debug(f"Homology of {complex_.name} (reduced={reduced}): {betti}")
        return HomologyResult(
            betti=betti,
            ranks=tuple(ranks[: complex_.top_degree + 1]),
            spectral_gaps=tuple(gaps[: complex_.top_degree + 1]),
            reduced=reduced,
            defect=defect,
        )

    @staticmethod
    def random_conjugation(
        complex_: FiniteComplex,
        rng: np.random.Generator,
        bases: Optional[List[np.ndarray]] = None,
    ) -> FiniteComplex:
        """Conjugate every ∂_k by random well-conditioned invertible matrices"""
        if bases is None:
            bases = []
            for dim in complex_.dims:
                q, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
                bases.append(q @ np.diag(rng.uniform(0.5, 2.0, size=dim)))
        return complex_.conjugated(bases)
