from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from src.core.exceptions import ValidationException


@dataclass(frozen=True, eq=False)
class FiniteComplex:
    """
    Chain complex C_0 <- C_1 <- ... <- C_N of finite-dimensional real spaces.

    boundaries[k - 1] is ∂_k : C_k → C_{k-1}, a dims[k-1] × dims[k] matrix.
    """
    dims: Tuple[int, ...]
    boundaries: Tuple[np.ndarray, ...] = field(repr=False)
    name: str = "complex"

    def __post_init__(self):
        mats = tuple(np.atleast_2d(np.asarray(m, dtype=float)) if np.size(m) else np.zeros((self.dims[i], self.dims[i + 1]))
                     for i, m in enumerate(self.boundaries))
        object.__setattr__(self, "boundaries", mats)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(mats) != len(self.dims) - 1:
            raise ValidationException(
                f"{len(self.dims)} chain groups need {len(self.dims) - 1} boundary maps, got {len(mats)}"
            )
        for k, matrix in enumerate(mats, start=1):
            expected = (self.dims[k - 1], self.dims[k])
            if matrix.shape != expected:
                raise ValidationException(
                    f"∂_{k} has shape {matrix.shape}, expected {expected}",
                    details={"degree": k},
                )

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def boundary(self, k: int) -> np.ndarray:
        """∂_k, with the zero maps outside 1..N"""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k - 1]
        rows = self.dims[k - 1] if 1 <= k <= self.top_degree + 1 else 0
        cols = self.dims[k] if 0 <= k <= self.top_degree else 0
        return np.zeros((rows, cols))

    def defect(self) -> float:
        """max |∂_k ∂_{k+1}|"""
        worst = 0.0
        for k in range(1, self.top_degree):
            product = self.boundaries[k - 1] @ self.boundaries[k]
            if product.size:
                worst = max(worst, float(np.max(np.abs(product))))
        return worst

    def conjugated(self, bases: Sequence[np.ndarray]) -> "FiniteComplex":
        """A_{k-1} ∂_k A_k^{-1} for invertible A_k on each C_k"""
        mats = [bases[k - 1] @ self.boundaries[k - 1] @ np.linalg.inv(bases[k]) for k in range(1, self.top_degree + 1)]
        return FiniteComplex(self.dims, tuple(mats), name=f"{self.name}~")

    # === Builders ===

    @classmethod
    def zero(cls, dims: Sequence[int]) -> "FiniteComplex":
        dims = tuple(dims)
        return cls(dims, tuple(np.zeros((dims[k - 1], dims[k])) for k in range(1, len(dims))), name="zero")

    @classmethod
    def alternating_identity(cls, n: int, top_degree: int) -> "FiniteComplex":
        """All C_k = R^n, ∂_k = 0 for odd k and the identity for even k"""
        mats: List[np.ndarray] = [np.eye(n) if k % 2 == 0 else np.zeros((n, n)) for k in range(1, top_degree + 1)]
        return cls(tuple([n] * (top_degree + 1)), tuple(mats), name=f"alternating-identity[{n}]")

    @classmethod
    def simplicial_circle(cls) -> "FiniteComplex":
        # edges [0,1], [1,2], [0,2]
        incidence = np.array([
            [-1.0, 0.0, -1.0],
            [1.0, -1.0, 0.0],
            [0.0, 1.0, 1.0],
        ])
        return cls((3, 3), (incidence,), name="simplicial-circle")


@dataclass(frozen=True)
class HomologyResult:
    """Betti numbers with the singular-value evidence behind each rank"""
    betti: Tuple[int, ...]
    ranks: Tuple[int, ...]
    spectral_gaps: Tuple[float, ...]
    reduced: bool
    defect: float
