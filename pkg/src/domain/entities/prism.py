from dataclasses import dataclass
from typing import List

import numpy as np

from src.domain.entities.simplex_domain import SimplexDomain


@dataclass(frozen=True)
class PrismCell:
    """
    Cell [w_0, ..., w_i, w'_i, ..., w'_k] of Δ^k × I, where w_j = (v_j, 0)
    and w'_j = (v_j, 1). Points are (x, t) with t as the last coordinate.
    """
    k: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i <= self.k:
            raise ValueError(f"cell index {self.i} outside 0..{self.k}")

    @property
    def sign(self) -> int:
        return -1 if self.i % 2 else 1

    def vertices(self) -> np.ndarray:
        base = SimplexDomain(self.k).vertices()
        bottom = np.hstack([base[: self.i + 1], np.zeros((self.i + 1, 1))])
        top = np.hstack([base[self.i:], np.ones((self.k - self.i + 1, 1))])
        return np.vstack([bottom, top])

    def affine_param(self, s: np.ndarray) -> np.ndarray:
        """Δ^{k+1} → Δ^k × I onto the cell, by barycentric combination of the vertex list"""
        vertices = self.vertices()
        s = np.asarray(s, dtype=float).reshape(-1, self.k + 1)
        return vertices[0][None, :] + s @ (vertices[1:] - vertices[0][None, :])

    def contains(self, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
        """
        (x, t) lies in cell i iff tail(i+1) <= t <= tail(i), where tail(j) is the
        sum of the barycentric coordinates of x with index >= j.
        """
        points = np.asarray(points, dtype=float).reshape(-1, self.k + 1)
        x, t = points[:, : self.k], points[:, self.k]
        barycentric = np.column_stack([1.0 - x.sum(axis=1), x])
        tails = np.cumsum(barycentric[:, ::-1], axis=1)[:, ::-1]
        upper = tails[:, self.i]
        lower = tails[:, self.i + 1] if self.i + 1 <= self.k else np.zeros(len(points))
        return (t >= lower - tol) & (t <= upper + tol)


def prism_cells(k: int) -> List[PrismCell]:
    return [PrismCell(k, i) for i in range(k + 1)]
