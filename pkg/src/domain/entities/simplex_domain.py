from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from math import factorial
from typing import Iterator, List, Tuple

import numpy as np

from src.domain.entities.metric_space import EuclideanSpace


def _nonincreasing(top: int, length: int) -> np.ndarray:
    """Integer rows with top >= a_1 >= ... >= a_length >= 0"""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if length == 1:
        return np.arange(top + 1, dtype=np.int64)[:, None]
    blocks = []
    for head in range(top + 1):
        tail = _nonincreasing(head, length - 1)
        blocks.append(np.column_stack([np.full(len(tail), head, dtype=np.int64), tail]))
    return np.vstack(blocks)


@dataclass(frozen=True)
class SimplexDomain:
    """
    Standard corner simplex {x in R^k : x_i >= 0, sum x_i <= 1}.

    Vertex v_0 is the origin and v_i = e_i. Quadrature cells come from the
    Freudenthal subdivision: in the coordinates y_j = x_j + ... + x_k the simplex
    becomes the ordered simplex 1 >= y_1 >= ... >= y_k >= 0, which the cube grid of
    mesh 1/n cuts into n^k Kuhn simplices of equal volume.
    """
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError(f"simplex dimension must be >= 0, got {self.k}")

    @property
    def space(self) -> EuclideanSpace:
        return EuclideanSpace(self.k, name=f"D{self.k}")

    @property
    def volume(self) -> float:
        return 1.0 / factorial(self.k)

    def vertices(self) -> np.ndarray:
        return np.vstack([np.zeros((1, self.k)), np.eye(self.k)])

    def contains(self, points: np.ndarray, tol: float = 1e-12) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, self.k)
        return np.all(points >= -tol, axis=1) & (points.sum(axis=1) <= 1.0 + tol)

    def cell_count(self, n: int) -> int:
        return n ** self.k

    def cell_weight(self, n: int) -> float:
        return 1.0 / (factorial(self.k) * n ** self.k)

    @cached_property
    def _permutation_table(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        table = []
        k = self.k
        for perm in permutations(range(k)):
            position = np.empty(k, dtype=np.int64)
            position[list(perm)] = np.arange(k)
            # centroid of the Kuhn simplex 0 -> e_perm[0] -> e_perm[0]+e_perm[1] -> ...
            zbar = (k - position) / (k + 1.0)
            order_ok = position[:-1] < position[1:]
            table.append((zbar, order_ok))
        return table

    def cell_centroids(self, n: int, chunk_size: int = 65536) -> Iterator[np.ndarray]:
        """Centroids of the n^k cells, yielded in a fixed order in chunks"""
        if self.k == 0:
            yield np.zeros((1, 0))
            return
        k = self.k
        buffer: List[np.ndarray] = []
        size = 0
        for top in range(n):
            tails = _nonincreasing(top, k - 1)
            corners = np.column_stack([np.full(len(tails), top, dtype=np.int64), tails])
            ties = corners[:, :-1] == corners[:, 1:]
            for zbar, order_ok in self._permutation_table:
                valid = np.all(~ties | order_ok, axis=1)
                if not valid.any():
                    continue
                y = (corners[valid] + zbar) / n
                x = y.copy()
                x[:, :-1] = y[:, :-1] - y[:, 1:]
                buffer.append(x)
                size += len(x)
            if size >= chunk_size:
                yield np.vstack(buffer)
                buffer, size = [], 0
        if buffer:
            yield np.vstack(buffer)

    def lattice(self, m: int) -> np.ndarray:
        """Points a/m with a in N^k and sum(a) <= m, lexicographic order"""
        if self.k == 0:
            return np.zeros((1, 0))
        grid = np.indices((m + 1,) * self.k).reshape(self.k, -1).T
        grid = grid[grid.sum(axis=1) <= m]
        return grid / float(m)

    def lattice_neighbors(self, m: int) -> np.ndarray:
        """Index pairs of lattice points one step apart along a coordinate axis"""
        if self.k == 0:
            return np.zeros((0, 2), dtype=np.int64)
        grid = np.indices((m + 1,) * self.k).reshape(self.k, -1).T
        grid = grid[grid.sum(axis=1) <= m]
        weights = (m + 1) ** np.arange(self.k)
        codes = grid @ weights
        order = np.argsort(codes)
        sorted_codes = codes[order]
        pairs = []
        room = grid.sum(axis=1) < m
        for j in range(self.k):
            source = np.nonzero(room)[0]
            target_codes = codes[source] + weights[j]
            target = order[np.searchsorted(sorted_codes, target_codes)]
            pairs.append(np.column_stack([source, target]))
        return np.vstack(pairs).astype(np.int64)
