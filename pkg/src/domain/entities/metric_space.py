from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.spatial.distance import cdist


def as_points(points, dim: int) -> np.ndarray:
    """Coerce a point or a batch of points to a float array of shape (m, dim)"""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 2:
        return arr
    if dim == 0:
        return np.zeros((1, 0))
    if arr.ndim == 0:
        return arr.reshape(1, 1)
    # a flat array is a batch of scalars on the line, a single point otherwise
    if dim == 1:
        return arr.reshape(-1, 1)
    return arr.reshape(1, dim)


class MetricSpace(ABC):
    """
    Distance oracle over coordinate-vector point handles.

    Points are float vectors of length `dim`; batches are (m, dim) arrays.
    """
    name: str
    dim: int

    @property
    def is_normed(self) -> bool:
        return False

    @abstractmethod
    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise distances between two batches of equal length"""
        pass

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        """Full distance matrix"""
        a = as_points(a, self.dim)
        b = a if b is None else as_points(b, self.dim)
        i, j = np.meshgrid(np.arange(len(a)), np.arange(len(b)), indexing="ij")
        return self.distance(a[i.ravel()], b[j.ravel()]).reshape(len(a), len(b))

    def dist(self, a, b) -> float:
        return float(self.distance(as_points(a, self.dim), as_points(b, self.dim))[0])

    def contains(self, points: np.ndarray) -> np.ndarray:
        return np.ones(len(as_points(points, self.dim)), dtype=bool)

    def key(self, point) -> Tuple[float, ...]:
        return tuple(float(x) for x in np.asarray(point, dtype=float).ravel())


@dataclass(frozen=True, eq=False)
class EuclideanSpace(MetricSpace):
    """ℝ^dim with the Euclidean norm"""
    dim: int
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"R{self.dim}")

    @property
    def is_normed(self) -> bool:
        return True

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = as_points(a, self.dim)
        b = as_points(b, self.dim)
        return np.sqrt(np.sum((a - b) ** 2, axis=1))

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        a = as_points(a, self.dim)
        b = a if b is None else as_points(b, self.dim)
        return cdist(a, b, "euclidean")

    def norm(self, v: np.ndarray) -> np.ndarray:
        return np.sqrt(np.sum(as_points(v, self.dim) ** 2, axis=1))


@dataclass(frozen=True, eq=False)
class CircleSpace(MetricSpace):
    """Circle of the given radius, points are angles, arc-length metric"""
    radius: float = 1.0
    name: str = "S1"
    dim: int = 1

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        delta = np.mod(np.abs(as_points(a, 1)[:, 0] - as_points(b, 1)[:, 0]), 2.0 * np.pi)
        return self.radius * np.minimum(delta, 2.0 * np.pi - delta)


@dataclass(frozen=True, eq=False)
class SnowflakeSpace(MetricSpace):
    """(X, d^alpha) for 0 < alpha <= 1"""
    base: MetricSpace
    alpha: float
    name: str = ""

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"snowflake exponent must lie in (0, 1], got {self.alpha}")
        if not self.name:
            object.__setattr__(self, "name", f"{self.base.name}^{self.alpha:g}")

    @property
    def dim(self) -> int:
        return self.base.dim

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.base.distance(a, b) ** self.alpha

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        return self.base.pairwise(a, b) ** self.alpha


@dataclass(frozen=True, eq=False)
class ProductSpace(MetricSpace):
    """X × Y with the sum metric; points are concatenated coordinates"""
    left: MetricSpace
    right: MetricSpace
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"({self.left.name}x{self.right.name})")

    @property
    def dim(self) -> int:
        return self.left.dim + self.right.dim

    @property
    def is_normed(self) -> bool:
        return False

    def split(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        points = as_points(points, self.dim)
        return points[:, : self.left.dim], points[:, self.left.dim:]

    def join(self, left_points: np.ndarray, right_points: np.ndarray) -> np.ndarray:
        left_points = as_points(left_points, self.left.dim)
        right_points = as_points(right_points, self.right.dim)
        if len(left_points) == 1 and len(right_points) > 1:
            left_points = np.repeat(left_points, len(right_points), axis=0)
        if len(right_points) == 1 and len(left_points) > 1:
            right_points = np.repeat(right_points, len(left_points), axis=0)
        return np.hstack([left_points, right_points])

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a_left, a_right = self.split(a)
        b_left, b_right = self.split(b)
        return self.left.distance(a_left, b_left) + self.right.distance(a_right, b_right)

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        a_left, a_right = self.split(a)
        if b is None:
            return self.left.pairwise(a_left) + self.right.pairwise(a_right)
        b_left, b_right = self.split(b)
        return self.left.pairwise(a_left, b_left) + self.right.pairwise(a_right, b_right)


@dataclass(frozen=True, eq=False)
class SubSpace(MetricSpace):
    """Subset of a base space cut out by a membership predicate"""
    base: MetricSpace
    predicate: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"sub({self.base.name})")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def is_normed(self) -> bool:
        return False

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.base.distance(a, b)

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        return self.base.pairwise(a, b)

    def contains(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.predicate(as_points(points, self.dim)), dtype=bool)


@dataclass(frozen=True, eq=False)
class PointCloud(MetricSpace):
    """Finite subspace of a base space holding its points"""
    base: MetricSpace
    points: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", as_points(self.points, self.base.dim))
        if not self.name:
            object.__setattr__(self, "name", f"cloud{len(self.points)}({self.base.name})")

    @property
    def dim(self) -> int:
        return self.base.dim

    def distance(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.base.distance(a, b)

    def pairwise(self, a: np.ndarray, b: Optional[np.ndarray] = None) -> np.ndarray:
        return self.base.pairwise(a, b)

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = as_points(points, self.dim)
        own = {self.key(p) for p in self.points}
        return np.array([self.key(p) in own for p in points], dtype=bool)

    def including(self, extra: np.ndarray, name: str = "") -> "PointCloud":
        """Larger cloud containing this one"""
        merged = np.vstack([self.points, as_points(extra, self.dim)])
        return PointCloud(self.base, merged, name=name)
