from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np
from scipy.spatial.distance import cdist

from src.domain.entities.signed_measure import SignedMeasure


class OpenRegion(ABC):
    """Open subset U of R^d given by ρ(x) = dist(x, R^d − U); U = {ρ > 0}"""
    name: str

    @abstractmethod
    def rho(self, points: np.ndarray) -> np.ndarray:
        pass

    def contains(self, points: np.ndarray) -> np.ndarray:
        return self.rho(points) > 0.0

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        pass


@dataclass(frozen=True, eq=False)
class Ball(OpenRegion):
    center: np.ndarray
    radius: float
    name: str = "ball"

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float).reshape(-1))

    def rho(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, len(self.center))
        return np.maximum(0.0, self.radius - np.sqrt(np.sum((points - self.center) ** 2, axis=1)))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "ball", "center": self.center.tolist(), "radius": self.radius}


@dataclass(frozen=True, eq=False)
class HalfSpace(OpenRegion):
    """{x : <normal, x> < offset}"""
    normal: np.ndarray
    offset: float
    name: str = "half-space"

    def __post_init__(self):
        object.__setattr__(self, "normal", np.asarray(self.normal, dtype=float).reshape(-1))

    def rho(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, len(self.normal))
        return np.maximum(0.0, (self.offset - points @ self.normal) / np.linalg.norm(self.normal))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "half-space", "normal": self.normal.tolist(), "offset": self.offset}


@dataclass(frozen=True, eq=False)
class SuperLevelRegion(OpenRegion):
    """
    {ρ_base > level}. In Euclidean space its distance to the complement is
    exactly max(0, ρ_base − level).
    """
    base: OpenRegion
    level: float
    name: str = ""

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"{{rho[{self.base.name}] > {self.level:g}}}")

    def rho(self, points: np.ndarray) -> np.ndarray:
        return np.maximum(0.0, self.base.rho(points) - self.level)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "super-level", "base": self.base.describe(), "level": self.level}


@dataclass(frozen=True, eq=False)
class CloudComplementRegion(OpenRegion):
    """R^d minus a finite set of points"""
    removed: np.ndarray
    name: str = "cloud-complement"

    def __post_init__(self):
        object.__setattr__(self, "removed", np.atleast_2d(np.asarray(self.removed, dtype=float)))

    def rho(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float).reshape(-1, self.removed.shape[1])
        return cdist(points, self.removed).min(axis=1)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "cloud-complement", "removed": self.removed.tolist()}


@dataclass(frozen=True, eq=False)
class ShrinkResult:
    """U′ = {ρ_U > ε/2} with ε = min_K ρ_U"""
    region: SuperLevelRegion
    epsilon: float

    @property
    def margin(self) -> float:
        return self.epsilon / 2.0


@dataclass(frozen=True, eq=False)
class SeparationResult:
    """W = {ρ_V > ε} with K ∩ {ρ_V ≤ ε} ⊂ U"""
    region: SuperLevelRegion
    epsilon: float
    halvings: int


@dataclass(frozen=True, eq=False)
class MayerVietorisSplit:
    """ξ = μ + ν with μ = ξ⌊(K − W) in U and ν = ξ⌊(K ∩ W) in V"""
    mu: SignedMeasure
    nu: SignedMeasure
    separation: SeparationResult = field(repr=False)
