from dataclasses import dataclass, field
from math import fsum
from typing import Callable, Optional, Union

import numpy as np

from src.domain.entities.metric_space import MetricSpace, as_points

CANONICAL_WEIGHT_EPS = 1e-15


@dataclass(frozen=True, eq=False)
class SignedMeasure:
    """Finitely supported signed measure: atoms (points[i], weights[i])"""
    carrier: MetricSpace
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @classmethod
    def from_atoms(
        cls,
        carrier: MetricSpace,
        points,
        weights,
        eps: float = CANONICAL_WEIGHT_EPS,
    ) -> "SignedMeasure":
        """Canonical form: identical points merged, |weight| < eps dropped, points sorted"""
        weights = np.asarray(weights, dtype=float).reshape(-1)
        if len(weights) == 0:
            return cls.zero(carrier)
        points = as_points(points, carrier.dim)
        unique, inverse = np.unique(points, axis=0, return_inverse=True)
        merged = np.bincount(inverse.reshape(-1), weights=weights, minlength=len(unique))
        keep = np.abs(merged) >= eps
        return cls(carrier=carrier, points=unique[keep], weights=merged[keep])

    @classmethod
    def zero(cls, carrier: MetricSpace) -> "SignedMeasure":
        return cls(carrier=carrier, points=np.zeros((0, carrier.dim)), weights=np.zeros(0))

    @classmethod
    def dirac(cls, carrier: MetricSpace, point, weight: float = 1.0) -> "SignedMeasure":
        return cls.from_atoms(carrier, as_points(point, carrier.dim)[:1], [weight])

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def is_zero(self) -> bool:
        return len(self.weights) == 0

    @property
    def total_variation(self) -> float:
        return fsum(np.abs(self.weights))

    @property
    def total_mass(self) -> float:
        return fsum(self.weights)

    def __add__(self, other: "SignedMeasure") -> "SignedMeasure":
        return SignedMeasure.from_atoms(
            self.carrier,
            np.vstack([self.points, other.points]),
            np.concatenate([self.weights, other.weights]),
        )

    def __neg__(self) -> "SignedMeasure":
        return SignedMeasure(carrier=self.carrier, points=self.points, weights=-self.weights)

    def __sub__(self, other: "SignedMeasure") -> "SignedMeasure":
        return self + (-other)

    def __mul__(self, scalar: float) -> "SignedMeasure":
        return SignedMeasure.from_atoms(self.carrier, self.points, self.weights * float(scalar))

    __rmul__ = __mul__

    def restrict(self, mask_or_predicate: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]) -> "SignedMeasure":
        """μ⌊A for A given by a boolean mask over the atoms or a membership predicate"""
        if callable(mask_or_predicate):
            mask = np.asarray(mask_or_predicate(self.points), dtype=bool)
        else:
            mask = np.asarray(mask_or_predicate, dtype=bool)
        return SignedMeasure(carrier=self.carrier, points=self.points[mask], weights=self.weights[mask])

    def evaluate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """∫ f dμ"""
        if self.is_zero:
            return 0.0
        values = np.asarray(f(self.points), dtype=float).reshape(-1)
        return fsum(self.weights * values)

    def same_atoms(self, other: "SignedMeasure") -> bool:
        """Exact atomwise equality of canonical forms"""
        return (
            self.points.shape == other.points.shape
            and np.array_equal(self.points, other.points)
            and np.array_equal(self.weights, other.weights)
        )

    def with_carrier(self, carrier: MetricSpace) -> "SignedMeasure":
        return SignedMeasure(carrier=carrier, points=self.points, weights=self.weights)


@dataclass(frozen=True, eq=False)
class FreeSpaceElement:
    """
    Element Σ a_i δ_{x_i} of the dual of Lip_{x0}(X).

    δ_{x0} is the zero vector: atoms at the base point never change the value.
    """
    measure: SignedMeasure
    base_point: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "base_point", as_points(self.base_point, self.carrier.dim)[0])

    @property
    def carrier(self) -> MetricSpace:
        return self.measure.carrier

    def _at_base(self) -> np.ndarray:
        if self.measure.is_zero:
            return np.zeros(0, dtype=bool)
        return np.all(self.measure.points == self.base_point[None, :], axis=1)

    def reduced(self) -> SignedMeasure:
        """Representative without an atom at the base point"""
        return self.measure.restrict(~self._at_base())

    def balanced(self) -> SignedMeasure:
        """Same functional with total mass zero (mass moved to the base point)"""
        correction = SignedMeasure.dirac(self.carrier, self.base_point, -self.measure.total_mass)
        return self.measure + correction

    def equivalent(self, other: "FreeSpaceElement") -> bool:
        return (
            np.array_equal(self.base_point, other.base_point)
            and self.reduced().same_atoms(other.reduced())
        )

    def __add__(self, other: "FreeSpaceElement") -> "FreeSpaceElement":
        return FreeSpaceElement(self.measure + other.measure, self.base_point)

    def __neg__(self) -> "FreeSpaceElement":
        return FreeSpaceElement(-self.measure, self.base_point)

    def __sub__(self, other: "FreeSpaceElement") -> "FreeSpaceElement":
        return self + (-other)

    def __mul__(self, scalar: float) -> "FreeSpaceElement":
        return FreeSpaceElement(self.measure * scalar, self.base_point)

    __rmul__ = __mul__

    @classmethod
    def of(cls, carrier: MetricSpace, points, weights, base_point: Optional[np.ndarray] = None) -> "FreeSpaceElement":
        measure = SignedMeasure.from_atoms(carrier, points, weights)
        if base_point is None:
            base_point = np.zeros(carrier.dim)
        return cls(measure, base_point)
