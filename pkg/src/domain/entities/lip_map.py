from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from src.core.exceptions import TargetNotNormedException
from src.domain.entities.metric_space import (
    EuclideanSpace,
    MetricSpace,
    ProductSpace,
    as_points,
)


class PairPlanKind(str, Enum):
    """How sample pairs are drawn for difference quotients"""
    ALL = "all"
    CONSECUTIVE = "consecutive"
    RANDOM = "random"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class SamplingPlan:
    """Pairs of sample indices over which suprema are taken"""
    kind: PairPlanKind = PairPlanKind.ALL
    n_pairs: int = 0
    seed: int = 0
    pairs: Optional[np.ndarray] = None

    @classmethod
    def explicit(cls, pairs: np.ndarray) -> "SamplingPlan":
        return cls(kind=PairPlanKind.EXPLICIT, pairs=np.asarray(pairs, dtype=np.int64).reshape(-1, 2))

    def index_pairs(self, n_points: int) -> Tuple[np.ndarray, np.ndarray]:
        if n_points < 2:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty
        if self.kind == PairPlanKind.ALL:
            i, j = np.triu_indices(n_points, k=1)
            return i, j
        if self.kind == PairPlanKind.CONSECUTIVE:
            i = np.arange(n_points - 1)
            return i, i + 1
        if self.kind == PairPlanKind.RANDOM:
            rng = np.random.default_rng(self.seed)
            i = rng.integers(0, n_points, size=self.n_pairs)
            j = rng.integers(0, n_points - 1, size=self.n_pairs)
            j = j + (j >= i)
            return i, j
        pairs = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        return pairs[:, 0], pairs[:, 1]

    def describe(self) -> dict:
        info = {"kind": self.kind.value}
        if self.kind == PairPlanKind.RANDOM:
            info.update(n_pairs=self.n_pairs, seed=self.seed)
        if self.kind == PairPlanKind.EXPLICIT:
            info["n_pairs"] = int(len(self.pairs))
        return info


@dataclass(frozen=True, eq=False)
class LipMap:
    """
    Lipschitz map given as a vectorized evaluation oracle.

    `fn` takes an (m, domain.dim) array and returns (m, target.dim) values.
    `lipschitz` holds the analytic constant when one is known, `derivative`
    an optional oracle for C1 families (same shapes as `fn`).
    """
    name: str
    domain: MetricSpace
    target: MetricSpace
    fn: Callable[[np.ndarray], np.ndarray]
    sample: Optional[np.ndarray] = None
    lipschitz: Optional[float] = None
    derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def __call__(self, points) -> np.ndarray:
        points = as_points(points, self.domain.dim)
        values = np.asarray(self.fn(points), dtype=float)
        return values.reshape(len(points), self.target.dim)

    def samples(self) -> np.ndarray:
        if self.sample is None:
            return np.zeros((0, self.domain.dim))
        return as_points(self.sample, self.domain.dim)

    def with_sample(self, points: np.ndarray) -> "LipMap":
        return replace(self, sample=as_points(points, self.domain.dim))

    def renamed(self, name: str) -> "LipMap":
        return replace(self, name=name)

    def compose(self, inner: "LipMap") -> "LipMap":
        """self ∘ inner"""
        outer = self
        lip = None
        if outer.lipschitz is not None and inner.lipschitz is not None:
            lip = outer.lipschitz * inner.lipschitz
        return LipMap(
            name=f"{outer.name}∘{inner.name}",
            domain=inner.domain,
            target=outer.target,
            fn=lambda p: outer(inner(p)),
            sample=inner.sample,
            lipschitz=lip,
        )

    def times(self, other: "LipMap") -> "LipMap":
        """Product map (a, b) ↦ (self(a), other(b)) between sum-metric products"""
        first, second = self, other
        domain = ProductSpace(first.domain, second.domain)
        target = ProductSpace(first.target, second.target)
        lip = None
        if first.lipschitz is not None and second.lipschitz is not None:
            lip = max(first.lipschitz, second.lipschitz)

        def fn(points: np.ndarray) -> np.ndarray:
            left, right = domain.split(points)
            return np.hstack([first(left), second(right)])

        return LipMap(name=f"({first.name}×{second.name})", domain=domain, target=target, fn=fn, lipschitz=lip)

    def times_interval(self) -> "LipMap":
        """σ × id_I"""
        return self.times(identity(EuclideanSpace(1, name="I")))

    def _check_normed(self, other: "LipMap") -> None:
        if not (self.target.is_normed and other.target.is_normed):
            raise TargetNotNormedException(
                f"Target {self.target.name} has no vector structure",
                details={"target": self.target.name},
            )

    def __sub__(self, other: "LipMap") -> "LipMap":
        self._check_normed(other)
        first, second = self, other
        return LipMap(
            name=f"({first.name}-{second.name})",
            domain=first.domain,
            target=first.target,
            fn=lambda p: first(p) - second(p),
            sample=first.sample,
        )

    def __add__(self, other: "LipMap") -> "LipMap":
        self._check_normed(other)
        first, second = self, other
        return LipMap(
            name=f"({first.name}+{second.name})",
            domain=first.domain,
            target=first.target,
            fn=lambda p: first(p) + second(p),
            sample=first.sample,
        )


def identity(space: MetricSpace, sample: Optional[np.ndarray] = None) -> LipMap:
    return LipMap(name=f"id[{space.name}]", domain=space, target=space, fn=lambda p: p, sample=sample, lipschitz=1.0)


def constant(domain: MetricSpace, target: MetricSpace, value, sample: Optional[np.ndarray] = None) -> LipMap:
    point = as_points(value, target.dim)[0]
    label = ",".join(f"{x:.17g}" for x in point)
    return LipMap(
        name=f"const[{label}]",
        domain=domain,
        target=target,
        fn=lambda p: np.repeat(point[None, :], len(p), axis=0),
        sample=sample,
        lipschitz=0.0,
    )


def linear(matrix, domain: Optional[MetricSpace] = None, name: str = "") -> LipMap:
    """x ↦ A x between Euclidean spaces; Lipschitz constant is the spectral norm"""
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    source = domain if domain is not None else EuclideanSpace(a.shape[1])
    label = name or "lin[" + ";".join(",".join(f"{x:.17g}" for x in row) for row in a) + "]"
    return LipMap(
        name=label,
        domain=source,
        target=EuclideanSpace(a.shape[0]),
        fn=lambda p: p @ a.T,
        lipschitz=float(np.linalg.norm(a, 2)),
    )
