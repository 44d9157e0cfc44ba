from dataclasses import dataclass, field
from math import fsum
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from src.core.exceptions import DegreeMismatchException, ValidationException
from src.domain.entities.lip_map import LipMap, identity
from src.domain.entities.metric_space import EuclideanSpace, MetricSpace, as_points
from src.domain.entities.signed_measure import CANONICAL_WEIGHT_EPS, SignedMeasure
from src.domain.entities.simplex_domain import SimplexDomain

ScalarOracle = Callable[[np.ndarray], np.ndarray]


def _ones(points: np.ndarray) -> np.ndarray:
    return np.ones(len(points))


@dataclass(frozen=True, eq=False)
class TestForm:
    """
    k-form f dπ_1 ∧ ... ∧ dπ_k.

    Oracles take an (m, d) array of carrier points and return (m,) values.
    Declared constants must bound sup|f|, Lip(f) and each Lip(π_i).
    """
    __test__ = False

    name: str
    f: ScalarOracle
    pis: Tuple[ScalarOracle, ...] = ()
    f_bound: float = 1.0
    f_lipschitz: float = 0.0
    pi_lipschitz: Tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.pi_lipschitz) not in (0, len(self.pis)):
            raise ValidationException(
                f"Form {self.name}: {len(self.pi_lipschitz)} constants for {len(self.pis)} π's"
            )

    @property
    def k(self) -> int:
        return len(self.pis)

    def f_values(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.f(points), dtype=float).reshape(-1)

    def pi_values(self, points: np.ndarray) -> np.ndarray:
        """(m, k) array of π_i values"""
        if not self.pis:
            return np.zeros((len(points), 0))
        return np.column_stack([np.asarray(pi(points), dtype=float).reshape(-1) for pi in self.pis])

    @property
    def pi_lipschitz_product(self) -> float:
        return float(np.prod(self.pi_lipschitz)) if self.pi_lipschitz else 1.0

    def promote(self) -> "TestForm":
        """f dπ ↦ 1 df ∧ dπ"""
        return TestForm(
            name=f"d({self.name})",
            f=_ones,
            pis=(self.f,) + tuple(self.pis),
            f_bound=1.0,
            f_lipschitz=0.0,
            pi_lipschitz=(self.f_lipschitz,) + tuple(self.pi_lipschitz) if (self.pi_lipschitz or not self.pis) else (),
        )

    def pullback(self, phi: LipMap) -> "TestForm":
        """(f∘φ) d(π∘φ)"""
        lip = phi.lipschitz
        pis = tuple(self._compose(pi, phi) for pi in self.pis)
        return TestForm(
            name=f"{phi.name}^*({self.name})",
            f=self._compose(self.f, phi),
            pis=pis,
            f_bound=self.f_bound,
            f_lipschitz=self.f_lipschitz * lip if lip is not None else self.f_lipschitz,
            pi_lipschitz=tuple(c * lip for c in self.pi_lipschitz) if lip is not None else (),
        )

    @staticmethod
    def _compose(oracle: ScalarOracle, phi: LipMap) -> ScalarOracle:
        return lambda points: oracle(phi(points))

    def swapped(self, i: int, j: int) -> "TestForm":
        pis = list(self.pis)
        pis[i], pis[j] = pis[j], pis[i]
        lips = list(self.pi_lipschitz)
        if lips:
            lips[i], lips[j] = lips[j], lips[i]
        return TestForm(f"{self.name}[{i}<->{j}]", self.f, tuple(pis), self.f_bound, self.f_lipschitz, tuple(lips))

    def combine(self, other: "TestForm", a: float, b: float) -> "TestForm":
        """(a f_1 + b f_2) dπ for two forms sharing their π's"""
        first, second = self, other
        return TestForm(
            name=f"({a:g}*{first.name}+{b:g}*{second.name})",
            f=lambda points: a * first.f_values(points) + b * second.f_values(points),
            pis=first.pis,
            f_bound=abs(a) * first.f_bound + abs(b) * second.f_bound,
            f_lipschitz=abs(a) * first.f_lipschitz + abs(b) * second.f_lipschitz,
            pi_lipschitz=first.pi_lipschitz,
        )


@dataclass(frozen=True, eq=False)
class LipSimplex:
    """
    Lipschitz k-simplex σ = base ∘ A where A is the affine map sending the
    vertices of the standard simplex to `vertices` (rows) in the base domain.

    Faces and prism cells only edit the vertex list, so formally equal
    simplices always share the same `key`.
    """
    base: LipMap
    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", as_points(self.vertices, self.base.domain.dim))

    @classmethod
    def affine(cls, vertices, space: Optional[MetricSpace] = None) -> "LipSimplex":
        vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
        space = space if space is not None else EuclideanSpace(vertices.shape[1])
        return cls(identity(space), vertices)

    @classmethod
    def standard(cls, base: LipMap) -> "LipSimplex":
        """base restricted to the standard simplex of its own dimension"""
        return cls(base, SimplexDomain(base.domain.dim).vertices())

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    @property
    def target(self) -> MetricSpace:
        return self.base.target

    @property
    def key(self) -> Tuple:
        return (self.base.name, tuple(tuple(float(x) for x in row) for row in self.vertices))

    def parameter_points(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        if self.k == 0:
            count = s.shape[0] if s.ndim == 2 else 1
            return np.repeat(self.vertices[:1], count, axis=0)
        s = s.reshape(-1, self.k)
        origin = self.vertices[0]
        return origin[None, :] + s @ (self.vertices[1:] - origin[None, :])

    def __call__(self, s: np.ndarray) -> np.ndarray:
        return self.base(self.parameter_points(s))

    def agrees_with(self, other: "LipSimplex", tol: float = 1e-12) -> bool:
        """Same values at the vertices and the barycenter of Δ^k"""
        if self.k != other.k:
            return False
        samples = np.vstack([np.zeros((1, self.k)), np.eye(self.k), np.full((1, self.k), 1.0 / (self.k + 1))])
        mine, theirs = self(samples), other(samples)
        return mine.shape == theirs.shape and bool(np.allclose(mine, theirs, rtol=tol, atol=tol))

    def face(self, i: int) -> "LipSimplex":
        """σ precomposed with the i-th face inclusion (vertex v_i omitted)"""
        return LipSimplex(self.base, np.delete(self.vertices, i, axis=0))

    def pushed(self, phi: LipMap) -> "LipSimplex":
        return LipSimplex(phi.compose(self.base), self.vertices)

    def as_lip_map(self, lattice_m: int) -> LipMap:
        """The simplex as a map on Δ^k sampled on the lattice of step 1/lattice_m"""
        domain = SimplexDomain(self.k)
        simplex = self
        return LipMap(
            name=f"[{self.base.name}]",
            domain=domain.space,
            target=self.target,
            fn=lambda s: simplex(s),
            sample=domain.lattice(lattice_m),
        )


Atom = Tuple[LipSimplex, float]


@dataclass(frozen=True, eq=False)
class MeasureChain:
    """Finitely supported signed measure on Lipschitz k-simplices"""
    k: int
    simplices: Tuple[LipSimplex, ...] = ()
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)

    @classmethod
    def from_atoms(cls, k: int, atoms: Iterable[Atom], eps: float = CANONICAL_WEIGHT_EPS) -> "MeasureChain":
        """Canonical form: atoms with equal keys merged, |weight| < eps dropped, sorted by key"""
        merged: Dict[Tuple, List] = {}
        for simplex, weight in atoms:
            if simplex.k != k:
                raise DegreeMismatchException(f"Atom of degree {simplex.k} in a {k}-chain", expected=k, actual=simplex.k)
            entry = merged.setdefault(simplex.key, [simplex, []])
            if entry[0].base is not simplex.base and not entry[0].agrees_with(simplex):
                raise ValidationException(
                    f"Distinct maps share the name '{simplex.base.name}'",
                    details={"name": simplex.base.name},
                )
            entry[1].append(float(weight))
        items = []
        for key in sorted(merged):
            simplex, parts = merged[key]
            weight = fsum(parts)
            if abs(weight) >= eps:
                items.append((simplex, weight))
        return cls(
            k=k,
            simplices=tuple(s for s, _ in items),
            weights=np.array([w for _, w in items], dtype=float),
        )

    @classmethod
    def zero(cls, k: int) -> "MeasureChain":
        return cls(k=k)

    @classmethod
    def single(cls, simplex: LipSimplex, weight: float = 1.0) -> "MeasureChain":
        return cls.from_atoms(simplex.k, [(simplex, weight)])

    @classmethod
    def from_measure(cls, measure: SignedMeasure) -> "MeasureChain":
        """Degree-0 chain of point simplices carrying the measure's weights"""
        base = identity(measure.carrier)
        return cls.from_atoms(0, [(LipSimplex(base, p[None, :]), w) for p, w in zip(measure.points, measure.weights)])

    def to_measure(self, carrier: Optional[MetricSpace] = None) -> SignedMeasure:
        if self.k != 0:
            raise DegreeMismatchException("Only 0-chains are measures on the carrier", expected=0, actual=self.k)
        if self.is_zero:
            if carrier is None:
                raise ValidationException("Carrier required to read an empty 0-chain as a measure")
            return SignedMeasure.zero(carrier)
        carrier = carrier if carrier is not None else self.simplices[0].target
        points = np.vstack([simplex(np.zeros((1, 0))) for simplex in self.simplices])
        return SignedMeasure.from_atoms(carrier, points, self.weights)

    def atoms(self) -> Iterator[Atom]:
        return zip(self.simplices, (float(w) for w in self.weights))

    def __len__(self) -> int:
        return len(self.simplices)

    @property
    def is_zero(self) -> bool:
        return len(self.simplices) == 0

    @property
    def total_variation(self) -> float:
        return fsum(np.abs(self.weights))

    def _check_degree(self, other: "MeasureChain") -> None:
        if other.k != self.k:
            raise DegreeMismatchException(f"Cannot add a {other.k}-chain to a {self.k}-chain", expected=self.k, actual=other.k)

    def __add__(self, other: "MeasureChain") -> "MeasureChain":
        self._check_degree(other)
        return MeasureChain.from_atoms(self.k, list(self.atoms()) + list(other.atoms()))

    def __neg__(self) -> "MeasureChain":
        return MeasureChain(k=self.k, simplices=self.simplices, weights=-self.weights)

    def __sub__(self, other: "MeasureChain") -> "MeasureChain":
        return self + (-other)

    def __mul__(self, scalar: float) -> "MeasureChain":
        return MeasureChain.from_atoms(self.k, [(s, w * float(scalar)) for s, w in self.atoms()])

    __rmul__ = __mul__

    def same_atoms(self, other: "MeasureChain") -> bool:
        return (
            self.k == other.k
            and [s.key for s in self.simplices] == [s.key for s in other.simplices]
            and np.array_equal(self.weights, other.weights)
        )


@dataclass(frozen=True)
class GridSpec:
    """Quadrature grid: n^k cells, optional comparison against 2n"""
    n: int
    refine: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValidationException(f"Grid parameter must be >= 1, got {self.n}")

    @property
    def mesh(self) -> float:
        return 1.0 / self.n

    def refined(self) -> "GridSpec":
        return GridSpec(2 * self.n, self.refine)


@dataclass(frozen=True)
class CurrentValue:
    """T(f dπ) with the refinement delta |value(n) - value(2n)| when computed"""
    value: float
    error_estimate: Optional[float]
    grid: GridSpec

    def __add__(self, other: "CurrentValue") -> "CurrentValue":
        if self.error_estimate is None or other.error_estimate is None:
            error = None
        else:
            error = self.error_estimate + other.error_estimate
        return CurrentValue(self.value + other.value, error, self.grid)


@dataclass(frozen=True, eq=False)
class MassEstimate:
    """Dominating measure ν (nonnegative weights) and the constant L^k Π Lip(π_i)"""
    measure: SignedMeasure
    constant: float

    def __post_init__(self):
        if np.any(self.measure.weights < 0):
            raise ValidationException("Mass estimate measure must have nonnegative weights")

    def bound(self, f: ScalarOracle) -> float:
        if self.measure.is_zero:
            return 0.0
        return self.constant * fsum(self.measure.weights * np.abs(np.asarray(f(self.measure.points), dtype=float).reshape(-1)))
