from typing import Any, Dict, Optional

import numpy as np

from src.core.exceptions import (
    CoverViolationException,
    NotContainedException,
    NotInKernelException,
    ValidationException,
)
from src.core.logger import app_logger
from src.domain.entities.metric_space import EuclideanSpace
from src.domain.entities.region import (
    Ball,
    CloudComplementRegion,
    HalfSpace,
    OpenRegion,
    SuperLevelRegion,
)
from src.domain.entities.report import SuiteOutcome
from src.domain.entities.signed_measure import SignedMeasure
from src.infrastructure.frameworks.cosheaf_service import CosheafService
from src.infrastructure.mappers.region_mapper import RegionMapper

MAX_DRAWS = 200


def ambient_dimension(region: OpenRegion) -> int:
    if isinstance(region, Ball):
        return len(region.center)
    if isinstance(region, HalfSpace):
        return len(region.normal)
    if isinstance(region, SuperLevelRegion):
        return ambient_dimension(region.base)
    if isinstance(region, CloudComplementRegion):
        return region.removed.shape[1]
    raise ValidationException(f"No ambient dimension for region {region.name}")


class RunMvCosheafSuiteUseCase:
    """Use case pour la suite exacte de Mayer-Vietoris des mesures à support fini"""

    suite = "mv-cosheaf"
    description = "Separation of a cover, the split ξ = μ + ν, the kernel of Φ₀ and nested shrinking of open sets"
    reference = (
        "Finitely supported measures form a cosheaf: for an open cover U ∪ V the sequence "
        "M(U ∩ V) → M(U) ⊕ M(V) → M(U ∪ V) → 0 is exact"
    )
    columns = ["check", "instances", "worst", "tolerance"]

    def __init__(self, cosheaf: CosheafService):
        self.cosheaf = cosheaf

    def execute(
        self,
        n_instances: int = 1000,
        n_atoms: int = 50,
        n_kernel: int = 200,
        u: Optional[Dict[str, Any]] = None,
        v: Optional[Dict[str, Any]] = None,
        seed: int = 0,
    ) -> SuiteOutcome:
        """
        Vérifie l'exactitude de Mayer-Vietoris sur des mesures aléatoires

        Workflow :
        1. Décomposition ξ = μ + ν sur le recouvrement (U, V)
        2. Témoins du noyau de Φ₀ et rejet des paires hors noyau
        3. Rétrécissements emboîtés et séparation du recouvrement
        4. Cas R^d moins un nuage de points
        """
        u_region = RegionMapper.payload_to_entity(u or {"kind": "ball", "center": [-0.5, 0.0], "radius": 1.0})
        v_region = RegionMapper.payload_to_entity(v or {"kind": "ball", "center": [0.5, 0.0], "radius": 1.0})
        dim = ambient_dimension(u_region)
        if ambient_dimension(v_region) != dim:
            raise ValidationException("Regions U and V live in different dimensions")
        app_logger.info(f"Suite {self.suite}: {u_region.name} / {v_region.name} in R{dim}")

        rng = np.random.default_rng(seed)
        outcome = SuiteOutcome(self.suite, list(self.columns))
        space = EuclideanSpace(dim)

        self._decomposition(outcome, rng, space, u_region, v_region, n_instances, n_atoms, "")
        self._kernel(outcome, rng, space, u_region, v_region, n_kernel, n_atoms)
        self._shrinking(outcome, rng, space, u_region, n_atoms)
        self._separation(outcome, rng, space, u_region, v_region, n_atoms)

        punctured = CloudComplementRegion(np.zeros((1, dim)))
        small = Ball(np.zeros(dim), 0.5)
        self._decomposition(outcome, rng, space, punctured, small, max(1, n_instances // 10), n_atoms, " (punctured cover)")
        return outcome

    # === Sampling ===

    def _sample(self, rng: np.random.Generator, dim: int, count: int, inside) -> np.ndarray:
        """`count` Gaussian points kept by the membership test"""
        kept, draws = [], 0
        while sum(len(k) for k in kept) < count:
            if draws >= MAX_DRAWS:
                raise ValidationException("Regions too small to sample", details={"requested": count})
            candidates = rng.normal(scale=1.5, size=(4 * count, dim))
            kept.append(candidates[inside(candidates)])
            draws += 1
        return np.vstack(kept)[:count]

    def _sample_or_none(self, rng: np.random.Generator, dim: int, inside) -> Optional[np.ndarray]:
        try:
            return self._sample(rng, dim, 1, inside)
        except ValidationException:
            return None

    # === Checks ===

    def _decomposition(self, outcome, rng, space, u: OpenRegion, v: OpenRegion, n: int, atoms: int, label: str) -> None:
        failures, tv_gap = 0, 0.0
        for _ in range(n):
            points = self._sample(rng, space.dim, atoms, lambda p: u.contains(p) | v.contains(p))
            xi = SignedMeasure.from_atoms(space, points, rng.normal(size=atoms))
            split = self.cosheaf.mv_decompose(xi, u, v)
            exact = (
                self.cosheaf.phi0(split.mu, split.nu).same_atoms(xi)
                and bool(np.all(u.contains(split.mu.points)))
                and bool(np.all(v.contains(split.nu.points)))
            )
            failures += int(not exact)
            tv_gap = max(tv_gap, abs(split.mu.total_variation + split.nu.total_variation - xi.total_variation))
        outcome.record(f"split reproduces ξ{label}", n, failures, 0.0, "Φ₀ is onto: ξ = μ + ν with supp μ ⊂ U, supp ν ⊂ V")
        outcome.record(f"split total variation{label}", n, tv_gap, 1e-12, "the split restricts ξ to disjoint pieces")

    def _kernel(self, outcome, rng, space, u: OpenRegion, v: OpenRegion, n: int, atoms: int) -> None:
        def both(p: np.ndarray) -> np.ndarray:
            return u.contains(p) & v.contains(p)

        failures = 0
        for _ in range(n):
            points = self._sample(rng, space.dim, atoms, both)
            xi = SignedMeasure.from_atoms(space, points, rng.normal(size=atoms))
            witness = self.cosheaf.mv_kernel_witness(xi, -xi, u, v)
            failures += int(not witness.same_atoms(xi))
        outcome.record("kernel witness", n, failures, 0.0, "ker Φ₀ = im Φ₁")

        points = self._sample(rng, space.dim, atoms, both)
        xi = SignedMeasure.from_atoms(space, points, rng.normal(size=atoms))
        try:
            self.cosheaf.mv_kernel_witness(xi, xi * -0.5, u, v)
            rejected = False
        except NotInKernelException:
            rejected = True
        outcome.record("pair outside the kernel rejected", 1, 0.0 if rejected else 1.0, 0.0, "μ + ν ≠ 0 has no witness")

    def _shrinking(self, outcome, rng, space, u: OpenRegion, atoms: int) -> None:
        points = self._sample(rng, space.dim, atoms, u.contains)
        first = self.cosheaf.shrink_open(points, u)
        second = self.cosheaf.shrink_open(points, first.region)
        samples = rng.normal(scale=1.5, size=(10_000, space.dim))
        in_u, in_first, in_second = u.contains(samples), first.region.contains(samples), second.region.contains(samples)
        violations = int(np.sum(in_first & ~in_u) + np.sum(in_second & ~in_first))
        violations += int(np.sum(~second.region.contains(points)))
        outcome.record("nested shrinking", len(samples), violations, 0.0, "K ⊂ U″ ⊂ U′ ⊂ U")

        stray = self._sample_or_none(rng, space.dim, lambda p: ~u.contains(p))
        if stray is None:
            outcome.metadata["outside_u_check"] = "skipped: U fills the sampling window"
            return
        try:
            self.cosheaf.shrink_open(np.vstack([points, stray]), u)
            rejected = False
        except NotContainedException:
            rejected = True
        outcome.record("point outside U rejected", 1, 0.0 if rejected else 1.0, 0.0, "shrinking needs K ⊂ U")

    def _separation(self, outcome, rng, space, u: OpenRegion, v: OpenRegion, atoms: int) -> None:
        points = self._sample(rng, space.dim, atoms, lambda p: u.contains(p) | v.contains(p))
        separation = self.cosheaf.separate_cover(points, u, v)
        w = separation.region
        violations = int(np.sum(~w.contains(points) & ~u.contains(points)))
        samples = rng.normal(scale=1.5, size=(10_000, space.dim))
        violations += int(np.sum(w.contains(samples) & (v.rho(samples) < separation.epsilon)))
        outcome.record("separating level", len(samples), violations, 0.0, "K − W ⊂ U and closure of W ⊂ V")
        outcome.metadata["separation"] = {"epsilon": separation.epsilon, "halvings": separation.halvings}

        stray = self._sample_or_none(rng, space.dim, lambda p: ~(u.contains(p) | v.contains(p)))
        if stray is None:
            outcome.metadata["uncovered_check"] = "skipped: U ∪ V fills the sampling window"
            return
        try:
            self.cosheaf.separate_cover(np.vstack([points, stray]), u, v)
            rejected = False
        except CoverViolationException:
            rejected = True
        outcome.record("uncovered point rejected", 1, 0.0 if rejected else 1.0, 0.0, "K ⊂ U ∪ V is required")
