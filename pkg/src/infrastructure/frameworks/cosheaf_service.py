from typing import Tuple

import numpy as np

from src.configs import get_settings
from src.core.exceptions import (
    CoverViolationException,
    NotContainedException,
    NotInKernelException,
    ValidationException,
)
from src.core.logger import app_logger
from src.domain.entities.region import (
    MayerVietorisSplit,
    OpenRegion,
    SeparationResult,
    ShrinkResult,
    SuperLevelRegion,
)
from src.domain.entities.signed_measure import SignedMeasure

settings = get_settings()


class CosheafService:
    """Service pour les constructions de Mayer-Vietoris sur les mesures à support fini"""

    def __init__(self, max_halvings: int = settings.SEPARATE_COVER_MAX_HALVINGS):
        self.max_halvings = max_halvings

    # === Open sets ===

    def shrink_open(self, points: np.ndarray, region: OpenRegion) -> ShrinkResult:
        """U′ = {ρ_U > ε/2} with ε = min_K ρ_U, so K ⊂ U′ and ρ_U ≥ ε/2 on the closure of U′"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if len(points) == 0:
            raise ValidationException("Cannot shrink an open set around an empty point set")
        rho = region.rho(points)
        outside = np.flatnonzero(rho <= 0.0)
        if len(outside):
            raise NotContainedException(
                f"{len(outside)} point(s) outside {region.name}",
                details={"region": region.describe(), "first_outside": points[outside[0]].tolist()},
            )
        epsilon = float(rho.min())
        shrunk = ShrinkResult(SuperLevelRegion(region, epsilon / 2.0), epsilon)
        if not np.all(shrunk.region.contains(points)):
            raise NotContainedException("Shrunk region lost a point of K", details={"epsilon": epsilon})
        app_logger.debug(f"shrink_open {region.name}: epsilon={epsilon:.6g}")
        return shrunk

    def separate_cover(self, points: np.ndarray, u: OpenRegion, v: OpenRegion) -> SeparationResult:
        """
        W = {ρ_V > ε} with K ∩ {ρ_V ≤ ε} ⊂ U, ε halved from max_K ρ_V until it
        fits. The closure of W stays in V since ρ_V ≥ ε > 0 there.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        in_u = u.contains(points)
        rho_v = v.rho(points)
        uncovered = np.flatnonzero(~in_u & (rho_v <= 0.0))
        if len(uncovered):
            raise CoverViolationException(
                f"{len(uncovered)} point(s) in neither {u.name} nor {v.name}",
                details={"first_uncovered": points[uncovered[0]].tolist()},
            )

        epsilon = float(rho_v.max()) if len(points) else 0.0
        if epsilon <= 0.0:
            epsilon = 1.0
        halvings = 0
        while not np.all(in_u[rho_v <= epsilon]):
            if halvings >= self.max_halvings:
                raise CoverViolationException(
                    f"No separating level after {halvings} halvings",
                    details={"epsilon": epsilon},
                )
            epsilon /= 2.0
            halvings += 1
        app_logger.debug(f"separate_cover {u.name}/{v.name}: epsilon={epsilon:.6g} after {halvings} halvings")
        return SeparationResult(SuperLevelRegion(v, epsilon), epsilon, halvings)

    # === Mayer-Vietoris ===

    def mv_decompose(self, xi: SignedMeasure, u: OpenRegion, v: OpenRegion) -> MayerVietorisSplit:
        """ξ = ξ⌊(K − W) + ξ⌊(K ∩ W)"""
        separation = self.separate_cover(xi.points, u, v)
        in_w = separation.region.contains(xi.points)
        mu = xi.restrict(~in_w)
        nu = xi.restrict(in_w)
        if not (np.all(u.contains(mu.points)) and np.all(v.contains(nu.points))):
            raise CoverViolationException("Split pieces leave their regions", details={"epsilon": separation.epsilon})
        return MayerVietorisSplit(mu, nu, separation)

    @staticmethod
    def phi0(mu: SignedMeasure, nu: SignedMeasure) -> SignedMeasure:
        """Φ₀(μ, ν) = μ + ν"""
        return mu + nu

    @staticmethod
    def phi1(xi: SignedMeasure) -> Tuple[SignedMeasure, SignedMeasure]:
        """Φ₁(ξ) = (ξ, −ξ)"""
        return xi, -xi

    def mv_kernel_witness(self, mu: SignedMeasure, nu: SignedMeasure, u: OpenRegion, v: OpenRegion) -> SignedMeasure:
        """ξ on U ∩ V with Φ₁(ξ) = (μ, ν), for μ + ν = 0"""
        total = self.phi0(mu, nu)
        if not total.is_zero:
            raise NotInKernelException(
                f"μ + ν leaves {len(total)} atom(s) of total variation {total.total_variation:.3g}",
                details={"residual_atoms": len(total)},
            )
        xi = mu
        if not (np.all(u.contains(xi.points)) and np.all(v.contains(xi.points))):
            raise NotInKernelException("Kernel witness is not supported in U ∩ V")
        image_mu, image_nu = self.phi1(xi)
        if not (image_mu.same_atoms(mu) and image_nu.same_atoms(nu)):
            raise NotInKernelException("Φ₁(ξ) does not reproduce the pair")
        return xi
