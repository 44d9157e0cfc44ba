from math import fsum
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from src.configs import get_settings
from src.core.exceptions import (
    DegreeMismatchException,
    DegreeNotZeroException,
    DegreeZeroException,
    ValidationException,
)
from src.core.logger import app_logger
from src.domain.entities.current import CurrentValue, GridSpec, LipSimplex, MassEstimate, MeasureChain, TestForm
from src.domain.entities.lip_map import LipMap, SamplingPlan
from src.domain.entities.report import IdentityCheck, MassCheck
from src.domain.entities.signed_measure import SignedMeasure
from src.domain.entities.simplex_domain import SimplexDomain
from src.infrastructure.frameworks.forms import bump_form
from src.infrastructure.frameworks.lip_topology_service import LipTopologyService
from src.infrastructure.frameworks.lipschitz_service import LipschitzService
from src.infrastructure.frameworks.quadrature_service import QuadratureService

settings = get_settings()

SimplexFamily = Callable[[float], LipSimplex]


class CurrentService:
    """Service pour évaluer les courants T^μ et les opérateurs sur les chaînes de mesures"""

    def __init__(
        self,
        quadrature: QuadratureService,
        lipschitz: LipschitzService,
        topology: LipTopologyService,
        mass_safety_factor: float = settings.MASS_SAFETY_FACTOR,
    ):
        self.quadrature = quadrature
        self.lipschitz = lipschitz
        self.topology = topology
        self.mass_safety_factor = mass_safety_factor

    # === Evaluation ===

    def evaluate_simplex(self, sigma: LipSimplex, form: TestForm, grid: GridSpec) -> CurrentValue:
        return self.quadrature.integrate(sigma, form, grid)

    def evaluate_chain(self, mu: MeasureChain, form: TestForm, grid: GridSpec) -> CurrentValue:
        """Σ_atoms w · [σ](f dπ); the error estimate adds |w| · error of each atom"""
        if form.k != mu.k:
            raise DegreeMismatchException(
                f"Form {form.name} of degree {form.k} on a {mu.k}-chain",
                expected=mu.k,
                actual=form.k,
            )
        if mu.is_zero:
            return CurrentValue(0.0, 0.0 if grid.refine else None, grid)
        values, errors = [], []
        for simplex, weight in mu.atoms():
            current = self.quadrature.integrate(simplex, form, grid)
            values.append(weight * current.value)
            if current.error_estimate is not None:
                errors.append(abs(weight) * current.error_estimate)
        error = fsum(errors) if grid.refine else None
        return CurrentValue(fsum(values), error, grid)

    # === Chain operators ===

    def boundary_chain(self, mu: MeasureChain) -> MeasureChain:
        """∂ = Σ_i (−1)^i r_i# with r_i the i-th face inclusion"""
        if mu.k == 0:
            raise DegreeZeroException()
        atoms = []
        for simplex, weight in mu.atoms():
            for i in range(simplex.k + 1):
                atoms.append((simplex.face(i), weight if i % 2 == 0 else -weight))
        return MeasureChain.from_atoms(mu.k - 1, atoms)

    def pushforward_chain(self, phi: LipMap, mu: MeasureChain) -> MeasureChain:
        return MeasureChain.from_atoms(mu.k, [(simplex.pushed(phi), weight) for simplex, weight in mu.atoms()])

    def augmentation(self, mu: MeasureChain) -> float:
        """μ ↦ μ(X) on 0-chains"""
        if mu.k != 0:
            raise DegreeNotZeroException(f"Augmentation of a {mu.k}-chain", degree=mu.k)
        return fsum(mu.weights)

    # === Identities ===

    def boundary_identity(self, mu: MeasureChain, form: TestForm, grid: GridSpec) -> IdentityCheck:
        """T^μ(1 df ∧ dπ) against T^{∂μ}(f dπ)"""
        if mu.k == 0:
            raise DegreeZeroException()
        if form.k != mu.k - 1:
            raise DegreeMismatchException(
                f"Boundary identity needs a form of degree {mu.k - 1}",
                expected=mu.k - 1,
                actual=form.k,
            )
        if mu.is_zero:
            return IdentityCheck(0.0, 0.0, 0.0)
        lhs = self.evaluate_chain(mu, form.promote(), grid)
        rhs = self.evaluate_chain(self.boundary_chain(mu), form, grid)
        error = None
        if lhs.error_estimate is not None and rhs.error_estimate is not None:
            error = lhs.error_estimate + rhs.error_estimate
        return IdentityCheck(lhs.value, rhs.value, error)

    def naturality_check(self, phi: LipMap, mu: MeasureChain, form: TestForm, grid: GridSpec) -> IdentityCheck:
        """T^{φ#μ}(f dπ) against T^μ((f∘φ) d(π∘φ))"""
        pushed = self.evaluate_chain(self.pushforward_chain(phi, mu), form, grid)
        pulled = self.evaluate_chain(mu, form.pullback(phi), grid)
        return IdentityCheck(pushed.value, pulled.value)

    # === Mass ===

    def simplex_lipschitz(self, simplex: LipSimplex, lattice_m: int) -> float:
        """
        Sampled Lip(σ): axis neighbours of the fine lattice together with all
        pairs of a coarse one.
        """
        if simplex.k == 0:
            return 0.0
        domain = SimplexDomain(simplex.k)
        fine = self.lipschitz.estimate_value(
            simplex.as_lip_map(lattice_m),
            SamplingPlan.explicit(domain.lattice_neighbors(lattice_m)),
        )
        coarse_m = min(lattice_m, 8)
        coarse = self.lipschitz.estimate_value(simplex.as_lip_map(coarse_m))
        return max(fine, coarse)

    def chain_lipschitz(self, mu: MeasureChain, lattice_m: int) -> float:
        """L = safety factor × max sampled Lip(σ) over the atoms"""
        return self.mass_safety_factor * max(self.simplex_lipschitz(s, lattice_m) for s in mu.simplices)

    def mass_estimate(self, mu: MeasureChain, form: TestForm, grid: GridSpec, lipschitz: float) -> MassEstimate:
        """ν = Σ |w| σ#(quadrature weights) with the constant L^k Π Lip(π_i)"""
        if mu.is_zero:
            raise ValidationException("Mass estimate of the zero chain")
        if not form.pi_lipschitz and form.k > 0:
            raise ValidationException(f"Form {form.name} declares no Lipschitz constants for its π's")
        nodes, weights = [], []
        for simplex, weight in mu.atoms():
            points, cell_weights = self.quadrature.image_measure(simplex, grid.n)
            nodes.append(points)
            weights.append(abs(weight) * cell_weights)
        measure = SignedMeasure(carrier=mu.simplices[0].target, points=np.vstack(nodes), weights=np.concatenate(weights))
        return MassEstimate(measure, lipschitz ** mu.k * form.pi_lipschitz_product)

    def mass_bound_check(self, mu: MeasureChain, form: TestForm, grid: GridSpec, lattice_m: int = 32) -> MassCheck:
        """|T^μ(f dπ)| against L^k Π Lip(π_i) ∫ |f| dν"""
        if mu.is_zero:
            return MassCheck(0.0, 0.0, 0.0)
        value = self.evaluate_chain(mu, form, GridSpec(grid.n, refine=False))
        lipschitz = self.chain_lipschitz(mu, lattice_m)
        bound = self.mass_estimate(mu, form, grid, lipschitz).bound(form.f)
        app_logger.debug(f"Mass check {form.name}: |T| = {abs(value.value):.6g} <= {bound:.6g}")
        return MassCheck(abs(value.value), bound, lipschitz)

    # === Degree 0 ===

    def weight_recovery(self, mu: MeasureChain) -> np.ndarray:
        """
        Recover the weights of a 0-chain from its values on bump forms centred
        at the support points with radius half the minimal separation.
        """
        measure = mu.to_measure()
        if len(measure) == 0:
            return np.zeros(0)
        if len(measure) == 1:
            radius = 1.0
        else:
            distances = measure.carrier.pairwise(measure.points)
            np.fill_diagonal(distances, np.inf)
            radius = 0.5 * float(distances.min())
        grid = GridSpec(1, refine=False)
        recovered = [
            self.evaluate_chain(mu, bump_form(measure.carrier, point, radius), grid).value
            for point in measure.points
        ]
        return np.asarray(recovered)

    # === Diagnostics ===

    def continuity_diagnostic(
        self,
        family: SimplexFamily,
        limit: LipSimplex,
        form: TestForm,
        params: Sequence[float],
        grid_for: Callable[[float], GridSpec],
        lattice_m: int,
    ) -> List[Dict[str, float]]:
        """Rows (t, [σ_t](form), MT parts to σ_0, uniform distance)"""
        domain = SimplexDomain(limit.k)
        samples = domain.lattice(lattice_m)
        plan = SamplingPlan.explicit(domain.lattice_neighbors(lattice_m))
        limit_map = limit.as_lip_map(lattice_m)
        rows = []
        for t in params:
            sigma = family(float(t))
            value = self.evaluate_simplex(sigma, form, grid_for(float(t)))
            sigma_map = sigma.as_lip_map(lattice_m)
            mt = self.topology.mt_distance(sigma_map, limit_map, samples, plan)
            uniform, _ = self.topology.uniform_distance(sigma_map, limit_map, samples)
            rows.append({
                "t": float(t),
                "value": value.value,
                "error_estimate": value.error_estimate,
                "mt_sup": mt.sup_part,
                "mt_lip": mt.lip_part,
                "mt_total": mt.total,
                "uniform_dist": uniform,
            })
            app_logger.debug(f"Continuity row t={t:g}: value={value.value:.6g} mt={mt.total:.6g}")
        return rows

    def non_integrability_diagnostic(
        self,
        family: SimplexFamily,
        form: TestForm,
        epsilons: Sequence[float],
        grid_for: Callable[[float], GridSpec],
    ) -> List[Dict[str, Optional[float]]]:
        """Rows (ε, [v_ε](form), ε · value)"""
        rows = []
        for eps in epsilons:
            eps = float(eps)
            if not 0.0 < eps <= 1.0:
                raise ValidationException(f"ε must lie in (0, 1], got {eps}")
            value = self.evaluate_simplex(family(eps), form, grid_for(eps))
            rows.append({
                "eps": eps,
                "value": value.value,
                "error_estimate": value.error_estimate,
                "eps_times_value": eps * value.value,
            })
        return rows
