from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.configs import get_settings
from src.core.exceptions import NotACycleException, ValidationException
from src.core.logger import app_logger
from src.domain.entities.current import GridSpec, LipSimplex, MeasureChain, TestForm
from src.domain.entities.lip_map import LipMap
from src.domain.entities.prism import prism_cells
from src.domain.entities.report import IdentityCheck
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.families import affine_map
from src.infrastructure.frameworks.forms import random_affine_form

settings = get_settings()

# (sign of the P∂ term, s, t) in the order they are tried
ORIENTATION_CANDIDATES: Tuple[Tuple[int, int, int], ...] = (
    (-1, 0, 1),
    (-1, 1, 0),
    (1, 0, 1),
    (1, 1, 0),
)


@dataclass(frozen=True)
class PrismOrientation:
    """∂P + c·P∂ = i_s# − i_t#"""
    c: int
    s: int
    t: int
    gaps: Dict[str, float] = field(default_factory=dict)

    @property
    def label(self) -> str:
        sign = "+" if self.c > 0 else "-"
        return f"dP {sign} Pd = i{self.s} - i{self.t}"

    def as_metadata(self) -> Dict[str, object]:
        return {"c": self.c, "s": self.s, "t": self.t, "identity": self.label, "candidate_gaps": dict(self.gaps)}


STANDARD_ORIENTATION = PrismOrientation(1, 1, 0)


@dataclass(frozen=True, eq=False)
class ContractionResult:
    chain: MeasureChain
    checks: List[IdentityCheck]


class PrismService:
    """Service pour l'opérateur prisme P et l'identité d'homotopie"""

    def __init__(self, currents: CurrentService, cycle_tolerance: float = settings.CYCLE_TOLERANCE):
        self.currents = currents
        self.cycle_tolerance = cycle_tolerance
        self.orientation: PrismOrientation = STANDARD_ORIENTATION

    # === Chains ===

    @staticmethod
    def _lifted_base(sigma: LipSimplex, h: Optional[LipMap]) -> LipMap:
        lifted = sigma.base.times_interval()
        return h.compose(lifted) if h is not None else lifted

    def prism_chain(self, sigma: LipSimplex, h: Optional[LipMap] = None) -> MeasureChain:
        """Σ_i (−1)^i δ_{τ_i}, τ_i = (σ × id_I) on cell i, post-composed with h when given"""
        base = self._lifted_base(sigma, h)
        atoms = []
        for cell in prism_cells(sigma.k):
            bottom = np.hstack([sigma.vertices[: cell.i + 1], np.zeros((cell.i + 1, 1))])
            top = np.hstack([sigma.vertices[cell.i:], np.ones((sigma.k - cell.i + 1, 1))])
            atoms.append((LipSimplex(base, np.vstack([bottom, top])), float(cell.sign)))
        return MeasureChain.from_atoms(sigma.k + 1, atoms)

    def prism_of_chain(self, mu: MeasureChain, h: Optional[LipMap] = None) -> MeasureChain:
        if mu.is_zero:
            return MeasureChain.zero(mu.k + 1)
        chains = [self.prism_chain(simplex, h) * weight for simplex, weight in mu.atoms()]
        total = chains[0]
        for chain in chains[1:]:
            total = total + chain
        return total

    def slice_chain(self, mu: MeasureChain, level: int, h: Optional[LipMap] = None) -> MeasureChain:
        """i_level# μ (or h_level# μ), built on the same lifted base as the prism cells"""
        atoms = []
        for simplex, weight in mu.atoms():
            vertices = np.hstack([simplex.vertices, np.full((simplex.k + 1, 1), float(level))])
            atoms.append((LipSimplex(self._lifted_base(simplex, h), vertices), weight))
        return MeasureChain.from_atoms(mu.k, atoms)

    def homotopy_chains(
        self,
        mu: MeasureChain,
        orientation: PrismOrientation,
        h: Optional[LipMap] = None,
    ) -> Tuple[MeasureChain, MeasureChain]:
        """(∂Pμ + c·P∂μ, i_s#μ − i_t#μ)"""
        boundary_prism = self.currents.boundary_chain(self.prism_of_chain(mu, h))
        if mu.k > 0:
            lhs = boundary_prism + self.prism_of_chain(self.currents.boundary_chain(mu), h) * orientation.c
        else:
            lhs = boundary_prism
        rhs = self.slice_chain(mu, orientation.s, h) - self.slice_chain(mu, orientation.t, h)
        return lhs, rhs

    # === Checks ===

    def homotopy_identity_check(
        self,
        sigma: LipSimplex,
        form: TestForm,
        grid: GridSpec,
        h: Optional[LipMap] = None,
        orientation: Optional[PrismOrientation] = None,
    ) -> IdentityCheck:
        orientation = orientation or self.orientation
        lhs, rhs = self.homotopy_chains(MeasureChain.single(sigma), orientation, h)
        left = self.currents.evaluate_chain(lhs, form, grid)
        right = self.currents.evaluate_chain(rhs, form, grid)
        error = None
        if left.error_estimate is not None and right.error_estimate is not None:
            error = left.error_estimate + right.error_estimate
        return IdentityCheck(left.value, right.value, error)

    def formal_homotopy_defect(self, sigma: LipSimplex, orientation: Optional[PrismOrientation] = None) -> float:
        """Total variation of (∂Pσ + c·P∂σ) − (i_s#σ − i_t#σ) as formal chains"""
        orientation = orientation or self.orientation
        lhs, rhs = self.homotopy_chains(MeasureChain.single(sigma), orientation)
        return (lhs - rhs).total_variation

    def calibrate_orientation(self, grid: GridSpec, seed: int = 0, trials: int = 3) -> PrismOrientation:
        """
        Try the candidate orientations on random affine 1-simplices and affine
        1-forms on R × I, freeze the first whose gap vanishes.
        """
        rng = np.random.default_rng(seed)
        cases = []
        for _ in range(trials):
            sigma = LipSimplex(affine_map(rng.normal(size=(1, 1)), rng.normal(size=1)), rng.normal(size=(2, 1)))
            cases.append((sigma, random_affine_form(rng, dim=2, degree=1)))

        gaps: Dict[str, float] = {}
        chosen: Optional[Tuple[int, int, int]] = None
        for c, s, t in ORIENTATION_CANDIDATES:
            candidate = PrismOrientation(c, s, t)
            worst, scale = 0.0, 1.0
            for sigma, form in cases:
                check = self.homotopy_identity_check(sigma, form, grid, orientation=candidate)
                worst = max(worst, check.gap)
                scale = max(scale, abs(check.lhs), abs(check.rhs))
            gaps[candidate.label] = worst
            if chosen is None and worst <= 1e-9 * scale:
                chosen = (c, s, t)

        if chosen is None:
            raise ValidationException("No prism orientation closes the homotopy identity", details=gaps)
        self.orientation = PrismOrientation(*chosen, gaps=gaps)
        app_logger.info(f"Prism orientation calibrated: {self.orientation.label}")
        return self.orientation

    def coverage(self, k: int, n_points: int = 100_000, seed: int = 0) -> Tuple[float, float]:
        """Monte Carlo (coverage, overlap) of the cell decomposition of Δ^k × I"""
        rng = np.random.default_rng(seed)
        barycentric = rng.dirichlet(np.ones(k + 1), size=n_points)
        points = np.column_stack([barycentric[:, 1:], rng.uniform(size=n_points)])
        hits = np.zeros(n_points, dtype=np.int64)
        for cell in prism_cells(k):
            hits += cell.contains(points)
        return float(np.mean(hits >= 1)), float(np.mean(hits >= 2))

    # === Contraction ===

    def check_cycle(self, mu: MeasureChain, forms: Sequence[TestForm], grid: GridSpec) -> float:
        """Largest |T^{∂μ}| over the forms (augmentation for 0-chains); raises NotACycleException"""
        if mu.k == 0:
            defect = abs(self.currents.augmentation(mu))
        else:
            boundary = self.currents.boundary_chain(mu)
            if boundary.is_zero:
                return 0.0
            defect = max(
                (abs(self.currents.evaluate_chain(boundary, form, grid).value) for form in forms),
                default=0.0,
            )
        if defect > self.cycle_tolerance:
            raise NotACycleException(
                f"Chain boundary {defect:.3g} above tolerance {self.cycle_tolerance:.3g}",
                details={"defect": defect, "degree": mu.k},
            )
        return defect

    def contraction_transport(
        self,
        h: LipMap,
        mu: MeasureChain,
        forms: Sequence[TestForm],
        grid: GridSpec,
    ) -> ContractionResult:
        """
        Q = h∘Pμ for a cycle μ and a homotopy h with h_0 the inclusion and h_1
        constant. Each check compares T^{∂Q} with T^{h_s#μ} − T^{h_t#μ}
        evaluated through μ itself on the inclusion end.
        """
        if mu.is_zero:
            return ContractionResult(MeasureChain.zero(mu.k + 1), [])
        self.check_cycle(mu, forms, grid)
        orientation = self.orientation
        transported = self.prism_of_chain(mu, h)
        boundary = self.currents.boundary_chain(transported)
        constant_end = self.slice_chain(mu, 1, h)
        checks = []
        for form in forms:
            lhs = self.currents.evaluate_chain(boundary, form, grid).value
            end = self.currents.evaluate_chain(constant_end, form, grid).value
            start = self.currents.evaluate_chain(mu, form, grid).value
            rhs = end - start if (orientation.s, orientation.t) == (1, 0) else start - end
            checks.append(IdentityCheck(lhs, rhs))
        app_logger.info(f"Contraction of a {mu.k}-cycle with {len(mu)} atoms checked on {len(forms)} forms")
        return ContractionResult(transported, checks)
