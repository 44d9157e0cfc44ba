from typing import Optional

import numpy as np

from src.core.exceptions import ValidationException
from src.core.logger import app_logger
from src.domain.entities.lip_map import LipMap
from src.domain.entities.metric_space import MetricSpace, PointCloud, ProductSpace, as_points
from src.domain.entities.signed_measure import FreeSpaceElement, SignedMeasure
from src.infrastructure.frameworks.lp_solver_service import LpInstance, LpSolverService
from src.infrastructure.frameworks.transport_service import TransportService

class FreeSpaceService:
    """
    Service pour la norme d'Arens–Eells des éléments à support fini
    et les applications structurelles de l'espace libre
    """

    METHODS = ("lp", "transport")

    def __init__(self, lp_solver: LpSolverService, transport: TransportService):
        self.lp_solver = lp_solver
        self.transport = transport

    def lp_instance(self, m: FreeSpaceElement, over_carrier: bool = False) -> LpInstance:
        reduced = m.reduced()
        points, weights = reduced.points, reduced.weights
        carrier = m.carrier
        if over_carrier and isinstance(carrier, PointCloud):
            taken = {carrier.key(p) for p in points} | {carrier.key(m.base_point)}
            extra = np.array([p for p in carrier.points if carrier.key(p) not in taken]).reshape(-1, carrier.dim)
            points = np.vstack([points, extra])
            weights = np.concatenate([weights, np.zeros(len(extra))])
        base = np.repeat(m.base_point[None, :], len(points), axis=0)
        return LpInstance(
            weights=weights,
            distances=carrier.pairwise(points) if len(points) else np.zeros((0, 0)),
            base_distances=carrier.distance(points, base) if len(points) else np.zeros(0),
        )

    def ae_norm(self, m: FreeSpaceElement, method: str = "lp", over_carrier: bool = False) -> float:
        """
        sup { Σ a_i f(x_i) : Lip(f) <= 1, f(x0) = 0 }.

        "lp" solves the potential LP, "transport" balances the element
        through x0 and computes the earth mover cost.
        """
        if method not in self.METHODS:
            raise ValidationException(f"Unknown norm method '{method}'", details={"known": list(self.METHODS)})
        if m.reduced().is_zero:
            return 0.0
        if method == "transport":
            return self.transport.balanced_cost(m.balanced())
        solution = self.lp_solver.solve(self.lp_instance(m, over_carrier))
        app_logger.debug(f"AE norm of {len(m.measure)} atoms by {solution.method}: {solution.value:.12g}")
        return solution.value

    def dirac_norm(self, space: MetricSpace, p, q) -> float:
        """‖δ_p − δ_q‖ = d(p, q)"""
        return space.dist(p, q)

    def four_point_norm(self, space: MetricSpace, p1, p2, p3, p4) -> np.ndarray:
        """
        ‖δ_p1 − δ_p2 − δ_p3 + δ_p4‖, row-wise over batches: the cheaper matching
        of the sources {p1, p4} to the sinks {p2, p3}.
        """
        p1, p2, p3, p4 = (as_points(p, space.dim) for p in (p1, p2, p3, p4))
        straight = space.distance(p1, p2) + space.distance(p4, p3)
        crossed = space.distance(p1, p3) + space.distance(p4, p2)
        return np.minimum(straight, crossed)

    def pushforward_dual(self, phi: LipMap, m: FreeSpaceElement) -> FreeSpaceElement:
        """Σ a_i δ_{x_i} ↦ Σ a_i δ_{φ(x_i)} based at φ(x0)"""
        base = phi(m.base_point[None, :])[0]
        if m.measure.is_zero:
            return FreeSpaceElement(SignedMeasure.zero(phi.target), base)
        measure = SignedMeasure.from_atoms(phi.target, phi(m.measure.points), m.measure.weights)
        return FreeSpaceElement(measure, base)

    def product_embed(self, mu: FreeSpaceElement, nu: FreeSpaceElement) -> FreeSpaceElement:
        """(μ, ν) ↦ Σ a_i δ_(x_i, y0) + Σ b_j δ_(x0, y_j) over the sum-metric product"""
        space = ProductSpace(mu.carrier, nu.carrier)
        x0, y0 = mu.base_point, nu.base_point
        points, weights = [], []
        if not mu.measure.is_zero:
            points.append(space.join(mu.measure.points, y0[None, :]))
            weights.append(mu.measure.weights)
        if not nu.measure.is_zero:
            points.append(space.join(x0[None, :], nu.measure.points))
            weights.append(nu.measure.weights)
        base = space.join(x0[None, :], y0[None, :])[0]
        if not points:
            return FreeSpaceElement(SignedMeasure.zero(space), base)
        measure = SignedMeasure.from_atoms(space, np.vstack(points), np.concatenate(weights))
        return FreeSpaceElement(measure, base)

    def rebase(self, m: FreeSpaceElement, base_point) -> FreeSpaceElement:
        """μ′(f) = μ(f − f(x1)): subtract (Σ a_i) δ_x1 and read at the new base point"""
        correction = SignedMeasure.dirac(m.carrier, m.base_point, -m.measure.total_mass)
        return FreeSpaceElement(m.measure + correction, base_point)

    def norm_of(
        self,
        carrier: MetricSpace,
        points,
        weights,
        base_point: Optional[np.ndarray] = None,
        method: str = "lp",
    ) -> float:
        return self.ae_norm(FreeSpaceElement.of(carrier, points, weights, base_point), method)
