from math import fsum
from typing import List, Tuple

import numpy as np

from src.configs import get_settings
from src.core.exceptions import DegenerateStepException, DegreeMismatchException, ValidationException
from src.core.logger import app_logger
from src.domain.entities.current import CurrentValue, GridSpec, LipSimplex, TestForm
from src.domain.entities.simplex_domain import SimplexDomain

settings = get_settings()


def determinant(jacobians: np.ndarray) -> np.ndarray:
    """Batched determinant of (m, k, k) matrices; closed forms up to k = 3"""
    k = jacobians.shape[1]
    if k == 0:
        return np.ones(len(jacobians))
    j = jacobians
    if k == 1:
        return j[:, 0, 0]
    if k == 2:
        return j[:, 0, 0] * j[:, 1, 1] - j[:, 0, 1] * j[:, 1, 0]
    if k == 3:
        return (
            j[:, 0, 0] * (j[:, 1, 1] * j[:, 2, 2] - j[:, 1, 2] * j[:, 2, 1])
            - j[:, 0, 1] * (j[:, 1, 0] * j[:, 2, 2] - j[:, 1, 2] * j[:, 2, 0])
            + j[:, 0, 2] * (j[:, 1, 0] * j[:, 2, 1] - j[:, 1, 1] * j[:, 2, 0])
        )
    return np.linalg.det(j)


class QuadratureService:
    """
    Service pour l'intégration de f∘σ · det ∇(π∘σ) sur le simplexe standard
    (règle du centre de gravité sur la subdivision de Freudenthal)
    """

    REDUCTIONS = ("pairwise", "fsum")

    def __init__(
        self,
        chunk_size: int = settings.QUADRATURE_CHUNK_SIZE,
        reduction: str = settings.QUADRATURE_REDUCTION,
        step_floor: float = settings.FD_STEP_FLOOR,
    ):
        if reduction not in self.REDUCTIONS:
            raise ValidationException(f"Unknown reduction '{reduction}'", details={"known": list(self.REDUCTIONS)})
        self.chunk_size = chunk_size
        self.reduction = reduction
        self.step_floor = step_floor

    def integrate(self, sigma: LipSimplex, form: TestForm, grid: GridSpec) -> CurrentValue:
        """[σ](f dπ), with |value(n) − value(2n)| as error estimate when grid.refine is set"""
        if form.k != sigma.k:
            raise DegreeMismatchException(
                f"Form {form.name} of degree {form.k} on a {sigma.k}-simplex",
                expected=sigma.k,
                actual=form.k,
            )
        if sigma.k == 0:
            value = float(form.f_values(sigma(np.zeros((1, 0))))[0])
            return CurrentValue(value, 0.0 if grid.refine else None, grid)

        value = self.integrate_at(sigma, form, grid.n)
        error = None
        if grid.refine:
            error = abs(value - self.integrate_at(sigma, form, 2 * grid.n))
        app_logger.debug(f"[{sigma.base.name}]({form.name}) n={grid.n}: {value:.12g} (error {error})")
        return CurrentValue(value, error, grid)

    def integrate_at(self, sigma: LipSimplex, form: TestForm, n: int) -> float:
        step = 1.0 / (2.0 * n)
        if step < self.step_floor:
            raise DegenerateStepException(
                f"Finite-difference step {step:.3g} below the floor {self.step_floor:.3g}",
                step=step,
                floor=self.step_floor,
            )
        domain = SimplexDomain(sigma.k)
        partials: List[float] = []
        for centroids in domain.cell_centroids(n, self.chunk_size):
            values = self.integrand(sigma, form, centroids, step)
            if self.reduction == "pairwise":
                partials.append(float(np.sum(values)))
            else:
                partials.extend(values.tolist())
        return domain.cell_weight(n) * fsum(partials)

    def integrand(self, sigma: LipSimplex, form: TestForm, s: np.ndarray, step: float) -> np.ndarray:
        f_values = form.f_values(sigma(s))
        return f_values * determinant(self.jacobian(sigma, form, s, step))

    def jacobian(self, sigma: LipSimplex, form: TestForm, s: np.ndarray, step: float) -> np.ndarray:
        """
        (m, k, k) finite-difference Jacobian of π∘σ at parameter points s.

        Central differences of half-width `step` where both neighbours stay in
        Δ^k, one-sided where only one does, central with the largest fitting
        step otherwise.
        """
        k = s.shape[1]
        room_minus = s
        room_plus = np.repeat((1.0 - s.sum(axis=1))[:, None], k, axis=1)
        columns = []
        for j in range(k):
            plus, minus = self._steps(room_plus[:, j], room_minus[:, j], step)
            forward = s.copy()
            backward = s.copy()
            forward[:, j] += plus
            backward[:, j] -= minus
            g_forward = form.pi_values(sigma(forward))
            g_backward = form.pi_values(sigma(backward))
            columns.append((g_forward - g_backward) / (plus + minus)[:, None])
        return np.stack(columns, axis=2)

    @staticmethod
    def _steps(room_plus: np.ndarray, room_minus: np.ndarray, step: float) -> Tuple[np.ndarray, np.ndarray]:
        plus_ok = room_plus >= step
        minus_ok = room_minus >= step
        shrunk = np.minimum(room_plus, room_minus)
        plus = np.where(plus_ok, step, np.where(minus_ok, 0.0, shrunk))
        minus = np.where(minus_ok, step, np.where(plus_ok, 0.0, shrunk))
        return plus, minus

    def image_measure(self, sigma: LipSimplex, n: int) -> Tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes pushed through σ with their cell weights"""
        domain = SimplexDomain(sigma.k)
        if sigma.k == 0:
            return sigma(np.zeros((1, 0))), np.ones(1)
        points = [sigma(c) for c in domain.cell_centroids(n, self.chunk_size)]
        nodes = np.vstack(points)
        return nodes, np.full(len(nodes), domain.cell_weight(n))

