from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linprog
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from src.configs import get_settings
from src.core.exceptions import LpNumericsException
from src.core.logger import app_logger

settings = get_settings()


@dataclass(frozen=True, eq=False)
class LpInstance:
    """
    Potential form of the free-space norm:

        maximize    Σ a_i f_i
        subject to  f_i − f_j <= d(x_i, x_j)   for i != j
                    |f_i| <= d(x_i, x0)

    Variables are the values of f on the non-base points, f(x0) = 0.
    """
    weights: np.ndarray
    distances: np.ndarray = field(repr=False)
    base_distances: np.ndarray = field(repr=False)
    labels: Optional[List[str]] = None

    @property
    def size(self) -> int:
        return len(self.weights)

    def constraint_matrix(self):
        n = self.size
        i, j = np.nonzero(~np.eye(n, dtype=bool))
        rows = np.arange(len(i))
        data = np.concatenate([np.ones(len(i)), -np.ones(len(i))])
        matrix = sparse.coo_matrix(
            (data, (np.concatenate([rows, rows]), np.concatenate([i, j]))),
            shape=(len(i), n),
        ).tocsr()
        return matrix, self.distances[i, j]

    def to_text(self) -> str:
        """Plain-text dump, one constraint per line"""
        names = self.labels or [f"f{i}" for i in range(self.size)]
        objective = " + ".join(f"{w:.17g} {name}" for w, name in zip(self.weights, names))
        lines = [f"maximize: {objective or '0'}"]
        for i in range(self.size):
            for j in range(self.size):
                if i != j:
                    lines.append(f"{names[i]} - {names[j]} <= {self.distances[i, j]:.17g}")
        for i in range(self.size):
            lines.append(f"-{self.base_distances[i]:.17g} <= {names[i]} <= {self.base_distances[i]:.17g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LpSolution:
    value: float
    potentials: np.ndarray = field(repr=False)
    method: str
    primal_residual: float
    duality_gap: Optional[float]


class LpSolverService:
    """Service pour résoudre les LP de transport (HiGHS via scipy)"""

    def __init__(
        self,
        tolerance: float = settings.LP_TOLERANCE,
        methods: Optional[List[str]] = None,
        max_attempts: int = settings.LP_MAX_ATTEMPTS,
    ):
        self.tolerance = tolerance
        self.methods = list(methods or settings.LP_METHODS)
        self.max_attempts = max_attempts

    def solve(self, instance: LpInstance) -> LpSolution:
        """Optimum of the instance; walks the configured methods until one meets the tolerance"""
        if instance.size == 0:
            return LpSolution(0.0, np.zeros(0), "empty", 0.0, 0.0)

        retrying = Retrying(
            stop=stop_after_attempt(min(self.max_attempts, len(self.methods))),
            retry=retry_if_exception_type(LpNumericsException),
            reraise=False,
        )
        try:
            for attempt in retrying:
                with attempt:
                    method = self.methods[attempt.retry_state.attempt_number - 1]
                    return self._solve_with(instance, method)
        except RetryError as e:
            last = e.last_attempt.exception()
            app_logger.error(f"LP failed with every method: {last}")
            raise LpNumericsException(
                f"LP of size {instance.size} missed tolerance {self.tolerance:g} with {self.methods}",
                details=getattr(last, "details", None),
            ) from last

    def _solve_with(self, instance: LpInstance, method: str) -> LpSolution:
        matrix, bounds_rhs = instance.constraint_matrix()
        bounds = [(-b, b) for b in instance.base_distances]
        result = linprog(
            -instance.weights,
            A_ub=matrix if matrix.shape[0] else None,
            b_ub=bounds_rhs if matrix.shape[0] else None,
            bounds=bounds,
            method=method,
            options={
                "primal_feasibility_tolerance": 1e-10,
                "dual_feasibility_tolerance": 1e-10,
            },
        )
        if result.status != 0 or result.x is None:
            raise LpNumericsException(
                f"{method}: {result.message}",
                details={"method": method, "status": int(result.status)},
            )

        potentials = np.asarray(result.x, dtype=float)
        scale = max(1.0, float(np.max(instance.distances, initial=0.0)), float(np.max(instance.base_distances)))
        residual = 0.0
        if matrix.shape[0]:
            residual = float(np.max(matrix @ potentials - bounds_rhs, initial=0.0))
        residual = max(residual, float(np.max(np.abs(potentials) - instance.base_distances, initial=0.0)))
        gap = self._duality_gap(result, instance, bounds_rhs)
        if residual > self.tolerance * scale or (gap is not None and gap > self.tolerance * scale):
            raise LpNumericsException(
                f"{method}: residual {residual:.3g}, duality gap {gap}",
                details={"method": method, "residual": residual, "gap": gap},
            )

        value = -float(result.fun)
        app_logger.debug(f"LP size {instance.size} solved by {method}: {value:.12g}")
        return LpSolution(value, potentials, method, residual, gap)

    @staticmethod
    def _duality_gap(result, instance: LpInstance, bounds_rhs: np.ndarray) -> Optional[float]:
        ineq = getattr(result, "ineqlin", None)
        lower = getattr(result, "lower", None)
        upper = getattr(result, "upper", None)
        if lower is None or upper is None:
            return None
        dual = float(np.dot(-instance.base_distances, lower.marginals) + np.dot(instance.base_distances, upper.marginals))
        if ineq is not None and len(bounds_rhs):
            dual += float(np.dot(bounds_rhs, ineq.marginals))
        return abs(float(result.fun) - dual)
