"""Named catalog of test forms f dπ_1 ∧ ... ∧ dπ_k"""
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from src.core.exceptions import NotFoundException, ValidationException
from src.domain.entities.current import TestForm
from src.domain.entities.metric_space import MetricSpace, as_points


def _coordinate(i: int):
    return lambda points: points[:, i]


def _constant(value: float):
    return lambda points: np.full(len(points), value)


def volume_form(dim: int, f_value: float = 1.0) -> TestForm:
    """f dx_1 ∧ ... ∧ dx_dim with constant f"""
    return TestForm(
        name=f"vol[{dim}]" if f_value == 1.0 else f"{f_value:g}*vol[{dim}]",
        f=_constant(f_value),
        pis=tuple(_coordinate(i) for i in range(dim)),
        f_bound=abs(f_value),
        f_lipschitz=0.0,
        pi_lipschitz=(1.0,) * dim,
    )


def coordinate_form(indices: Sequence[int], f: Optional[Callable] = None, f_bound: float = 1.0, f_lipschitz: float = 0.0) -> TestForm:
    """f dx_{i_1} ∧ ... ∧ dx_{i_k}"""
    indices = tuple(int(i) for i in indices)
    return TestForm(
        name="dx[" + ",".join(str(i) for i in indices) + "]",
        f=f or _constant(1.0),
        pis=tuple(_coordinate(i) for i in indices),
        f_bound=f_bound,
        f_lipschitz=f_lipschitz,
        pi_lipschitz=(1.0,) * len(indices),
    )


def affine_form(
    f_gradient: np.ndarray,
    f_offset: float,
    pi_gradients: np.ndarray,
    name: str = "affine",
    radius: float = 10.0,
) -> TestForm:
    """(a·x + c) d(b_1·x) ∧ ... with f bounded on the ball of the given radius"""
    a = np.asarray(f_gradient, dtype=float).reshape(-1)
    rows = np.asarray(pi_gradients, dtype=float).reshape(-1, len(a))
    return TestForm(
        name=name,
        f=lambda points: points @ a + f_offset,
        pis=tuple((lambda b: (lambda points: points @ b))(row) for row in rows),
        f_bound=float(np.linalg.norm(a) * radius + abs(f_offset)),
        f_lipschitz=float(np.linalg.norm(a)),
        pi_lipschitz=tuple(float(np.linalg.norm(row)) for row in rows),
    )


def random_affine_form(rng: np.random.Generator, dim: int, degree: int, name: str = "") -> TestForm:
    return affine_form(
        rng.normal(size=dim),
        float(rng.normal()),
        rng.normal(size=(degree, dim)),
        name=name or f"affine[{dim},{degree}]",
    )


def random_smooth_form(rng: np.random.Generator, dim: int, degree: int, name: str = "") -> TestForm:
    """sin(a·x + c) d sin(b_1·x) ∧ ..."""
    a = rng.normal(size=dim)
    c = float(rng.uniform(0.0, 2.0 * np.pi))
    rows = rng.normal(size=(degree, dim))
    return TestForm(
        name=name or f"smooth[{dim},{degree}]",
        f=lambda points: np.sin(points @ a + c),
        pis=tuple((lambda b: (lambda points: np.sin(points @ b)))(row) for row in rows),
        f_bound=1.0,
        f_lipschitz=float(np.linalg.norm(a)),
        pi_lipschitz=tuple(float(np.linalg.norm(row)) for row in rows),
    )


def constant_pi_form(dim: int, degree: int, index: int = 0, value: float = 0.3) -> TestForm:
    """Volume-type form whose π_index is constant"""
    if not 0 <= index < degree:
        raise ValidationException(f"index {index} outside 0..{degree - 1}")
    pis = [_coordinate(i) for i in range(degree)]
    pis[index] = _constant(value)
    lips = [1.0] * degree
    lips[index] = 0.0
    return TestForm(
        name=f"const_pi[{dim},{degree},{index}]",
        f=_constant(1.0),
        pis=tuple(pis),
        f_bound=1.0,
        f_lipschitz=0.0,
        pi_lipschitz=tuple(lips),
    )


def bump_form(space: MetricSpace, center, radius: float) -> TestForm:
    """0-form max(0, 1 − d(x, center)/radius)"""
    point = as_points(center, space.dim)[0]

    def f(points: np.ndarray) -> np.ndarray:
        distances = space.distance(points, np.repeat(point[None, :], len(points), axis=0))
        return np.maximum(0.0, 1.0 - distances / radius)

    return TestForm(
        name="bump[" + ",".join(f"{x:.6g}" for x in point) + f";{radius:.6g}]",
        f=f,
        f_bound=1.0,
        f_lipschitz=1.0 / radius,
    )


FORMS: Dict[str, Callable[..., TestForm]] = {
    "volume": volume_form,
    "coordinate": coordinate_form,
    "constant_pi": constant_pi_form,
}


def get_form(name: str, **params) -> TestForm:
    try:
        builder = FORMS[name]
    except KeyError:
        raise NotFoundException(f"Unknown form '{name}'", details={"known": sorted(FORMS)})
    return builder(**params)
