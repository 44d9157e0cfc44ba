"""Named catalog of Lipschitz map families used by the suites"""
from math import sqrt
from typing import Callable, Dict

import numpy as np

from src.core.exceptions import NotFoundException, ValidationException
from src.domain.entities.lip_map import LipMap, constant
from src.domain.entities.metric_space import CircleSpace, EuclideanSpace, ProductSpace, SnowflakeSpace
from src.domain.entities.simplex_domain import SimplexDomain

UNIT_INTERVAL = EuclideanSpace(1, name="[0,1]")
REAL_LINE = EuclideanSpace(1, name="R")


def interval_grid(points: int) -> np.ndarray:
    return np.linspace(0.0, 1.0, points).reshape(-1, 1)


def circle_grid(points: int) -> np.ndarray:
    return (2.0 * np.pi * np.arange(points) / points).reshape(-1, 1)


def u_eps(eps: float, k: int = 2) -> LipMap:
    """
    (√(2ε) sin(x1/ε), x2 √(2ε) cos(x1/ε), x3, ..., xk) on Δ^k.
    det ∇u_ε = 2 cos²(x1/ε) while u_ε → u_0 uniformly.
    """
    if k < 2:
        raise ValidationException(f"u_eps needs k >= 2, got {k}")
    amplitude = sqrt(2.0 * eps)

    def fn(x: np.ndarray) -> np.ndarray:
        out = x.copy()
        out[:, 0] = amplitude * np.sin(x[:, 0] / eps)
        out[:, 1] = x[:, 1] * amplitude * np.cos(x[:, 0] / eps)
        return out

    return LipMap(name=f"u_eps[{eps:.17g},{k}]", domain=SimplexDomain(k).space, target=EuclideanSpace(k), fn=fn)


def u_zero(k: int = 2) -> LipMap:
    """Uniform limit of u_ε: zero in the first two coordinates"""
    def fn(x: np.ndarray) -> np.ndarray:
        out = x.copy()
        out[:, :2] = 0.0
        return out

    return LipMap(name=f"u_zero[{k}]", domain=SimplexDomain(k).space, target=EuclideanSpace(k), fn=fn, lipschitz=1.0 if k > 2 else 0.0)


def v_eps(eps: float) -> LipMap:
    """(√ε sin(x1/ε²), √ε x2 cos(x1/ε²)) on Δ²; det ∇v_ε = cos²(x1/ε²)/ε"""
    amplitude = sqrt(eps)
    frequency = 1.0 / (eps * eps)

    def fn(x: np.ndarray) -> np.ndarray:
        return np.column_stack([
            amplitude * np.sin(x[:, 0] * frequency),
            amplitude * x[:, 1] * np.cos(x[:, 0] * frequency),
        ])

    return LipMap(name=f"v_eps[{eps:.17g}]", domain=SimplexDomain(2).space, target=EuclideanSpace(2), fn=fn)


def smooth_perturbation(t: float, k: int = 2) -> LipMap:
    """
    x ↦ x + t (sin x2, sin x1, 0, ..., 0) on Δ^k.
    det ∇ = 1 − t² cos x1 cos x2 and the map is t-close to the identity in MT.
    """
    if k < 2:
        raise ValidationException(f"smooth_perturbation needs k >= 2, got {k}")

    def fn(x: np.ndarray) -> np.ndarray:
        out = x.copy()
        out[:, 0] = x[:, 0] + t * np.sin(x[:, 1])
        out[:, 1] = x[:, 1] + t * np.sin(x[:, 0])
        return out

    return LipMap(
        name=f"perturbed[{t:.17g},{k}]",
        domain=SimplexDomain(k).space,
        target=EuclideanSpace(k),
        fn=fn,
        lipschitz=1.0 + abs(t),
    )


def f_t(t: float, samples: int = 257) -> LipMap:
    """0 on [0, t], (x − t)/√t on [t, 2t], √t on [2t, 1]"""
    if not 0.0 < t <= 0.5:
        raise ValidationException(f"f_t needs 0 < t <= 1/2, got {t}")
    root = sqrt(t)

    def fn(x: np.ndarray) -> np.ndarray:
        return np.clip((x - t) / root, 0.0, root)

    return LipMap(
        name=f"f_t[{t:.17g}]",
        domain=UNIT_INTERVAL,
        target=REAL_LINE,
        fn=fn,
        sample=interval_grid(samples),
        lipschitz=1.0 / root,
    )


def f_zero(samples: int = 257) -> LipMap:
    return constant(UNIT_INTERVAL, REAL_LINE, 0.0, sample=interval_grid(samples)).renamed("f_0")


def sawtooth(n: int, samples: int = 257) -> LipMap:
    """dist(x, (1/n)Z): Lipschitz 1, sup 1/(2n)"""
    def fn(x: np.ndarray) -> np.ndarray:
        return np.abs(x - np.round(x * n) / n)

    return LipMap(
        name=f"sawtooth[{n}]",
        domain=UNIT_INTERVAL,
        target=REAL_LINE,
        fn=fn,
        sample=interval_grid(samples),
        lipschitz=1.0,
    )


def t_sin(t: float, samples: int = 2048) -> LipMap:
    """θ ↦ t sin θ on the unit circle"""
    return LipMap(
        name=f"t_sin[{t:.17g}]",
        domain=CircleSpace(),
        target=REAL_LINE,
        fn=lambda theta: t * np.sin(theta),
        sample=circle_grid(samples),
        lipschitz=abs(t),
        derivative=lambda theta: t * np.cos(theta),
    )


def t_sin_over_t(t: float, samples: int = 2048) -> LipMap:
    """θ ↦ t sin(θ/t) on the unit circle; 1/t must be an integer"""
    periods = round(1.0 / t)
    if periods < 1 or abs(periods * t - 1.0) > 1e-12:
        raise ValidationException(f"t_sin_over_t needs 1/t integer, got t={t}")
    return LipMap(
        name=f"t_sin_over_t[{t:.17g}]",
        domain=CircleSpace(),
        target=REAL_LINE,
        fn=lambda theta: t * np.sin(theta * periods),
        sample=circle_grid(samples),
        lipschitz=1.0,
        derivative=lambda theta: np.cos(theta * periods),
    )


def circle_zero(samples: int = 2048) -> LipMap:
    return LipMap(
        name="circle_zero",
        domain=CircleSpace(),
        target=REAL_LINE,
        fn=lambda theta: np.zeros_like(theta),
        sample=circle_grid(samples),
        lipschitz=0.0,
        derivative=lambda theta: np.zeros_like(theta),
    )


def piecewise_linear(values: np.ndarray, samples: int = 129, name: str = "") -> LipMap:
    """Interpolant of `values` at equally spaced knots of [0, 1]"""
    values = np.asarray(values, dtype=float).reshape(-1)
    knots = np.linspace(0.0, 1.0, len(values))
    slopes = np.abs(np.diff(values)) / np.diff(knots)
    label = name or "pl[" + ",".join(f"{v:.17g}" for v in values) + "]"
    return LipMap(
        name=label,
        domain=UNIT_INTERVAL,
        target=REAL_LINE,
        fn=lambda x: np.interp(x[:, 0], knots, values),
        sample=interval_grid(samples),
        lipschitz=float(slopes.max()) if len(slopes) else 0.0,
    )


def random_piecewise_linear(rng: np.random.Generator, knots: int = 6, samples: int = 129) -> LipMap:
    return piecewise_linear(rng.uniform(-1.0, 1.0, size=knots), samples)


def snowflake_curve(alpha: float) -> LipMap:
    """t ↦ t from [0,1] into (R, |·|^alpha)"""
    target = SnowflakeSpace(REAL_LINE, alpha)
    return LipMap(name=f"snowflake_id[{alpha:.17g}]", domain=UNIT_INTERVAL, target=target, fn=lambda x: x)


def snowflake_constant(alpha: float, value: float = 0.5) -> LipMap:
    target = SnowflakeSpace(REAL_LINE, alpha)
    return constant(UNIT_INTERVAL, target, value)


def affine_map(matrix, offset, name: str = "") -> LipMap:
    """x ↦ A x + b between Euclidean spaces"""
    a = np.atleast_2d(np.asarray(matrix, dtype=float))
    b = np.asarray(offset, dtype=float).reshape(-1)
    label = name or "aff[" + ";".join(",".join(f"{x:.17g}" for x in row) for row in a) + "|" + ",".join(
        f"{x:.17g}" for x in b
    ) + "]"
    return LipMap(
        name=label,
        domain=EuclideanSpace(a.shape[1]),
        target=EuclideanSpace(a.shape[0]),
        fn=lambda p: p @ a.T + b,
        lipschitz=float(np.linalg.norm(a, 2)),
    )


def cone_homotopy(dim: int) -> LipMap:
    """h(x, t) = (1 − t) x on R^dim × I: h_0 = id, h_1 ≡ 0"""
    domain = ProductSpace(EuclideanSpace(dim), EuclideanSpace(1, name="I"))

    def fn(points: np.ndarray) -> np.ndarray:
        x, t = points[:, :dim], points[:, dim:]
        return (1.0 - t) * x

    return LipMap(name=f"cone[{dim}]", domain=domain, target=EuclideanSpace(dim), fn=fn)


def projection_homotopy(dim: int) -> LipMap:
    """h(x, t) = x on R^dim × I: the constant homotopy"""
    domain = ProductSpace(EuclideanSpace(dim), EuclideanSpace(1, name="I"))
    return LipMap(
        name=f"stay[{dim}]",
        domain=domain,
        target=EuclideanSpace(dim),
        fn=lambda points: points[:, :dim],
        lipschitz=1.0,
    )


FAMILIES: Dict[str, Callable[..., LipMap]] = {
    "u_eps": u_eps,
    "u_zero": u_zero,
    "v_eps": v_eps,
    "smooth_perturbation": smooth_perturbation,
    "f_t": f_t,
    "f_zero": f_zero,
    "sawtooth": sawtooth,
    "t_sin": t_sin,
    "t_sin_over_t": t_sin_over_t,
    "circle_zero": circle_zero,
    "snowflake_curve": snowflake_curve,
    "snowflake_constant": snowflake_constant,
}


def get_family(name: str) -> Callable[..., LipMap]:
    try:
        return FAMILIES[name]
    except KeyError:
        raise NotFoundException(f"Unknown map family '{name}'", details={"known": sorted(FAMILIES)})
