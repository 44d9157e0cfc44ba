from typing import Any, Dict, List, Optional, Type

from pydantic import BaseModel, ConfigDict, Field, field_validator

# === Suite parameters ===

class SuiteParams(BaseModel):
    """Base des paramètres de suite: aucun champ inconnu accepté"""
    model_config = ConfigDict(extra="forbid")


class HomotopyIdentityParams(SuiteParams):
    """Paramètres de la suite homotopy-identity (opérateur prisme)"""
    degrees: List[int] = Field([1, 2, 3], min_length=1, description="Degrés k des simplexes testés (0 à 3)")
    grid_n: int = Field(8, ge=1, le=256, description="Grille de quadrature pour les données affines")
    smooth_grid_n: int = Field(12, ge=1, le=256, description="Grille pour le simplexe u_eps")
    smooth_eps: float = Field(0.1, gt=0, le=1)
    n_forms: int = Field(3, ge=1, le=10, description="Formes aléatoires par degré")
    coverage_points: int = Field(100_000, ge=1000, le=5_000_000)
    contraction_forms: int = Field(5, ge=1, le=20)

    @field_validator("degrees")
    @classmethod
    def check_degrees(cls, v):
        if any(k < 0 or k > 3 for k in v):
            raise ValueError("degrees must lie in 0..3")
        return sorted(set(v))


class BoundaryIdentityParams(SuiteParams):
    """Paramètres de la suite boundary-identity (courants T^mu)"""
    degrees: List[int] = Field([1, 2, 3], min_length=1)
    grid_n: int = Field(32, ge=1, le=512)
    n_forms: int = Field(5, ge=1, le=20)
    refinement_grids: List[int] = Field([8, 16, 32], min_length=2)
    refinement_eps: float = Field(0.1, gt=0, le=1)
    mass_eps: float = Field(0.05, gt=0, le=1)
    mass_grid_n: int = Field(64, ge=1, le=1024)
    lattice_m: int = Field(32, ge=2, le=256)
    calibration_grid_n: int = Field(64, ge=1, le=1024, description="Grille du calibrage sur le simplexe standard")

    @field_validator("degrees")
    @classmethod
    def check_degrees(cls, v):
        if any(k < 1 or k > 3 for k in v):
            raise ValueError("degrees must lie in 1..3")
        return sorted(set(v))

    @field_validator("refinement_grids")
    @classmethod
    def check_grids(cls, v):
        if any(b <= a for a, b in zip(v, v[1:])) or v[0] < 1:
            raise ValueError("refinement_grids must be positive and strictly increasing")
        return v


class UEpsParams(SuiteParams):
    """Paramètres de la suite u-eps"""
    epsilons: List[float] = Field([0.05, 0.02, 0.01], min_length=3)
    perturbations: List[float] = Field([0.02, 0.01, 0.005], min_length=2, description="Pas t de la perturbation id + t w")
    k: int = Field(2, ge=2, le=3)
    n_min: int = Field(64, ge=1)
    lattice_m: int = Field(32, ge=2, le=128)
    value_tolerance: float = Field(0.05, gt=0, description="Écart relatif admis à vol(Δ^k)")
    lip_fraction: float = Field(0.9, gt=0, le=1, description="Fraction de sqrt(2/eps) exigée pour Lip(u_eps)")

    @field_validator("epsilons")
    @classmethod
    def check_epsilons(cls, v):
        if any(e <= 0 or e > 1 for e in v):
            raise ValueError("epsilons must lie in (0, 1]")
        return v

    @field_validator("perturbations")
    @classmethod
    def check_perturbations(cls, v):
        if any(t <= 0 or t > 0.1 for t in v):
            raise ValueError("perturbations must lie in (0, 0.1]")
        return v


class VEpsParams(SuiteParams):
    """Paramètres de la suite v-eps"""
    epsilons: List[float] = Field([0.1, 0.05, 0.025], min_length=2)
    n_min: int = Field(64, ge=1)
    spread_tolerance: float = Field(0.1, gt=0)

    @field_validator("epsilons")
    @classmethod
    def check_epsilons(cls, v):
        if any(e <= 0 or e > 1 for e in v):
            raise ValueError("epsilons must lie in (0, 1]")
        return v


class FtParams(SuiteParams):
    """Paramètres de la suite f-t"""
    t_values: List[float] = Field([0.25, 0.125, 0.0625], min_length=3)
    samples: int = Field(257, ge=3)
    sawtooth_n: List[int] = Field([4, 8, 16], min_length=3)

    @field_validator("t_values")
    @classmethod
    def check_t(cls, v):
        if any(t <= 0 or t > 0.5 for t in v):
            raise ValueError("t_values must lie in (0, 1/2]")
        return v


class MtMetricParams(SuiteParams):
    """Paramètres de la suite mt-metric (normes AE et métrique MT)"""
    dim: int = Field(2, ge=1, le=5)
    n_four_point: int = Field(1000, ge=1)
    n_dirac: int = Field(1000, ge=1)
    n_inclusion: int = Field(100, ge=1)
    n_map_pairs: int = Field(50, ge=1)
    n_norm_checks: int = Field(50, ge=1)
    map_samples: int = Field(65, ge=3)


class C1CompareParams(SuiteParams):
    """Paramètres de la suite c1-compare"""
    t_values: List[float] = Field([0.5, 0.25, 0.125, 0.0625], min_length=3)
    samples: int = Field(2048, ge=16)
    floor: float = Field(0.5, ge=0, description="Seuil sous lequel la famille t sin(x/t) ne doit pas descendre")

    @field_validator("t_values")
    @classmethod
    def check_t(cls, v):
        for t in v:
            periods = round(1.0 / t) if t > 0 else 0
            if periods < 1 or abs(periods * t - 1.0) > 1e-12:
                raise ValueError("every t must be 1/m for an integer m >= 1")
        return v


class MvCosheafParams(SuiteParams):
    """Paramètres de la suite mv-cosheaf"""
    n_instances: int = Field(1000, ge=1)
    n_atoms: int = Field(50, ge=1)
    n_kernel: int = Field(200, ge=1)
    u: Dict[str, Any] = Field(default_factory=lambda: {"kind": "ball", "center": [-0.5, 0.0], "radius": 1.0})
    v: Dict[str, Any] = Field(default_factory=lambda: {"kind": "ball", "center": [0.5, 0.0], "radius": 1.0})


class HomologyParams(SuiteParams):
    """Paramètres de la suite homology"""
    n: int = Field(4, ge=1, le=64, description="Dimension des espaces du complexe alterné")
    top_degree: int = Field(6, ge=0, le=20)
    n_conjugations: int = Field(5, ge=0, le=50)
    complexes: List[Dict[str, Any]] = Field(default_factory=list, description="Complexes supplémentaires (builder ou matrices, 'expected' optionnel)")

    @field_validator("top_degree")
    @classmethod
    def check_top(cls, v):
        if v % 2:
            raise ValueError("top_degree must be even (the top identity map kills the top group)")
        return v


class SnowflakeParams(SuiteParams):
    """Paramètres de la suite snowflake"""
    alpha: float = Field(0.5, gt=0, lt=1)
    meshes: List[float] = Field([1e-2, 1e-4], min_length=2)
    anchors: int = Field(17, ge=2)
    scaling_tolerance: float = Field(0.05, gt=0)

    @field_validator("meshes")
    @classmethod
    def check_meshes(cls, v):
        if any(h <= 0 or h >= 1 for h in v) or any(b >= a for a, b in zip(v, v[1:])):
            raise ValueError("meshes must lie in (0, 1) and decrease strictly")
        return v


SUITE_PARAMS: Dict[str, Type[SuiteParams]] = {
    "homotopy-identity": HomotopyIdentityParams,
    "boundary-identity": BoundaryIdentityParams,
    "u-eps": UEpsParams,
    "v-eps": VEpsParams,
    "f-t": FtParams,
    "mt-metric": MtMetricParams,
    "c1-compare": C1CompareParams,
    "mv-cosheaf": MvCosheafParams,
    "snowflake": SnowflakeParams,
    "homology": HomologyParams,
}

# === Request Schemas ===

class ScenarioRequest(BaseModel):
    """Scénario: suite, paramètres, graine"""
    model_config = ConfigDict(extra="forbid")

    suite: str = Field(..., description="Nom de la suite")
    params: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = Field(None, ge=0, description="Graine; DEFAULT_SEED si absente")
    name: Optional[str] = Field(None, description="Nom des fichiers de sortie; la suite par défaut")
