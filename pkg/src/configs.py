from pydantic_settings import (
    BaseSettings,
    JsonConfigSettingsSource,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)
from pydantic import Field, field_validator
from functools import lru_cache
from typing import List, Tuple, Type
import json

class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        case_sensitive=True,
        extra="ignore",
        json_file="lab.config.json",
        json_file_encoding="utf-8",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # Runs must be reproducible from files alone: no env, no dotenv
        return (init_settings, JsonConfigSettingsSource(settings_cls))

    # Environment
    ENVIRONMENT: str = "development"
    LOG_LEVEL: str = "INFO"
    LOG_DIR: str = "logs"

    # Service
    SERVICE_NAME: str = "lipcurrents-lab"

    # Reports
    REPORT_SCHEMA_VERSION: str = "1.0"
    REPORT_TIMESTAMPS: bool = False
    DEFAULT_SEED: int = 0

    # LP kernel (free-space norms)
    LP_TOLERANCE: float = 1e-9
    LP_METHODS: List[str] = Field(
        default=["highs-ds", "highs-ipm", "highs"],
        description="HiGHS methods tried in order when the previous one misses LP_TOLERANCE.",
    )
    LP_MAX_ATTEMPTS: int = 3
    CANONICAL_WEIGHT_EPS: float = 1e-15

    # Quadrature
    FD_STEP_FLOOR: float = 1e-8
    QUADRATURE_CHUNK_SIZE: int = 65536
    QUADRATURE_REDUCTION: str = "pairwise"
    MASS_SAFETY_FACTOR: float = 1.1
    CYCLE_TOLERANCE: float = 1e-8

    # Homology / cosheaf
    RANK_RELATIVE_THRESHOLD: float = 1e-8
    COMPLEX_TOLERANCE: float = 1e-10
    SEPARATE_COVER_MAX_HALVINGS: int = 200

    # Batch runs
    BATCH_MAX_WORKERS: int = 1

    @field_validator("LP_METHODS", mode="before")
    @classmethod
    def parse_lp_methods(cls, v):
        """Accept a JSON array or a comma-separated string"""
        if isinstance(v, str):
            try:
                parsed = json.loads(v)
                if isinstance(parsed, list):
                    return parsed
            except (json.JSONDecodeError, ValueError):
                pass
            return [m.strip() for m in v.split(",") if m.strip()]
        return v

    @field_validator("QUADRATURE_REDUCTION", mode="before")
    @classmethod
    def parse_reduction(cls, v):
        if isinstance(v, str):
            v = v.strip().lower()
            if v not in ("pairwise", "fsum"):
                raise ValueError(f"unknown reduction '{v}' (expected 'pairwise' or 'fsum')")
        return v

@lru_cache()
def get_settings() -> Settings:
    return Settings()

def use_config_file(path: str) -> None:
    """Read settings from another JSON file; services bind defaults on import, so call this first"""
    Settings.model_config["json_file"] = path
    get_settings.cache_clear()
