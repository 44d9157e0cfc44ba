from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class VerdictModel(BaseModel):
    check: str
    passed: bool
    measured: Optional[float] = None
    tolerance: Optional[float] = None
    invariant: str


class ProvenanceModel(BaseModel):
    git_hash: str
    config_hash: str
    seed: int
    service: str
    started_at: Optional[str] = None
    finished_at: Optional[str] = None


class ReportModel(BaseModel):
    """Forme persistée d'un rapport de suite (<suite>.json)"""
    schema_version: str
    suite: str
    passed: bool
    scenario: Dict[str, Any]
    columns: List[str]
    rows: List[Dict[str, Any]] = Field(default_factory=list)
    verdicts: List[VerdictModel] = Field(default_factory=list)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    provenance: ProvenanceModel
