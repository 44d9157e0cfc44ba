from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

# === Response Schemas ===

class SuiteCatalogEntry(BaseModel):
    """Entrée du catalogue des suites"""
    name: str
    description: str
    reference: str = Field(..., min_length=1, description="Énoncé exercé par la suite")
    columns: List[str]
    params_schema: Dict[str, Any]


class SuiteCatalogResponse(BaseModel):
    suites: List[SuiteCatalogEntry]


class RunSummaryResponse(BaseModel):
    """Résumé d'un scénario exécuté"""
    scenario: str
    suite: str
    passed: bool
    failed_checks: List[str] = []
    outputs: List[str] = []


class ErrorResponse(BaseModel):
    """Ligne d'erreur JSON écrite sur stderr"""
    error: str
    message: str
    details: Optional[Any] = None
