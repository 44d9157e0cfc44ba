from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class LipschitzEstimate:
    """Sampled Lipschitz constant with the pair realizing it"""
    value: float
    pair: Optional[Tuple[int, int]]
    n_pairs: int
    skipped_pairs: int


@dataclass(frozen=True)
class BtDistanceReport:
    sup_part: float
    lip_part: float
    realizing_sup: Optional[int] = None
    realizing_pair: Optional[Tuple[int, int]] = None

    @property
    def total(self) -> float:
        return self.sup_part + self.lip_part


@dataclass(frozen=True)
class MtDistanceReport:
    """supPart from Dirac-difference norms, lipPart from four-point kernels"""
    sup_part: float
    lip_part: float
    realizing_sup: Optional[int] = None
    realizing_pair: Optional[Tuple[int, int]] = None

    @property
    def total(self) -> float:
        return self.sup_part + self.lip_part


@dataclass(frozen=True)
class IdentityCheck:
    """Both sides of a numerically checked identity"""
    lhs: float
    rhs: float
    error_estimate: Optional[float] = None

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


@dataclass(frozen=True)
class MassCheck:
    lhs_abs: float
    rhs_bound: float
    lipschitz_bound: float

    @property
    def holds(self) -> bool:
        return self.lhs_abs <= self.rhs_bound

    @property
    def slack(self) -> float:
        return self.rhs_bound - self.lhs_abs


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Three-point trend classification over the tail of a parameter sweep"""
    converges: bool
    tail: Tuple[float, ...]
    extrapolated_limit: Optional[float]


@dataclass(frozen=True)
class Verdict:
    """Named pass/fail check referencing the property it exercises"""
    check: str
    passed: bool
    measured: float
    tolerance: float
    invariant: str

    @classmethod
    def at_most(cls, check: str, measured: float, tolerance: float, invariant: str) -> "Verdict":
        return cls(check, bool(measured <= tolerance), float(measured), float(tolerance), invariant)

    @classmethod
    def at_least(cls, check: str, measured: float, threshold: float, invariant: str) -> "Verdict":
        return cls(check, bool(measured >= threshold), float(measured), float(threshold), invariant)

    @classmethod
    def holds(cls, check: str, passed: bool, invariant: str, measured: float = 0.0, tolerance: float = 0.0) -> "Verdict":
        return cls(check, bool(passed), float(measured), float(tolerance), invariant)


@dataclass(frozen=True)
class Provenance:
    git_hash: str
    config_hash: str
    seed: int
    schema_version: str
    service: str
    started_at: Optional[str] = None
    finished_at: Optional[str] = None


@dataclass
class SuiteOutcome:
    """What a suite use case produces before provenance is attached"""
    suite: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    verdicts: List[Verdict] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, **values: Any) -> None:
        self.rows.append({c: _plain(values.get(c)) for c in self.columns})

    def check(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    def record(self, check: str, instances: int, worst: float, tolerance: float, invariant: str) -> Verdict:
        """One row of a (check, instances, worst, tolerance) table plus its at-most verdict"""
        self.add_row(check=check, instances=int(instances), worst=float(worst), tolerance=float(tolerance))
        return self.check(Verdict.at_most(check, worst, tolerance, invariant))

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    scenario: Dict[str, Any]
    columns: Tuple[str, ...]
    rows: Tuple[Dict[str, Any], ...]
    verdicts: Tuple[Verdict, ...]
    metadata: Dict[str, Any]
    provenance: Provenance

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def failed_checks(self) -> List[str]:
        return [v.check for v in self.verdicts if not v.passed]


def _plain(value: Any) -> Any:
    """numpy scalars to Python scalars so rows serialize verbatim"""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, tuple):
        return list(value)
    return value
