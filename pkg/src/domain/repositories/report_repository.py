from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional

from src.domain.entities.report import SuiteReport

class IReportRepository(ABC):
    """Interface for suite report storage"""

    @abstractmethod
    def save(self, report: SuiteReport, out_dir: Path, stem: Optional[str] = None) -> List[Path]:
        """Write the report and its rows under `stem` (the suite name by default), return the written paths"""
        pass

    @abstractmethod
    def load(self, path: Path) -> SuiteReport:
        """Read a report written by save"""
        pass
