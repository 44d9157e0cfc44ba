from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

class IScenarioRepository(ABC):
    """Interface for scenario sources"""

    @abstractmethod
    def load(self, path: Path) -> Dict[str, Any]:
        """Raw scenario payload"""
        pass

    @abstractmethod
    def report_stems(self, paths: Sequence[Path]) -> List[Optional[str]]:
        """Report stem per scenario of a batch; None keeps the default"""
        pass
