import json
from collections import Counter
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.core.exceptions import DomainException, NotFoundException, ValidationException
from src.core.logger import app_logger
from src.domain.repositories.scenario_repository import IScenarioRepository


class JsonScenarioRepository(IScenarioRepository):

    def load(self, path: Path) -> Dict[str, Any]:
        """Lit un fichier de scénario JSON"""
        path = Path(path)
        if not path.exists():
            raise NotFoundException(f"Scenario not found: {path}")
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ValidationException(f"Scenario {path} is not valid JSON: {exc.msg}", details={"line": exc.lineno})
        if not isinstance(payload, dict):
            raise ValidationException(f"Scenario {path} must be a JSON object")
        app_logger.debug(f"Loaded scenario {path}")
        return payload

    def report_stems(self, paths: Sequence[Path]) -> List[Optional[str]]:
        """
        Noms de rapport d'un lot de scénarios

        Un scénario sans `name` dont la suite revient plusieurs fois dans le lot
        écrit <suite>-<index>; les autres gardent le nom par défaut (None).
        Les fichiers illisibles sont ignorés ici, leur erreur sort à l'exécution.
        """
        suites: List[Optional[str]] = []
        for path in paths:
            try:
                payload = self.load(path)
            except DomainException:
                suites.append(None)
                continue
            suite = payload.get("suite")
            suites.append(suite if isinstance(suite, str) and not payload.get("name") else None)

        counts = Counter(s for s in suites if s is not None)
        return [f"{s}-{i}" if s is not None and counts[s] > 1 else None for i, s in enumerate(suites)]
