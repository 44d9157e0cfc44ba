from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.configs import use_config_file
from src.core.exceptions import DomainException
from src.core.logger import app_logger
from src.infrastructure.repositories.json_scenario_repository import JsonScenarioRepository


@dataclass(frozen=True)
class ScenarioResult:
    """Résumé (RunSummaryResponse) ou erreur de domaine (ErrorResponse) d'un scénario"""
    scenario: str
    summary: Optional[Dict[str, Any]] = None
    error: Optional[Dict[str, Any]] = None

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.summary and self.summary.get("passed"))


def run_scenario_task(
    scenario: str, out_dir: str, config: Optional[str] = None, stem: Optional[str] = None
) -> ScenarioResult:
    """
    Exécute un scénario dans le processus courant

    Workflow :
    1. Charge la configuration demandée avant d'importer les services
    2. Construit la facade
    3. Exécute le scénario; les erreurs de domaine deviennent un ErrorResponse
    """
    if config:
        use_config_file(config)
    # Services bind their settings at import time
    from src.interface.dependencies import get_suite_facade

    try:
        summary = get_suite_facade().run_scenario(Path(scenario), Path(out_dir), stem)
        return ScenarioResult(scenario=scenario, summary=summary.model_dump())
    except DomainException as e:
        app_logger.bind(details=e.details).error(f"Scenario {scenario} failed: {e.message}")
        return ScenarioResult(
            scenario=scenario,
            error={"error": e.code, "message": e.message, "details": e.details},
        )


class BatchRunner:
    """Exécute des scénarios indépendants, en parallèle si workers > 1"""

    def __init__(self, workers: int = 1, config: Optional[str] = None):
        self.workers = max(1, workers)
        self.config = config

    def run(self, scenarios: Sequence[Path], out_dir: Path) -> List[ScenarioResult]:
        paths = [str(p) for p in scenarios]
        stems = JsonScenarioRepository().report_stems(scenarios)
        app_logger.info(f"Running {len(paths)} scenario(s) with {self.workers} worker(s)")

        if self.workers == 1 or len(paths) == 1:
            return [run_scenario_task(p, str(out_dir), self.config, stem) for p, stem in zip(paths, stems)]

        with ProcessPoolExecutor(max_workers=min(self.workers, len(paths))) as pool:
            futures = [
                pool.submit(run_scenario_task, p, str(out_dir), self.config, stem) for p, stem in zip(paths, stems)
            ]
            # Input order, whatever the completion order
            return [future.result() for future in futures]
