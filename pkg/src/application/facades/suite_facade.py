import hashlib
import json
import subprocess
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.configs import Settings
from src.core.exceptions import SchemaViolationException, UnknownSuiteException
from src.core.logger import app_logger
from src.domain.entities.report import Provenance, SuiteReport
from src.domain.repositories.report_repository import IReportRepository
from src.domain.repositories.scenario_repository import IScenarioRepository
from src.interface.dto.report_dto import RunSummaryResponse, SuiteCatalogEntry, SuiteCatalogResponse
from src.interface.dto.scenario_dto import SUITE_PARAMS, ScenarioRequest, SuiteParams


def current_git_hash() -> str:
    try:
        completed = subprocess.run(
            ["git", "rev-parse", "HEAD"],
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        )
    except (OSError, subprocess.SubprocessError):
        return "unknown"
    return completed.stdout.strip() or "unknown"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SuiteFacade:
    """
    Facade qui orchestre l'exécution des suites
    Simplifie l'interface pour la couche CLI
    """

    def __init__(
        self,
        use_cases: Dict[str, Any],
        report_repo: IReportRepository,
        scenario_repo: IScenarioRepository,
        settings: Settings,
    ):
        self.use_cases = use_cases
        self.report_repo = report_repo
        self.scenario_repo = scenario_repo
        self.settings = settings

    def list_suites(self) -> SuiteCatalogResponse:
        """Catalogue stable des suites, trié par nom"""
        entries = []
        for name in sorted(self.use_cases):
            use_case = self.use_cases[name]
            entries.append(SuiteCatalogEntry(
                name=name,
                description=use_case.description,
                reference=use_case.reference,
                columns=list(use_case.columns),
                params_schema=SUITE_PARAMS[name].model_json_schema(),
            ))
        return SuiteCatalogResponse(suites=entries)

    def validate(self, payload: Dict[str, Any]) -> ScenarioRequest:
        """
        Valide un scénario sans l'exécuter

        Workflow :
        1. Forme générale du scénario (suite, params, seed)
        2. Suite connue
        3. Paramètres conformes au schéma de la suite
        """
        try:
            request = ScenarioRequest.model_validate(payload)
        except ValidationError as exc:
            raise SchemaViolationException("Scenario does not match the scenario schema", details=_errors(exc))

        if request.suite not in self.use_cases:
            raise UnknownSuiteException(request.suite, known=sorted(self.use_cases))

        self._params(request)
        return request

    def validate_file(self, path: Path) -> ScenarioRequest:
        return self.validate(self.scenario_repo.load(path))

    def run_scenario(self, path: Path, out_dir: Path, stem: Optional[str] = None) -> RunSummaryResponse:
        """
        Exécute un scénario et écrit son rapport

        Workflow :
        1. Lecture et validation du scénario
        2. Exécution du use case de la suite
        3. Provenance (git, hash de configuration, graine)
        4. Écriture JSON + CSV
        """
        path = Path(path)
        payload = self.scenario_repo.load(path)
        request = self.validate(payload)
        params = self._params(request)
        seed = self.settings.DEFAULT_SEED if request.seed is None else request.seed
        name = request.name or stem or request.suite

        app_logger.info(f"Facade: running scenario {path.name} (suite {request.suite}, seed {seed})")
        started_at = _now() if self.settings.REPORT_TIMESTAMPS else None

        try:
            outcome = self.use_cases[request.suite].execute(seed=seed, **params.model_dump())
        except Exception as e:
            app_logger.error(f"Error in suite {request.suite}: {e}")
            raise

        scenario = request.model_dump(mode="json")
        scenario["params"] = params.model_dump(mode="json")
        provenance = Provenance(
            git_hash=current_git_hash(),
            config_hash=self.config_hash(scenario),
            seed=seed,
            schema_version=self.settings.REPORT_SCHEMA_VERSION,
            service=self.settings.SERVICE_NAME,
            started_at=started_at,
            finished_at=_now() if self.settings.REPORT_TIMESTAMPS else None,
        )
        report = SuiteReport(
            suite=request.suite,
            scenario=scenario,
            columns=tuple(outcome.columns),
            rows=tuple(outcome.rows),
            verdicts=tuple(outcome.verdicts),
            metadata=outcome.metadata,
            provenance=provenance,
        )

        outputs = self.report_repo.save(report, Path(out_dir), stem=name)
        if report.passed:
            app_logger.info(f"Suite {request.suite}: {len(report.verdicts)} checks passed")
        else:
            app_logger.warning(f"Suite {request.suite}: failed checks {report.failed_checks}")

        return RunSummaryResponse(
            scenario=str(path),
            suite=request.suite,
            passed=report.passed,
            failed_checks=report.failed_checks,
            outputs=[str(p) for p in outputs],
        )

    def run_all(self, paths: List[Path], out_dir: Path) -> List[RunSummaryResponse]:
        stems = self.scenario_repo.report_stems(paths)
        return [self.run_scenario(p, out_dir, stem) for p, stem in zip(paths, stems)]

    def config_hash(self, scenario: Dict[str, Any]) -> str:
        """SHA-256 of the settings dump followed by the canonical scenario"""
        digest = hashlib.sha256()
        digest.update(self.settings.model_dump_json().encode("utf-8"))
        digest.update(json.dumps(scenario, sort_keys=True, separators=(",", ":")).encode("utf-8"))
        return digest.hexdigest()

    def _params(self, request: ScenarioRequest) -> SuiteParams:
        try:
            return SUITE_PARAMS[request.suite].model_validate(request.params)
        except ValidationError as exc:
            raise SchemaViolationException(
                f"Invalid parameters for suite {request.suite}",
                details=_errors(exc),
            )


def _errors(exc: ValidationError) -> List[Dict[str, Optional[str]]]:
    """JSON-safe subset of pydantic error entries"""
    return [
        {"loc": ".".join(str(p) for p in e.get("loc", ())), "msg": e.get("msg"), "type": e.get("type")}
        for e in exc.errors()
    ]
