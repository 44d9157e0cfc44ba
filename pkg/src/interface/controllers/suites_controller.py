from pathlib import Path
from typing import List, Optional

from src.core.logger import app_logger
from src.infrastructure.jobs.batch_runner import BatchRunner
from src.interface.dependencies import get_suite_facade
from src.interface.dto.report_dto import ErrorResponse
from src.interface.middlewares.error_handler import EXIT_OK, exit_code_for, handle_errors, write_error


@handle_errors
def run_suites(scenarios: List[str], out: str, workers: int = 1, config: Optional[str] = None) -> int:
    """
    Exécute un ou plusieurs scénarios

    Retourne :
    - 0 si tous les verdicts passent
    - 1 si un verdict échoue
    - 2 si un scénario lève une erreur de domaine
    """
    results = BatchRunner(workers=workers, config=config).run([Path(s) for s in scenarios], Path(out))

    for result in results:
        if result.error is not None:
            write_error(ErrorResponse(**result.error))
            continue
        summary = result.summary
        status = "PASS" if summary["passed"] else "FAIL"
        app_logger.info(f"{status} {summary['suite']} ({result.scenario}) -> {', '.join(summary['outputs'])}")
        for check in summary["failed_checks"]:
            app_logger.warning(f"  failed check: {check}")

    return exit_code_for(results)


@handle_errors
def list_suites(as_json: bool = False) -> int:
    """Affiche le catalogue des suites sur stdout"""
    catalog = get_suite_facade().list_suites()
    if as_json:
        print(catalog.model_dump_json(indent=2))
        return EXIT_OK

    for entry in catalog.suites:
        print(f"{entry.name}")
        print(f"    {entry.description}")
        print(f"    reference: {entry.reference}")
        print(f"    columns:   {', '.join(entry.columns)}")
        print(f"    params:    {', '.join(entry.params_schema.get('properties', {}))}")
    return EXIT_OK


@handle_errors
def validate_scenario(scenario: str) -> int:
    """Valide un scénario sans l'exécuter: affiche OK <suite>"""
    request = get_suite_facade().validate_file(Path(scenario))
    print(f"OK {request.suite}")
    return EXIT_OK
