import functools
import sys
from typing import Callable, Iterable

from src.core.exceptions import DomainException
from src.core.logger import app_logger
from src.infrastructure.jobs.batch_runner import ScenarioResult
from src.interface.dto.report_dto import ErrorResponse

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_DOMAIN_ERROR = 2
EXIT_UNEXPECTED = 3


def write_error(error: ErrorResponse) -> None:
    """Une ligne JSON par erreur sur stderr"""
    sys.stderr.write(error.model_dump_json() + "\n")
    sys.stderr.flush()


def exit_code_for(results: Iterable[ScenarioResult]) -> int:
    """2 si un scénario a levé une erreur de domaine, 1 si un verdict échoue, 0 sinon"""
    results = list(results)
    if any(r.error is not None for r in results):
        return EXIT_DOMAIN_ERROR
    if not all(r.passed for r in results):
        return EXIT_VERDICT_FAILED
    return EXIT_OK


def handle_errors(command: Callable[..., int]) -> Callable[..., int]:
    """Gestionnaire d'exceptions des commandes CLI: exception → code de sortie"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except DomainException as exc:
            app_logger.bind(details=exc.details).error(f"Domain exception [{exc.code}]: {exc.message}")
            write_error(ErrorResponse(error=exc.code, message=exc.message, details=exc.details))
            return EXIT_DOMAIN_ERROR
        except Exception as exc:
            app_logger.opt(exception=exc).error("Unhandled exception")
            write_error(ErrorResponse(error="INTERNAL_ERROR", message="An unexpected error occurred"))
            return EXIT_UNEXPECTED

    return wrapper
