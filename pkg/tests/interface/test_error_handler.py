import json

from src.core.exceptions import NotContainedException
from src.infrastructure.jobs.batch_runner import ScenarioResult
from src.interface.middlewares.error_handler import (
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    EXIT_UNEXPECTED,
    EXIT_VERDICT_FAILED,
    exit_code_for,
    handle_errors,
)


def _passed(name: str) -> ScenarioResult:
    return ScenarioResult(scenario=name, summary={"passed": True})


class TestExitCodes:

    def test_all_passed(self):
        assert exit_code_for([_passed("a"), _passed("b")]) == EXIT_OK

    def test_failed_verdict(self):
        failed = ScenarioResult(scenario="b", summary={"passed": False})
        assert exit_code_for([_passed("a"), failed]) == EXIT_VERDICT_FAILED

    def test_domain_error_wins(self):
        failed = ScenarioResult(scenario="b", summary={"passed": False})
        errored = ScenarioResult(scenario="c", error={"error": "NOT_FOUND", "message": "x", "details": None})
        assert exit_code_for([failed, errored]) == EXIT_DOMAIN_ERROR

    def test_no_results(self):
        assert exit_code_for([]) == EXIT_OK


class TestHandleErrors:

    def test_passes_return_value_through(self):
        assert handle_errors(lambda: 1)() == 1

    def test_domain_exception(self, capsys):
        @handle_errors
        def command() -> int:
            raise NotContainedException("Point outside {rho[ball] > 0.5}", details={"index": 3})

        assert command() == EXIT_DOMAIN_ERROR
        line = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert line == {
            "error": "NOT_CONTAINED",
            "message": "Point outside {rho[ball] > 0.5}",
            "details": {"index": 3},
        }

    def test_unexpected_exception(self, capsys):
        @handle_errors
        def command() -> int:
            raise RuntimeError("boom")

        assert command() == EXIT_UNEXPECTED
        line = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert line["error"] == "INTERNAL_ERROR"
        assert line["details"] is None
