import json

import pytest

from src.main import main

SMALL_HOMOLOGY = {"suite": "homology", "params": {"n": 2, "top_degree": 2, "n_conjugations": 1}}


def _error_lines(err: str):
    return [json.loads(line) for line in err.splitlines() if line.startswith("{")]


class TestListCommand:

    def test_plain_listing(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "homotopy-identity" in out
        assert "reference:" in out

    def test_json_listing(self, capsys):
        assert main(["list", "--json"]) == 0
        catalog = json.loads(capsys.readouterr().out)
        assert len(catalog["suites"]) == 10
        assert all("params_schema" in entry for entry in catalog["suites"])


class TestValidateCommand:

    def test_valid_scenario(self, capsys, write_scenario):
        assert main(["validate", "--scenario", str(write_scenario(SMALL_HOMOLOGY))]) == 0
        assert capsys.readouterr().out.strip() == "OK homology"

    def test_schema_violation(self, capsys, write_scenario):
        path = write_scenario({"suite": "homology", "params": {"top_degree": 3}})
        assert main(["validate", "--scenario", str(path)]) == 2
        errors = _error_lines(capsys.readouterr().err)
        assert errors[-1]["error"] == "SCHEMA_VIOLATION"

    def test_unknown_suite(self, capsys, write_scenario):
        path = write_scenario({"suite": "knots"})
        assert main(["validate", "--scenario", str(path)]) == 2
        error = _error_lines(capsys.readouterr().err)[-1]
        assert error["error"] == "UNKNOWN_SUITE"
        assert "homology" in error["details"]["known"]


class TestRunCommand:

    def test_passing_run(self, write_scenario, tmp_path):
        out = tmp_path / "reports"
        assert main(["run", "--scenario", str(write_scenario(SMALL_HOMOLOGY)), "--out", str(out)]) == 0
        assert (out / "homology.json").exists()
        assert (out / "homology.csv").exists()

    def test_failed_verdict_exit_code(self, write_scenario, tmp_path):
        payload = {
            "suite": "homology",
            "params": {
                "n": 1,
                "top_degree": 0,
                "n_conjugations": 0,
                "complexes": [{"name": "interval", "dims": [2, 1], "boundaries": [[[-1.0], [1.0]]], "expected": [3, 0]}],
            },
        }
        assert main(["run", "--scenario", str(write_scenario(payload)), "--out", str(tmp_path)]) == 1

    def test_domain_error_exit_code(self, capsys, write_scenario, tmp_path):
        good = write_scenario(SMALL_HOMOLOGY, name="good.json")
        bad = write_scenario({"suite": "knots"}, name="bad.json")
        code = main(["run", "--scenario", str(good), "--scenario", str(bad), "--out", str(tmp_path / "out")])
        assert code == 2
        assert _error_lines(capsys.readouterr().err)[-1]["error"] == "UNKNOWN_SUITE"
        # the valid scenario still ran
        assert (tmp_path / "out" / "homology.json").exists()

    def test_repeated_suites_write_distinct_reports(self, write_scenario, tmp_path):
        first = write_scenario(SMALL_HOMOLOGY, name="first.json")
        second = write_scenario(SMALL_HOMOLOGY, name="second.json")
        out = tmp_path / "out"
        assert main(["run", "--scenario", str(first), "--scenario", str(second), "--out", str(out)]) == 0
        assert (out / "homology-0.json").exists()
        assert (out / "homology-1.csv").exists()
        assert not (out / "homology.json").exists()

    def test_missing_scenario_file(self, capsys, tmp_path):
        code = main(["run", "--scenario", str(tmp_path / "absent.json"), "--out", str(tmp_path)])
        assert code == 2
        assert _error_lines(capsys.readouterr().err)[-1]["error"] == "NOT_FOUND"

    def test_missing_config_file(self, capsys, write_scenario, tmp_path):
        code = main([
            "run",
            "--scenario", str(write_scenario(SMALL_HOMOLOGY)),
            "--out", str(tmp_path),
            "--config", str(tmp_path / "absent.config.json"),
        ])
        assert code == 2
        assert "Configuration file not found" in capsys.readouterr().err

    def test_scenario_is_required(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--out", "reports"])
        assert exc.value.code == 2
