from src.domain.entities.report import Provenance, SuiteReport, Verdict
from src.infrastructure.models import ProvenanceModel, ReportModel, VerdictModel


class ReportMapper:
    """Mapper between ReportModel and SuiteReport entity"""

    @staticmethod
    def model_to_entity(model: ReportModel) -> SuiteReport:
        """Convertit un modèle en entité"""
        return SuiteReport(
            suite=model.suite,
            scenario=dict(model.scenario),
            columns=tuple(model.columns),
            rows=tuple(dict(row) for row in model.rows),
            verdicts=tuple(
                Verdict(
                    check=v.check,
                    passed=v.passed,
                    measured=v.measured if v.measured is not None else float("nan"),
                    tolerance=v.tolerance if v.tolerance is not None else float("nan"),
                    invariant=v.invariant,
                )
                for v in model.verdicts
            ),
            metadata=dict(model.metadata),
            provenance=Provenance(
                git_hash=model.provenance.git_hash,
                config_hash=model.provenance.config_hash,
                seed=model.provenance.seed,
                schema_version=model.schema_version,
                service=model.provenance.service,
                started_at=model.provenance.started_at,
                finished_at=model.provenance.finished_at,
            ),
        )

    @staticmethod
    def entity_to_model(report: SuiteReport) -> ReportModel:
        """Convertit une entité en modèle sérialisable"""
        provenance = report.provenance
        return ReportModel(
            schema_version=provenance.schema_version,
            suite=report.suite,
            passed=report.passed,
            scenario=report.scenario,
            columns=list(report.columns),
            rows=list(report.rows),
            verdicts=[
                VerdictModel(
                    check=v.check,
                    passed=v.passed,
                    measured=v.measured,
                    tolerance=v.tolerance,
                    invariant=v.invariant,
                )
                for v in report.verdicts
            ],
            metadata=report.metadata,
            provenance=ProvenanceModel(
                git_hash=provenance.git_hash,
                config_hash=provenance.config_hash,
                seed=provenance.seed,
                service=provenance.service,
                started_at=provenance.started_at,
                finished_at=provenance.finished_at,
            ),
        )
