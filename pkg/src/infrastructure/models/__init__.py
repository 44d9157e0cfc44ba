from src.infrastructure.models.report_model import ProvenanceModel, ReportModel, VerdictModel

__all__ = [
    ProvenanceModel,
    ReportModel,
    VerdictModel,
]
