import csv
import math
from pathlib import Path
from typing import Any, List, Optional

from pydantic import ValidationError

from src.core.exceptions import NotFoundException, ValidationException
from src.core.logger import app_logger
from src.domain.entities.report import SuiteReport
from src.domain.repositories.report_repository import IReportRepository
from src.infrastructure.mappers.report_mapper import ReportMapper
from src.infrastructure.models import ReportModel


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return str(value)


class JsonReportRepository(IReportRepository):
    """Rapports en <suite>.json (pydantic) et <suite>.csv (lignes)"""

    def save(self, report: SuiteReport, out_dir: Path, stem: Optional[str] = None) -> List[Path]:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = stem or report.suite

        json_path = out_dir / f"{stem}.json"
        model = ReportMapper.entity_to_model(report)
        json_path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")

        csv_path = out_dir / f"{stem}.csv"
        with csv_path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(report.columns)
            for row in report.rows:
                writer.writerow([_cell(row.get(column)) for column in report.columns])

        app_logger.info(f"Saved report {stem} ({len(report.rows)} rows) to {out_dir}")
        return [json_path, csv_path]

    def load(self, path: Path) -> SuiteReport:
        path = Path(path)
        if not path.exists():
            raise NotFoundException(f"Report not found: {path}")
        try:
            model = ReportModel.model_validate_json(path.read_text(encoding="utf-8"))
        except ValidationError as exc:
            raise ValidationException(f"Malformed report {path}", details=exc.errors())
        return ReportMapper.model_to_entity(model)
