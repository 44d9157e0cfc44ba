from src.infrastructure.mappers.complex_mapper import ComplexMapper
from src.infrastructure.mappers.region_mapper import RegionMapper
from src.infrastructure.mappers.report_mapper import ReportMapper

__all__ = [
    "ComplexMapper",
    "RegionMapper",
    "ReportMapper",
]
