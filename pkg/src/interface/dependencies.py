from typing import Any, Dict

from src.application.facades.suite_facade import SuiteFacade
from src.application.use_cases.run_boundary_identity_suite import RunBoundaryIdentitySuiteUseCase
from src.application.use_cases.run_c1_compare_suite import RunC1CompareSuiteUseCase
from src.application.use_cases.run_f_t_suite import RunFtSuiteUseCase
from src.application.use_cases.run_homology_suite import RunHomologySuiteUseCase
from src.application.use_cases.run_homotopy_identity_suite import RunHomotopyIdentitySuiteUseCase
from src.application.use_cases.run_mt_metric_suite import RunMtMetricSuiteUseCase
from src.application.use_cases.run_mv_cosheaf_suite import RunMvCosheafSuiteUseCase
from src.application.use_cases.run_snowflake_suite import RunSnowflakeSuiteUseCase
from src.application.use_cases.run_u_eps_suite import RunUEpsSuiteUseCase
from src.application.use_cases.run_v_eps_suite import RunVEpsSuiteUseCase
from src.configs import get_settings
from src.infrastructure.frameworks.cosheaf_service import CosheafService
from src.infrastructure.frameworks.current_service import CurrentService
from src.infrastructure.frameworks.free_space_service import FreeSpaceService
from src.infrastructure.frameworks.homology_service import HomologyService
from src.infrastructure.frameworks.lip_topology_service import LipTopologyService
from src.infrastructure.frameworks.lipschitz_service import LipschitzService
from src.infrastructure.frameworks.lp_solver_service import LpSolverService
from src.infrastructure.frameworks.prism_service import PrismService
from src.infrastructure.frameworks.quadrature_service import QuadratureService
from src.infrastructure.frameworks.transport_service import TransportService
from src.infrastructure.repositories.json_report_repository import JsonReportRepository
from src.infrastructure.repositories.json_scenario_repository import JsonScenarioRepository

# === Singletons ===

_lipschitz_service = None
_lp_solver_service = None
_transport_service = None
_free_space_service = None
_lip_topology_service = None
_quadrature_service = None
_current_service = None
_cosheaf_service = None
_homology_service = None

def get_lipschitz_service() -> LipschitzService:
    """Singleton pour LipschitzService"""
    global _lipschitz_service
    if _lipschitz_service is None:
        _lipschitz_service = LipschitzService()
    return _lipschitz_service

def get_lp_solver_service() -> LpSolverService:
    """Singleton pour LpSolverService"""
    global _lp_solver_service
    if _lp_solver_service is None:
        _lp_solver_service = LpSolverService()
    return _lp_solver_service

def get_transport_service() -> TransportService:
    global _transport_service
    if _transport_service is None:
        _transport_service = TransportService()
    return _transport_service

def get_free_space_service() -> FreeSpaceService:
    """Singleton pour FreeSpaceService"""
    global _free_space_service
    if _free_space_service is None:
        _free_space_service = FreeSpaceService(get_lp_solver_service(), get_transport_service())
    return _free_space_service

def get_lip_topology_service() -> LipTopologyService:
    """Singleton pour LipTopologyService"""
    global _lip_topology_service
    if _lip_topology_service is None:
        _lip_topology_service = LipTopologyService(get_lipschitz_service(), get_free_space_service())
    return _lip_topology_service

def get_quadrature_service() -> QuadratureService:
    global _quadrature_service
    if _quadrature_service is None:
        _quadrature_service = QuadratureService()
    return _quadrature_service

def get_current_service() -> CurrentService:
    """Singleton pour CurrentService"""
    global _current_service
    if _current_service is None:
        _current_service = CurrentService(
            quadrature=get_quadrature_service(),
            lipschitz=get_lipschitz_service(),
            topology=get_lip_topology_service(),
        )
    return _current_service

def get_cosheaf_service() -> CosheafService:
    global _cosheaf_service
    if _cosheaf_service is None:
        _cosheaf_service = CosheafService()
    return _cosheaf_service

def get_homology_service() -> HomologyService:
    global _homology_service
    if _homology_service is None:
        _homology_service = HomologyService()
    return _homology_service

# PrismService keeps the calibrated orientation: one per use case
def get_prism_service() -> PrismService:
    return PrismService(get_current_service())

# === Repositories ===

def get_report_repository() -> JsonReportRepository:
    return JsonReportRepository()

def get_scenario_repository() -> JsonScenarioRepository:
    return JsonScenarioRepository()

# === Use Cases ===

def get_use_cases() -> Dict[str, Any]:
    """Un use case par suite, indexé par nom de suite"""
    use_cases = [
        RunHomotopyIdentitySuiteUseCase(prism=get_prism_service(), currents=get_current_service()),
        RunBoundaryIdentitySuiteUseCase(currents=get_current_service()),
        RunUEpsSuiteUseCase(currents=get_current_service(), lipschitz=get_lipschitz_service()),
        RunVEpsSuiteUseCase(currents=get_current_service()),
        RunFtSuiteUseCase(topology=get_lip_topology_service()),
        RunMtMetricSuiteUseCase(
            free_space=get_free_space_service(),
            topology=get_lip_topology_service(),
            lipschitz=get_lipschitz_service(),
        ),
        RunC1CompareSuiteUseCase(topology=get_lip_topology_service()),
        RunMvCosheafSuiteUseCase(cosheaf=get_cosheaf_service()),
        RunSnowflakeSuiteUseCase(lipschitz=get_lipschitz_service()),
        RunHomologySuiteUseCase(homology=get_homology_service()),
    ]
    return {use_case.suite: use_case for use_case in use_cases}

# === Facade ===

def get_suite_facade() -> SuiteFacade:
    return SuiteFacade(
        use_cases=get_use_cases(),
        report_repo=get_report_repository(),
        scenario_repo=get_scenario_repository(),
        settings=get_settings(),
    )
