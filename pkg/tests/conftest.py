import json
from pathlib import Path

import numpy as np
import pytest

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

SCENARIOS_DIR = Path(__file__).resolve().parents[1] / "scenarios"


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# === Services ===

@pytest.fixture
def lipschitz():
    return LipschitzService()


@pytest.fixture
def lp_solver():
    return LpSolverService()


@pytest.fixture
def transport():
    return TransportService()


@pytest.fixture
def free_space(lp_solver, transport):
    return FreeSpaceService(lp_solver, transport)


@pytest.fixture
def topology(lipschitz, free_space):
    return LipTopologyService(lipschitz, free_space)


@pytest.fixture
def quadrature():
    return QuadratureService(chunk_size=65536, reduction="pairwise", step_floor=1e-8)


@pytest.fixture
def currents(quadrature, lipschitz, topology):
    return CurrentService(quadrature, lipschitz, topology)


@pytest.fixture
def prism(currents):
    return PrismService(currents)


@pytest.fixture
def cosheaf():
    return CosheafService()


@pytest.fixture
def homology():
    return HomologyService()


# === Scenarios ===

@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario payload to a temporary JSON file and return its path"""
    def _write(payload, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return _write
