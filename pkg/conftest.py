"""
Configurações globais para testes - agent-hamiltonians
======================================================
"""

import logging.config

import numpy as np
import pytest

from agent_hamiltonians import settings, settings_test

# Logging silencioso antes de qualquer teste
logging.config.dictConfig(settings_test.LOGGING)
settings.SLOW_RUN_SECONDS = settings_test.SLOW_RUN_SECONDS

FIXTURES_DIR = settings.BASE_DIR / "fixtures"


@pytest.fixture
def bell_state():
    """
    Fixture com o estado de Bell (|00⟩ + |11⟩)/√2 em dois qubits
    """
    from tensor_core import DensityOperator
    from tensor_core.operators import basis_vector

    psi = (basis_vector(0, 4) + basis_vector(3, 4)) / np.sqrt(2)
    return DensityOperator.from_state_vector(psi, [2, 2])


@pytest.fixture
def qagi_config_path():
    return FIXTURES_DIR / "qagi.json"


@pytest.fixture
def cagi_config_path():
    return FIXTURES_DIR / "cagi.json"


@pytest.fixture
def output_dir(tmp_path):
    """
    Diretório de saída descartável para artefatos
    """
    out = tmp_path / "runs"
    out.mkdir()
    return out


def pytest_configure(config):
    """Configura marks customizados"""
    config.addinivalue_line("markers", "slow: marca testes lentos")
    config.addinivalue_line("markers", "integration: marca testes de integração")
    config.addinivalue_line("markers", "unit: marca testes unitários")
    config.addinivalue_line("markers", "acceptance: marca a suíte de propriedades de aceitação")
