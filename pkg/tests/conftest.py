"""
Fixture condivise: configurazione interna e motore degli scenari
"""
import pytest

from config.loader import parse_config
from scenarios.engine import ScenarioEngine


@pytest.fixture
def config():
    return parse_config()


@pytest.fixture
def engine(config):
    return ScenarioEngine(config)


@pytest.fixture
def ideal_ao_engine():
    """AO quasi ideale e jitter nullo: il rapporto di soppressione dipende solo dalla geometria"""
    return ScenarioEngine(parse_config({
        "ao": {"r_s": 0.001, "f_g": 0.01, "snr": 1e6},
        "beam": {"theta_rms": 0.0},
    }))
