"""Shared fixtures."""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add repository root to path
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.config import reset_config
from src.core import DensityMatrix, PureState
from src.roof import RoofConfig


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep .env files and the history database of the checkout out of tests."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('QMONO_HISTORY_DB', str(tmp_path / 'verify_history.db'))
    for name in ('QMONO_THREADS', 'QMONO_SEED', 'QMONO_SAMPLES', 'QMONO_TOLERANCE', 'QMONO_LOG_FILE'):
        monkeypatch.delenv(name, raising=False)
    for tau in ('HERM', 'PSD', 'TR', 'EIG', 'REC', 'DET', 'RANK'):
        monkeypatch.delenv(f'QMONO_TAU_{tau}', raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def bell() -> PureState:
    return PureState(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))


@pytest.fixture
def w_state() -> PureState:
    v = np.zeros(8, dtype=np.complex128)
    v[[1, 2, 4]] = 1 / np.sqrt(3)
    return PureState(v, (2, 2, 2))


@pytest.fixture
def ghz() -> PureState:
    v = np.zeros(8, dtype=np.complex128)
    v[[0, 7]] = 1 / np.sqrt(2)
    return PureState(v, (2, 2, 2))


def werner(p: float) -> DensityMatrix:
    """p |phi+><phi+| + (1 - p) I/4."""
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return DensityMatrix(p * np.outer(phi, phi) + (1 - p) * np.eye(4) / 4, (2, 2))


@pytest.fixture
def quick_roof() -> RoofConfig:
    return RoofConfig(restarts=3, max_iterations=200, seed=7)
