import numpy as np
import pytest

from gevrey_nls.config import runtime
from gevrey_nls.core.spectral import Field, GridSpec
from gevrey_nls.state import reset_run_logger


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep run history and env-driven profiles local to each test."""
    monkeypatch.setenv("GEVREY_NLS_HOME", str(tmp_path / "home"))
    reset_run_logger()
    yield
    monkeypatch.undo()
    reset_run_logger()
    runtime.reload_profiles()


@pytest.fixture
def torus_grid():
    return GridSpec(dim=1, n=64, box_len=2 * np.pi)


@pytest.fixture
def plane_wave(torus_grid):
    (x,) = torus_grid.coordinates()
    return Field(torus_grid, np.exp(1j * x))


@pytest.fixture
def sech_field():
    grid = GridSpec(dim=1, n=512, box_len=40.0)
    (x,) = grid.coordinates()
    return Field(grid, 1.0 / np.cosh(x))
