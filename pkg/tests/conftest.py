"""Shared fixtures: the named example instances and the sample data files."""

from pathlib import Path

import numpy as np
import pytest

from scalebb.core import PointMatrix
from scalebb.experiment import exlin_matrix, exoscil_matrix

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

CUBIC_TEXT = "5*x1*x2^2 + (100/3)*x1^3 - (7/6)*x2^3"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def cubic_text() -> str:
    return CUBIC_TEXT


@pytest.fixture
def cubic_point() -> PointMatrix:
    return PointMatrix(np.array([[200.0, -20.0], [-20.0, -4.0]]))


@pytest.fixture
def exoscil() -> PointMatrix:
    return exoscil_matrix()


@pytest.fixture
def exlin():
    """Factory for the tridiagonal instance of dimension n."""
    return exlin_matrix
