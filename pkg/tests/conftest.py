from __future__ import annotations

from pathlib import Path

import pytest

from netspectra import DegreeModel

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture()
def poisson100() -> DegreeModel:
    return DegreeModel.poisson(100.0)


@pytest.fixture()
def two_degree_model() -> DegreeModel:
    # two expected degrees 50 (weight 1/4) and 100 (weight 3/4)
    return DegreeModel.from_atoms([(50.0, 0.25), (100.0, 0.75)])


@pytest.fixture()
def data_dir() -> Path:
    return DATA_DIR
