from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model_paths() -> dict[str, Path]:
    return {
        "1l1n": FIXTURES / "models" / "model_1l1n.json",
        "2l2n": FIXTURES / "models" / "model_2l2n.json",
        "3l4n": FIXTURES / "models" / "model_3l4n.json",
    }


@pytest.fixture(scope="session")
def test50_path() -> Path:
    return FIXTURES / "data" / "test50.csv"


@pytest.fixture(scope="session")
def dataset_path() -> Path:
    return FIXTURES / "data" / "dataset.csv"
