import random
import sys
from pathlib import Path

import pytest

EXPORTER_ROOT = Path(__file__).resolve().parents[1]
REPO_ROOT = EXPORTER_ROOT.parent

try:
    import mlpexport  # noqa: F401
except ImportError:  # running from a checkout without an editable install
    sys.path.insert(0, str(EXPORTER_ROOT / "src"))


@pytest.fixture(scope="session")
def fixture_dataset() -> Path:
    """The transpiler's shipped 500-row synthetic dataset (30 features)."""
    path = REPO_ROOT / "tests" / "fixtures" / "data" / "dataset.csv"
    if not path.exists():
        pytest.skip("transpiler fixture dataset not present")
    return path


@pytest.fixture(scope="session")
def primary_env() -> dict:
    """Environment for driving the transpiler CLI as a subprocess."""
    from cli_harness import primary_environment
    return primary_environment()


@pytest.fixture()
def small_csv(tmp_path: Path) -> Path:
    """A 40-row, 4-feature dataset with a learnable linear rule."""
    rng = random.Random(99)
    path = tmp_path / "small.csv"
    lines = ["f0,f1,f2,f3,label"]
    for _ in range(40):
        row = [rng.uniform(0.0, 1.0) for _ in range(4)]
        label = 1 if row[0] + 2.0 * row[1] - row[2] > 1.0 else 0
        lines.append(",".join(repr(v) for v in row) + f",{label}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
