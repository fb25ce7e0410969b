import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from causalbench.core.types import BenchmarkScenario


@pytest.fixture
def toy_scenario():
    return BenchmarkScenario(
        dataset="alice/toy-scm@1",
        model="alice/threshold-model@1",
        metrics=["alice/shd@1"],
        hyper={"threshold": 0.5},
    )
