import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nzflow import catalog


@pytest.fixture(scope="session")
def corpus():
    """Deterministic corpus of distinct bridgeless cubic graphs (n <= 14)."""
    return list(catalog.corpus())


@pytest.fixture(scope="session")
def shared_results():
    """Cross-test cache so acceptance criteria can reuse earlier stages."""
    return {}
