import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _corpus import atlas_connected, full_corpus, trees_up_to  # noqa: E402


@pytest.fixture(scope="session")
def atlas():
    return atlas_connected()


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()


@pytest.fixture(scope="session")
def trees():
    return trees_up_to()
