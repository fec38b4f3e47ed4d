import sys
from pathlib import Path

import hypothesis
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from solvagraph.catalog import build  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=40, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=8, deadline=None)
hypothesis.settings.load_profile("default")

_groups = {}


def group(spec):
    """Build once per session; groups are immutable after construction."""
    if spec not in _groups:
        _groups[spec] = build(spec)
    return _groups[spec]


@pytest.fixture(scope="session")
def A5():
    return group("A5")


@pytest.fixture(scope="session")
def S3():
    return group("S3")


@pytest.fixture(scope="session")
def D4():
    return group("D4")


@pytest.fixture(scope="session")
def SL25():
    return group("SL2(5)")


@pytest.fixture(scope="session")
def get_group():
    return group
