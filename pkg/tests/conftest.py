import pytest

from diograph.graph import build_range, build_set
from diograph.witnesses import FIVE_CHROMATIC_WITNESS


@pytest.fixture(scope="session")
def graph_10k():
    return build_range(10_000)


@pytest.fixture(scope="session")
def five_chromatic_graph():
    return build_set(FIVE_CHROMATIC_WITNESS)
