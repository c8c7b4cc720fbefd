import pytest

from edgedepth.graph import from_edge_list

EXAMPLE_11 = [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7), (3, 8), (8, 9), (3, 10), (10, 11)]
EXAMPLE_9 = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (4, 8), (8, 9)]


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run minutes-long oracle checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def tree11():
    return from_edge_list(EXAMPLE_11, 11)


@pytest.fixture
def tree9():
    return from_edge_list(EXAMPLE_9, 9)


@pytest.fixture
def write_graph(tmp_path):
    def _write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write
