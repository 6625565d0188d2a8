import pytest

from cxqt import conjugacy_classes, build_root_system, generate
from cxqt.engine import Budget


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="run the long desk-scale checks (E7 enumeration)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long desk-scale runs")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="pass --slow to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_GROUPS = {}


@pytest.fixture(scope="session")
def group_of():
    """Generate-once cache for groups shared across tests."""

    def factory(label, n=None, slow=False):
        key = (label, n)
        if key not in _GROUPS:
            system = build_root_system(label, n)
            group = generate(system, Budget(slow=slow))
            conjugacy_classes(group)
            _GROUPS[key] = group
        return _GROUPS[key]

    return factory
