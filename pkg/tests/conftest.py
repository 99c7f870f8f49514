import pytest

pytest_plugins = "reglat_test.fixtures",


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="Run the full-size verification checks as well.")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size verification check, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--runslow"):
        skip_slow = pytest.mark.skip(reason="Need --runslow to run full-size verification checks.")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
