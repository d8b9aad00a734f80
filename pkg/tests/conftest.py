import pytest

from rodwave import parse_config, unit_cell


@pytest.fixture(scope="session")
def default_config():
    return parse_config({})


@pytest.fixture(scope="session")
def default_cell(default_config):
    return unit_cell(default_config)


@pytest.fixture(scope="session")
def default_rod(default_cell):
    return default_cell.rod


@pytest.fixture(scope="session")
def default_trench(default_cell):
    return default_cell.trench
