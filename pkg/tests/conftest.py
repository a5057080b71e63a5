"""
Фикстуры для всех тестов
"""
import pytest
import tempfile
import os
import json

from src.modules.graph_core import generate_family, whisker


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="запускать медленные тесты")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: медленные проверки масштаба приёмки")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="нужен --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def temp_config():
    """Временный config.json"""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, "config.json")
        config_data = {
            "io": {"log_dir": "log"},
            "logging": {"level": "DEBUG"}
        }
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump(config_data, f)
        yield config_path, tmpdir


@pytest.fixture
def wc3():
    """W(C_3): x1..x3 = 0..2, y1..y3 = 3..5"""
    return whisker(generate_family("cycle", 3))


@pytest.fixture
def wc5():
    return whisker(generate_family("cycle", 5))


@pytest.fixture
def wp3():
    """W(P_3): путь 0-1-2 с усами 3, 4, 5"""
    return whisker(generate_family("path", 3))
