"""
Тесты для ConfigManager
"""
import tempfile
import os
import json

import pytest

from src.monitel_framework.config import ConfigError, ConfigManager


def test_load_config():
    """Проверка загрузки конфига из файла"""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, "config.json")
        config_data = {
            "io": {"log_dir": "log"},
            "logging": {"level": "DEBUG"}
        }
        with open(config_path, "w", encoding="utf-8") as f:
            json.dump(config_data, f)

        config = ConfigManager(config_path)
        assert config.get("io.log_dir") == "log"
        assert config.get("logging.level") == "DEBUG"


def test_get_with_default():
    """Проверка значения по умолчанию"""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, "config.json")
        with open(config_path, "w") as f:
            json.dump({}, f)
        config = ConfigManager(config_path)
        assert config.get("unknown.key", "default") == "default"


def test_merge_keeps_run_defaults(temp_config):
    """Частичный файл дополняется умолчаниями секции run"""
    config_path, _ = temp_config
    config = ConfigManager(config_path)
    assert config.get("run.shelling_cap") == 12
    assert config.get("run.field") == "gf2"
    assert config.get("io.log_dir") == "log"
    assert config.get("io.graph_suffixes") == [".g6", ".txt", ".edges"]


def test_missing_file_writes_defaults():
    """При отсутствии файла сохраняются умолчания"""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, "sub", "config.json")
        config = ConfigManager(config_path)
        assert os.path.exists(config_path)
        with open(config_path, encoding="utf-8") as f:
            saved = json.load(f)
        assert saved["run"]["colon_max_matching"] == 3
        assert config.get("output.format") == "json"


def test_set_saves_and_reload(temp_config):
    """set сохраняет файл, reload читает его заново"""
    config_path, _ = temp_config
    config = ConfigManager(config_path)
    config.set("run.jobs", 4)
    other = ConfigManager(config_path)
    assert other.get("run.jobs") == 4
    config.reload()
    assert config.get("run.jobs") == 4


def test_config_property_is_copy(temp_config):
    """Изменение копии не затрагивает менеджер"""
    config_path, _ = temp_config
    config = ConfigManager(config_path)
    snapshot = config.config
    snapshot["run"]["jobs"] = 99
    assert config.get("run.jobs") == 1


def test_broken_json_raises():
    """Битый JSON — ConfigError"""
    with tempfile.TemporaryDirectory() as tmpdir:
        config_path = os.path.join(tmpdir, "config.json")
        with open(config_path, "w", encoding="utf-8") as f:
            f.write("{not json")
        with pytest.raises(ConfigError):
            ConfigManager(config_path)
