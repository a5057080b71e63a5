"""
Модуль monitel_framework — инфраструктура верификатора: конфигурация,
логирование, файлы.
"""

from .config import ConfigError, ConfigManager
from .files import FileManager
from .logging import (
    LoggerManager,
    LoggerConfig,
    FileLogHandler,
    LogManager
)
from .utils import resource_path, ensure_directory

__all__ = [
    'ConfigError',
    'ConfigManager',
    'FileManager',
    'LoggerManager',
    'LoggerConfig',
    'FileLogHandler',
    'LogManager',
    'resource_path',
    'ensure_directory',
]
