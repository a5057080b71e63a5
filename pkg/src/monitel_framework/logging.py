"""
Модуль: Система логирования для monitel_framework.

Поддерживает:
- Конфигурируемые уровни и форматы
- Вывод в stderr (stdout занят отчётами)
- Запись в файл
- Централизованное управление через LogManager
"""

import logging
import sys
from typing import Optional, Dict, Any
from pathlib import Path

DEFAULT_FORMAT = "%(asctime)s [%(levelname)s]: %(message)s"
DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class LoggerConfig:
    """Конфигурация формата и уровня логирования."""
    def __init__(
        self,
        level: int = logging.INFO,
        format_string: str = DEFAULT_FORMAT,
        date_format: str = DEFAULT_DATE_FORMAT
    ):
        self.level = level
        self.format_string = format_string
        self.date_format = date_format
        self.formatter = logging.Formatter(fmt=format_string, datefmt=date_format)

    @classmethod
    def from_dict(cls, section: Dict[str, Any]) -> "LoggerConfig":
        """
        Конфигурация из секции "logging" файла config.json.

        Raises:
            ValueError: неизвестный уровень
        """
        level_name = str(section.get("level", "INFO")).upper()
        level = logging.getLevelName(level_name)
        if not isinstance(level, int):
            raise ValueError(f"Неизвестный уровень логирования: {level_name}")
        return cls(
            level=level,
            format_string=section.get("format") or DEFAULT_FORMAT,
            date_format=section.get("date_format") or DEFAULT_DATE_FORMAT,
        )

    def with_level(self, level: int) -> "LoggerConfig":
        """Копия с другим уровнем (флаг -v)."""
        return LoggerConfig(level, self.format_string, self.date_format)


class FileLogHandler(logging.FileHandler):
    """Обработчик для записи логов в файл."""
    def __init__(self, filename: str, mode: str = 'a', encoding: str = 'utf-8', delay: bool = False):
        Path(filename).parent.mkdir(parents=True, exist_ok=True)
        super().__init__(filename, mode, encoding, delay)


class LoggerManager:
    """Менеджер логгеров — централизованное создание и управление."""
    def __init__(self, default_config: LoggerConfig):
        self.default_config = default_config
        self.loggers: Dict[str, logging.Logger] = {}

    def create_logger(
        self,
        name: str,
        log_file_path: Optional[str] = None,
        config: Optional[LoggerConfig] = None
    ) -> logging.Logger:
        config = config or self.default_config
        logger = logging.getLogger(name)
        for handler in logger.handlers:
            handler.close()
        logger.handlers.clear()
        logger.setLevel(config.level)
        logger.propagate = False

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(config.level)
        console_handler.setFormatter(config.formatter)
        logger.addHandler(console_handler)

        if log_file_path:
            file_handler = FileLogHandler(log_file_path, mode="a", encoding="utf-8")
            file_handler.setLevel(config.level)
            file_handler.setFormatter(config.formatter)
            logger.addHandler(file_handler)

        self.loggers[name] = logger
        return logger

    def cleanup_all_loggers(self):
        """Закрытие и очистка всех обработчиков."""
        for logger in self.loggers.values():
            for handler in logger.handlers:
                handler.close()
            logger.handlers.clear()
        self.loggers.clear()


class LogManager:
    """Синглтон для глобального доступа к менеджеру логгеров."""
    _instance = None
    _manager: Optional[LoggerManager] = None

    def __new__(cls) -> 'LogManager':
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    @classmethod
    def configure(cls, config: LoggerConfig) -> LoggerManager:
        if cls._manager is not None:
            cls._manager.cleanup_all_loggers()
        cls._manager = LoggerManager(config)
        return cls._manager

    @classmethod
    def _ensure_manager(cls) -> None:
        if cls._manager is None:
            cls._manager = LoggerManager(LoggerConfig())

    @classmethod
    def get_logger(
        cls,
        name: str,
        log_file_path: Optional[str] = None
    ) -> logging.Logger:
        cls._ensure_manager()
        assert cls._manager is not None
        return cls._manager.create_logger(name, log_file_path)

    @classmethod
    def get_manager(cls) -> LoggerManager:
        cls._ensure_manager()
        assert cls._manager is not None
        return cls._manager
