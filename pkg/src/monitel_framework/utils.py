"""
Вспомогательные утилиты для фреймворка.
"""

import os
import sys
from pathlib import Path


def resource_path(relative_path: str) -> str:
    """
    Путь к ресурсу для запуска из исходников и из собранного файла.

    Args:
        relative_path: относительный путь к ресурсу

    Returns:
        str: абсолютный путь к ресурсу
    """
    # PyInstaller распаковывает ресурсы в _MEIPASS
    base_path = getattr(sys, '_MEIPASS', os.path.abspath("."))
    return os.path.join(base_path, relative_path)


def ensure_directory(directory_path: str) -> str:
    """Создаёт директорию (с родителями), если её нет, и возвращает путь."""
    path = Path(directory_path)
    path.mkdir(parents=True, exist_ok=True)
    return str(path)
