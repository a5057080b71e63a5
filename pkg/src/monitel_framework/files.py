"""
Управление файлами и директориями: входные графы, отчёты, логи.
"""

from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence

from .utils import ensure_directory


class FileManager:
    """Класс для управления файлами и директориями."""

    def __init__(self, base_directory: str = ".", log_directory: str = "logs", output_directory: str = "output"):
        """
        Инициализация менеджера файлов.

        Args:
            base_directory: базовая директория (относительные пути считаются от неё)
            log_directory: директория для логов
            output_directory: директория для отчётов
        """
        self.base_directory = Path(base_directory).resolve()
        self.log_directory = log_directory
        self.output_directory = output_directory

    def get_graph_files(
        self,
        directory: Optional[Path] = None,
        suffixes: Sequence[str] = (".g6", ".txt", ".edges"),
        exclude_files: Optional[List[str]] = None,
    ) -> List[Path]:
        """
        Файлы графов в директории (без рекурсии), отсортированные по имени.

        Args:
            directory: директория; по умолчанию базовая
            suffixes: допустимые расширения
            exclude_files: имена для исключения (без учёта регистра)

        Returns:
            List[Path]: пути к файлам
        """
        directory = directory or self.base_directory
        exclude_lower = {f.lower() for f in (exclude_files or [])}
        allowed = {s.lower() for s in suffixes}
        graph_files = []
        for file_path in directory.iterdir():
            if (file_path.is_file() and
                    file_path.suffix.lower() in allowed and
                    file_path.name.lower() not in exclude_lower):
                graph_files.append(file_path)
        return sorted(graph_files)

    def create_log_directory(self) -> str:
        return ensure_directory(str(self.base_directory / self.log_directory))

    def validate_directory(self) -> bool:
        return self.base_directory.exists() and self.base_directory.is_dir()

    def get_log_path(self, run_name: str) -> Path:
        """
        Путь к лог-файлу прогона: <log_dir>/<run>_<YYYY-MM-DD>.log.

        Args:
            run_name: имя прогона (подкоманда или имя файла графа)
        """
        log_dir = Path(self.create_log_directory())
        basename = Path(run_name).stem
        date_str = datetime.now().strftime("%Y-%m-%d")
        return log_dir / f"{basename}_{date_str}.log"

    def get_report_path(self, run_name: str, output_format: str) -> Path:
        """Путь к файлу отчёта: <output_dir>/<run>.<jsonl|csv|txt>."""
        extension = {"json": "jsonl", "csv": "csv", "text": "txt"}.get(output_format, output_format)
        out_dir = Path(ensure_directory(str(self.base_directory / self.output_directory)))
        return out_dir / f"{Path(run_name).stem}.{extension}"
