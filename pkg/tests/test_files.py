"""
Тесты для FileManager
"""
import unittest
import tempfile
import os
from datetime import datetime
from pathlib import Path

from src.monitel_framework.files import FileManager
from src.monitel_framework.utils import ensure_directory, resource_path


class TestFileManager(unittest.TestCase):
    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.file_manager = FileManager(
            base_directory=self.temp_dir.name,
            log_directory="log",
            output_directory="out"
        )

    def tearDown(self):
        self.temp_dir.cleanup()

    def test_create_log_directory(self):
        """Проверка создания папки log"""
        log_path = self.file_manager.create_log_directory()
        self.assertTrue(os.path.exists(log_path))
        self.assertTrue(os.path.isdir(log_path))

    def test_get_log_path(self):
        """Имя лог-файла: <прогон>_<дата>.log"""
        date_str = datetime.now().strftime("%Y-%m-%d")
        log_path = self.file_manager.get_log_path("verify")
        expected = Path(self.temp_dir.name) / "log" / f"verify_{date_str}.log"

        self.assertEqual(
            log_path.resolve().as_posix(),
            expected.resolve().as_posix()
        )

    def test_get_report_path(self):
        """Расширение отчёта зависит от формата"""
        path = self.file_manager.get_report_path("cycles.g6", "json")
        self.assertEqual(path.name, "cycles.jsonl")
        self.assertTrue(path.parent.is_dir())
        self.assertEqual(self.file_manager.get_report_path("cycles", "csv").suffix, ".csv")

    def test_validate_directory(self):
        """Проверка валидации директории"""
        self.assertTrue(self.file_manager.validate_directory())

        invalid_fm = FileManager(os.path.join(self.temp_dir.name, "nonexistent_dir"), "log")
        self.assertFalse(invalid_fm.validate_directory())

    def test_get_graph_files(self):
        """Поиск файлов графов по расширениям с исключениями"""
        for name in ("c5.g6", "tree.edges", "README.txt", "notes.md", "k33.txt"):
            open(os.path.join(self.temp_dir.name, name), "w").close()

        files = self.file_manager.get_graph_files(exclude_files=["readme.txt"])
        self.assertEqual([f.name for f in files], ["c5.g6", "k33.txt", "tree.edges"])

    def test_get_graph_files_custom_suffixes(self):
        open(os.path.join(self.temp_dir.name, "a.g6"), "w").close()
        open(os.path.join(self.temp_dir.name, "b.txt"), "w").close()
        files = self.file_manager.get_graph_files(suffixes=[".G6"])
        self.assertEqual([f.name for f in files], ["a.g6"])


class TestUtils(unittest.TestCase):
    def test_ensure_directory(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            target = os.path.join(tmpdir, "a", "b")
            self.assertEqual(ensure_directory(target), target)
            self.assertTrue(os.path.isdir(target))

    def test_resource_path_without_bundle(self):
        self.assertEqual(resource_path("config.json"), os.path.join(os.path.abspath("."), "config.json"))


if __name__ == "__main__":
    unittest.main()
