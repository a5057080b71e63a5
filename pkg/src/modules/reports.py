"""
Модуль: сериализация отчётов — JSON по строке на объект, CSV, текст.

Ключи JSON сортируются, порядок строк задаётся вызывающим (номер задания),
поэтому вывод байтово стабилен при одинаковой конфигурации.
"""

from __future__ import annotations

import csv
import json
from typing import Any, Dict, Iterable, List, Sequence, TextIO

from .theorems import VerificationReport

OUTPUT_FORMATS = ("json", "csv", "text")

DEFAULT_CSV_COLUMNS = (
    "graph", "n", "m", "ell", "nu", "q",
    "check", "expected", "computed", "agree", "elapsed_ms",
)


def json_line(record: Any) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (dict, list)):
        return json_line(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def write_json_lines(records: Iterable[Dict[str, Any]], stream: TextIO) -> int:
    count = 0
    for record in records:
        stream.write(json_line(record) + "\n")
        count += 1
    return count


def write_csv(rows: Iterable[Dict[str, Any]], stream: TextIO, columns: Sequence[str] = DEFAULT_CSV_COLUMNS) -> int:
    writer = csv.DictWriter(stream, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    count = 0
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in columns})
        count += 1
    return count


def format_report_text(report: VerificationReport) -> str:
    """Человекочитаемый блок: заголовок графа и по строке на проверку."""
    status = "OK" if report.ok and not report.indeterminate else "FAIL"
    lines = [
        f"{report.graph} q={report.q} n={report.n} m={_cell(report.to_json()['m'])} "
        f"ell={_cell(report.to_json()['ell'])} nu={report.nu} [{status}]"
    ]
    for key, computed in report.computed.items():
        flag = report.agree.get(key)
        mark = "?" if flag is None else ("+" if flag else "-")
        lines.append(f"  {mark} {key}: expected={_cell(report.expected.get(key))} computed={_cell(computed)}")
    if report.elapsed_ms is not None:
        lines.append(f"  elapsed_ms={report.elapsed_ms}")
    return "\n".join(lines)


def write_reports(
    reports: Sequence[VerificationReport],
    output_format: str,
    stream: TextIO,
    columns: Sequence[str] = DEFAULT_CSV_COLUMNS,
) -> None:
    """
    Raises:
        ValueError: неизвестный формат
    """
    if output_format == "json":
        write_json_lines((r.to_json() for r in reports), stream)
    elif output_format == "csv":
        rows: List[Dict[str, Any]] = []
        for report in reports:
            rows.extend(report.csv_rows())
        write_csv(rows, stream, columns)
    elif output_format == "text":
        for report in reports:
            stream.write(format_report_text(report) + "\n")
    else:
        raise ValueError(f"Неизвестный формат вывода: {output_format}")


def write_records(records: Sequence[Dict[str, Any]], output_format: str, stream: TextIO) -> None:
    """Произвольные записи (оракулы): JSON-строки, CSV по объединению ключей или текст."""
    if output_format == "json":
        write_json_lines(records, stream)
    elif output_format == "csv":
        columns = sorted({key for record in records for key in record})
        write_csv(records, stream, columns)
    elif output_format == "text":
        for record in records:
            stream.write(" ".join(f"{key}={_cell(record[key])}" for key in sorted(record)) + "\n")
    else:
        raise ValueError(f"Неизвестный формат вывода: {output_format}")
