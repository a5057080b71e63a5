"""
Модуль: CLI верификатора комплексов MF^q(W(H)).

Подкоманды:
- verify — сверка вычисленных свойств MF^q с ожиданиями для графов из файла
  (graph6 / список рёбер / каталог) или семейства;
- sweep  — таблица по семейству графов и диапазону числа вершин;
- oracle — сравнение быстрых вычислений с оракулами полного перебора.

Отчёты пишутся в stdout (или --output), журнал — в stderr и файл.
Коды выхода: 0 — всё согласовано, 1 — расхождение, 2 — ошибка разбора
входа или аргументов, 3 — превышен лимит на обязательной проверке.
"""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, TextIO, Tuple

# Импорты из фреймворка и предметных модулей
try:
    from monitel_framework.config import ConfigError, ConfigManager
    from monitel_framework.files import FileManager
    from monitel_framework.logging import LoggerConfig, LogManager
    from monitel_framework.utils import ensure_directory, resource_path
    from modules.even_conn import colon_ideal, even_connected, even_connected_bruteforce
    from modules.graph_core import Graph, Matching, bits, enumerate_matchings, matching_number, whisker
    from modules.graph_io import GraphFormatError, parse_family_spec, parse_matching, parse_range, read_graph_file
    from modules.homology import FieldTag
    from modules.matching_free import mf_complex, mf_facets_bruteforce, sf_power, stanley_reisner
    from modules.reports import DEFAULT_CSV_COLUMNS, OUTPUT_FORMATS, write_records, write_reports
    from modules.shellability import DEFAULT_SHELLING_CAP, CapExceededError
    from modules.theorems import (
        CHECKS,
        VerificationCase,
        VerificationOptions,
        VerificationReport,
        expected_shellable_upper,
        verify_case,
    )
except ImportError:
    from .monitel_framework.config import ConfigError, ConfigManager
    from .monitel_framework.files import FileManager
    from .monitel_framework.logging import LoggerConfig, LogManager
    from .monitel_framework.utils import ensure_directory, resource_path
    from .modules.even_conn import colon_ideal, even_connected, even_connected_bruteforce
    from .modules.graph_core import Graph, Matching, bits, enumerate_matchings, matching_number, whisker
    from .modules.graph_io import GraphFormatError, parse_family_spec, parse_matching, parse_range, read_graph_file
    from .modules.homology import FieldTag
    from .modules.matching_free import mf_complex, mf_facets_bruteforce, sf_power, stanley_reisner
    from .modules.reports import DEFAULT_CSV_COLUMNS, OUTPUT_FORMATS, write_records, write_reports
    from .modules.shellability import DEFAULT_SHELLING_CAP, CapExceededError
    from .modules.theorems import (
        CHECKS,
        VerificationCase,
        VerificationOptions,
        VerificationReport,
        expected_shellable_upper,
        verify_case,
    )


EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_PARSE_ERROR = 2
EXIT_CAP_EXCEEDED = 3

JOBS_ENV = "MFQ_JOBS"
LOGGER_NAME = "mfq"

FIELD_CHOICES = {
    "gf2": (FieldTag.GF2,),
    "rationals": (FieldTag.RATIONALS,),
    "both": (FieldTag.GF2, FieldTag.RATIONALS),
}
ORACLE_KINDS = ("colon", "sr", "even-conn", "facets")
SWEEP_FAMILIES = ("cycle", "path", "complete", "star", "trees", "connected")
Q_POLICIES = ("all", "shellable")


@dataclass(frozen=True)
class RunConfig:
    """Параметры прогона после слияния флагов, окружения и config.json."""

    graph_path: Optional[Path] = None
    family: Optional[str] = None
    q_values: Optional[Tuple[int, ...]] = None
    q_policy: str = "all"
    fields: Tuple[FieldTag, ...] = (FieldTag.GF2,)
    checks: Tuple[str, ...] = CHECKS
    output_format: str = "json"
    jobs: int = 1
    shelling_cap: int = DEFAULT_SHELLING_CAP
    colon_max_matching: int = 3
    max_base_vertices: int = 10
    max_complex_vertices: int = 20
    include_timing: bool = False
    whiskered: bool = True
    expect_path: Optional[Path] = None
    output_path: Optional[Path] = None
    csv_columns: Tuple[str, ...] = DEFAULT_CSV_COLUMNS
    graph_suffixes: Tuple[str, ...] = (".g6", ".txt", ".edges")
    exclude_files: Tuple[str, ...] = ()

    def __post_init__(self):
        if (self.graph_path is None) == (self.family is None):
            raise ValueError("Нужно указать ровно один источник: --graph или --family")
        if self.q_values is not None and (not self.q_values or min(self.q_values) < 1):
            raise ValueError(f"Диапазон q должен быть непустым и начинаться с 1 или больше: {self.q_values}")
        if self.q_policy not in Q_POLICIES:
            raise ValueError(f"Неизвестная политика q: {self.q_policy}")
        for name in ("jobs", "shelling_cap", "colon_max_matching", "max_base_vertices", "max_complex_vertices"):
            if getattr(self, name) < 1:
                raise ValueError(f"Параметр {name} должен быть положительным: {getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Неизвестный формат вывода: {self.output_format}")
        unknown = set(self.checks) - set(CHECKS)
        if unknown or not self.checks:
            raise ValueError(f"Неизвестные или пустые проверки: {sorted(unknown)}")

    @property
    def options(self) -> VerificationOptions:
        return VerificationOptions(
            checks=self.checks,
            fields=self.fields,
            shelling_cap=self.shelling_cap,
            colon_max_matching=self.colon_max_matching,
            max_complex_vertices=self.max_complex_vertices,
            include_timing=self.include_timing,
        )


def _parse_checks(value: Any) -> Tuple[str, ...]:
    items = value.split(",") if isinstance(value, str) else list(value)
    items = [item.strip() for item in items if item.strip()]
    if items == ["all"]:
        return CHECKS
    return tuple(items)


def _parse_q(value: Any) -> Optional[Tuple[int, ...]]:
    if value is None:
        return None
    if isinstance(value, list):
        return tuple(int(v) for v in value)
    return tuple(parse_range(str(value)))


def _jobs_from_env(environ: Mapping[str, str]) -> Optional[int]:
    raw = environ.get(JOBS_ENV)
    if raw is None or not raw.strip():
        return None
    if not raw.strip().isdigit():
        raise ValueError(f"{JOBS_ENV} должна быть положительным целым: {raw!r}")
    return int(raw)


def build_run_config(
    args: argparse.Namespace,
    config: ConfigManager,
    environ: Mapping[str, str] = os.environ,
) -> RunConfig:
    """
    Флаги CLI > MFQ_JOBS (только параллелизм) > config.json > умолчания.

    Raises:
        ValueError: недопустимые значения
    """
    def pick(flag: Any, key: str, default: Any) -> Any:
        return flag if flag is not None else config.get(key, default)

    jobs = getattr(args, "jobs", None)
    if jobs is None:
        jobs = _jobs_from_env(environ)
    if jobs is None:
        jobs = config.get("run.jobs", 1)

    field_name = pick(getattr(args, "field", None), "run.field", "gf2")
    if field_name not in FIELD_CHOICES:
        raise ValueError(f"Неизвестное поле: {field_name}")

    graph = getattr(args, "graph", None)
    expect = getattr(args, "expect", None)
    output = getattr(args, "output", None)
    return RunConfig(
        graph_path=Path(graph) if graph else None,
        family=getattr(args, "family", None),
        q_values=_parse_q(pick(getattr(args, "q", None), "run.q_range", None)),
        q_policy=getattr(args, "q_policy", None) or "all",
        fields=FIELD_CHOICES[field_name],
        checks=_parse_checks(pick(getattr(args, "checks", None), "run.checks", list(CHECKS))),
        output_format=pick(getattr(args, "format", None), "output.format", "json"),
        jobs=int(jobs),
        shelling_cap=int(pick(getattr(args, "cap", None), "run.shelling_cap", DEFAULT_SHELLING_CAP)),
        colon_max_matching=int(config.get("run.colon_max_matching", 3)),
        max_base_vertices=int(config.get("run.max_base_vertices", 10)),
        max_complex_vertices=int(config.get("run.max_complex_vertices", 20)),
        include_timing=bool(getattr(args, "timing", False) or config.get("run.include_timing", False)),
        whiskered=not getattr(args, "raw", False),
        expect_path=Path(expect) if expect else None,
        output_path=Path(output) if output else None,
        csv_columns=tuple(config.get("output.csv_columns", list(DEFAULT_CSV_COLUMNS))),
        graph_suffixes=tuple(config.get("io.graph_suffixes", [".g6", ".txt", ".edges"])),
        exclude_files=tuple(config.get("io.exclude_files", [])),
    )


def load_expectations(path: Path) -> Dict[str, Dict[int, Dict[str, Any]]]:
    """
    Файл ожиданий: {"<граф>": {"<q>": {"shellable": false, ...}}}; ключ "*" — для всех графов.

    Raises:
        ValueError: файл не читается или имеет неверную структуру
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Не удалось прочитать файл ожиданий {path}: {e}") from e
    if not isinstance(data, dict):
        raise ValueError("Файл ожиданий должен содержать объект")
    result: Dict[str, Dict[int, Dict[str, Any]]] = {}
    for name, per_q in data.items():
        if not isinstance(per_q, dict):
            raise ValueError(f"Ожидания для {name} должны быть объектом")
        result[name] = {int(q): dict(values) for q, values in per_q.items()}
    return result


def _named_graphs(run: RunConfig, file_manager: FileManager) -> List[Tuple[str, Graph]]:
    if run.family is not None:
        return parse_family_spec(run.family)
    assert run.graph_path is not None
    path = run.graph_path
    if path.is_file():
        return read_graph_file(path)
    directory = FileManager(str(path), file_manager.log_directory, file_manager.output_directory)
    if not directory.validate_directory():
        raise GraphFormatError(f"Файл или каталог не найден: {path}")
    files = directory.get_graph_files(suffixes=run.graph_suffixes, exclude_files=list(run.exclude_files))
    if not files:
        raise GraphFormatError(f"В каталоге {path} нет файлов графов")
    graphs: List[Tuple[str, Graph]] = []
    for file_path in files:
        graphs.extend(read_graph_file(file_path))
    return graphs


def load_cases(run: RunConfig, file_manager: FileManager) -> List[VerificationCase]:
    """
    Raises:
        GraphFormatError: вход не разбирается
        CapExceededError: граф больше max_base_vertices
    """
    expectations = load_expectations(run.expect_path) if run.expect_path else {}
    cases = []
    for name, graph in _named_graphs(run, file_manager):
        if graph.order > run.max_base_vertices:
            raise CapExceededError(f"{name}: {graph.order} вершин больше предела {run.max_base_vertices}")
        own = dict(expectations.get("*", {}))
        for q, values in expectations.get(name, {}).items():
            own[q] = {**own.get(q, {}), **values}
        cases.append(VerificationCase(name, graph, run.whiskered, own))
    return cases


def q_values_for(case: VerificationCase, run: RunConfig) -> List[int]:
    if run.q_values is not None:
        return list(run.q_values)
    nu = case.graph.order if case.whiskered else matching_number(case.graph)
    if run.q_policy == "shellable" and case.whiskered:
        nu = min(nu, int(expected_shellable_upper(case.graph)))
    return list(range(1, nu + 1))


Job = Tuple[VerificationCase, int, VerificationOptions, str]


def _run_job(job: Job) -> VerificationReport:
    case, q, options, logger_name = job
    return verify_case(case, q, options, logging.getLogger(logger_name))


def execute_jobs(jobs: Sequence[Job], workers: int) -> List[VerificationReport]:
    """Порядок результатов совпадает с порядком заданий при любом числе процессов."""
    if workers <= 1 or len(jobs) <= 1:
        return [_run_job(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_job, jobs, chunksize=1))


def exit_status(reports: Sequence[VerificationReport]) -> int:
    if any(not r.ok for r in reports):
        return EXIT_DISAGREEMENT
    if any(r.indeterminate for r in reports):
        return EXIT_CAP_EXCEEDED
    return EXIT_OK


@contextmanager
def _output_stream(run: RunConfig) -> Iterator[TextIO]:
    if run.output_path is None:
        yield sys.stdout
        return
    ensure_directory(str(run.output_path.parent))
    with open(run.output_path, "w", encoding="utf-8", newline="") as f:
        yield f


def _verify_cases(
    cases: Sequence[VerificationCase],
    run: RunConfig,
    logger: logging.Logger,
) -> int:
    jobs: List[Job] = [
        (case, q, run.options, logger.name)
        for case in cases
        for q in q_values_for(case, run)
    ]
    logger.info(f"Заданий: {len(jobs)} (графов {len(cases)}, процессов {run.jobs})")
    reports = execute_jobs(jobs, run.jobs)
    with _output_stream(run) as stream:
        write_reports(reports, run.output_format, stream, run.csv_columns)
    status = exit_status(reports)
    if status == EXIT_OK:
        logger.info(f"✅ Все {len(reports)} отчётов согласованы")
    else:
        bad = [f"{r.graph}/q={r.q}" for r in reports if not r.ok or r.indeterminate]
        logger.error(f"❌ Проблемные отчёты ({len(bad)}): {', '.join(bad)}")
    return status


def cmd_verify(run: RunConfig, logger: logging.Logger, file_manager: Optional[FileManager] = None) -> int:
    """По отчёту на (граф, q); код выхода по согласию и неопределённости."""
    cases = load_cases(run, file_manager or FileManager())
    return _verify_cases(cases, run, logger)


def cmd_sweep(
    run: RunConfig,
    family: str,
    n_values: Sequence[int],
    logger: logging.Logger,
    file_manager: Optional[FileManager] = None,
) -> int:
    """Прогон по семейству для диапазона n; q выбирается политикой run.q_policy."""
    if family not in SWEEP_FAMILIES:
        raise GraphFormatError(f"Семейство {family} не поддерживается в sweep")
    if not n_values:
        raise GraphFormatError("Пустой диапазон n")
    spec = f"{family}:{min(n_values)}..{max(n_values)}"
    sweep_run = replace(run, family=spec, graph_path=None)
    logger.info(f"Прогон семейства {spec}, политика q: {run.q_policy}")
    return _verify_cases(load_cases(sweep_run, file_manager or FileManager()), sweep_run, logger)


def _oracle_matchings(
    case: VerificationCase,
    matching_text: Optional[str],
    run: RunConfig,
) -> List[Matching]:
    G = case.target
    if matching_text:
        source = whisker(case.graph) if case.whiskered else G
        return [parse_matching(matching_text, source)]
    matchings: List[Matching] = []
    for size in range(1, run.colon_max_matching + 1):
        matchings.extend(enumerate_matchings(G, size))
    return matchings


def _oracle_q(case: VerificationCase, run: RunConfig) -> List[int]:
    if run.q_values is not None:
        return list(run.q_values)
    return list(range(1, matching_number(case.target) + 1))


def _oracle_records(kind: str, case: VerificationCase, run: RunConfig, matching_text: Optional[str]) -> List[Dict[str, Any]]:
    G = case.target
    records: List[Dict[str, Any]] = []
    if kind == "colon":
        for M in _oracle_matchings(case, matching_text, run):
            comparison = colon_ideal(G, M)
            record = {
                "kind": kind,
                "graph": case.name,
                "matching": M.to_json(),
                "colon": comparison.colon.to_json(),
                "even_conn": comparison.expected.to_json(),
                "all_degree_two": comparison.all_degree_two,
                "ok": comparison.ok,
            }
            if not comparison.equal:
                record["diff"] = comparison.diff()
            records.append(record)
    elif kind == "even-conn":
        assert G.vertex_mask is not None
        for M in _oracle_matchings(case, matching_text, run):
            free = list(bits(G.vertex_mask & ~M.support))
            mismatches = []
            for i, u in enumerate(free):
                for v in free[i + 1:]:
                    fast = even_connected(G, M, u, v) is not None
                    if fast != even_connected_bruteforce(G, M, u, v):
                        mismatches.append([u, v])
            records.append({
                "kind": kind,
                "graph": case.name,
                "matching": M.to_json(),
                "pairs": len(free) * (len(free) - 1) // 2,
                "mismatches": mismatches,
                "ok": not mismatches,
            })
    elif kind == "sr":
        assert G.vertex_mask is not None
        for q in _oracle_q(case, run):
            left = stanley_reisner(mf_complex(G, q), G.vertex_mask)
            right = sf_power(G, q)
            record = {
                "kind": kind,
                "graph": case.name,
                "q": q,
                "generators": len(right.generators),
                "ok": left.generators == right.generators,
            }
            if not record["ok"]:
                record["diff"] = {
                    "only_stanley_reisner": [list(bits(g)) for g in sorted(set(left.generators) - set(right.generators))],
                    "only_power": [list(bits(g)) for g in sorted(set(right.generators) - set(left.generators))],
                }
            records.append(record)
    else:
        for q in _oracle_q(case, run):
            fast = mf_complex(G, q)
            slow = mf_facets_bruteforce(G, q)
            record = {
                "kind": kind,
                "graph": case.name,
                "q": q,
                "facets": len(fast.facets),
                "ok": fast == slow,
            }
            if fast != slow:
                record["diff"] = {
                    "only_fast": [list(bits(f)) for f in sorted(set(fast.facets) - set(slow.facets))],
                    "only_bruteforce": [list(bits(f)) for f in sorted(set(slow.facets) - set(fast.facets))],
                }
            records.append(record)
    return records


def cmd_oracle(
    kind: str,
    run: RunConfig,
    logger: logging.Logger,
    matching_text: Optional[str] = None,
    file_manager: Optional[FileManager] = None,
) -> int:
    """Сравнение с оракулом полного перебора; расхождение — код 1 и дифф в отчёте."""
    if kind not in ORACLE_KINDS:
        raise GraphFormatError(f"Неизвестный оракул: {kind}")
    records: List[Dict[str, Any]] = []
    for case in load_cases(run, file_manager or FileManager()):
        if case.target.order > run.max_complex_vertices:
            raise CapExceededError(f"{case.name}: граф слишком велик для оракула")
        records.extend(_oracle_records(kind, case, run, matching_text))
    with _output_stream(run) as stream:
        write_records(records, run.output_format, stream)
    failed = [r for r in records if not r["ok"]]
    if failed:
        logger.error(f"❌ Оракул {kind}: расхождений {len(failed)} из {len(records)}")
        return EXIT_DISAGREEMENT
    logger.info(f"✅ Оракул {kind}: {len(records)} сравнений без расхождений")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default="config.json", help="путь к config.json")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, help="формат отчёта")
    parser.add_argument("--output", help="файл отчёта (по умолчанию stdout); 'auto' — <output_dir>/<команда>.<расширение>")
    parser.add_argument("--jobs", type=int, help=f"число процессов (иначе {JOBS_ENV} или config)")
    parser.add_argument("--field", choices=sorted(FIELD_CHOICES), help="поле коэффициентов")
    parser.add_argument("--checks", help="список проверок через запятую или all")
    parser.add_argument("--cap", type=int, help="лимит фасет для перебора шеллинга")
    parser.add_argument("--q", help="q или диапазон a..b")
    parser.add_argument("--timing", action="store_true", help="записывать elapsed_ms")
    parser.add_argument("--log-file", help="файл журнала; 'auto' — <log_dir>/<команда>_<дата>.log")
    parser.add_argument("-v", "--verbose", action="store_true", help="уровень DEBUG")


def _add_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="файл graph6 / списка рёбер или каталог с ними")
    source.add_argument("--family", help="семейство: cycle:5, path:4, kbip:3,3, tree:0-1,1-2, trees:6, connected:4")
    parser.add_argument("--raw", action="store_true", help="не навешивать усы: граф используется как G")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfq-verifier", description="Проверка свойств MF^q(W(H))")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="сверка с ожиданиями")
    _add_common(verify)
    _add_source(verify)
    verify.add_argument("--expect", help="JSON-файл ожиданий")

    sweep = sub.add_parser("sweep", help="прогон по семейству")
    _add_common(sweep)
    sweep.add_argument("--family", required=True, choices=SWEEP_FAMILIES)
    sweep.add_argument("--n", required=True, help="число вершин или диапазон a..b")
    sweep.add_argument("--q-policy", choices=Q_POLICIES, default="all")

    oracle = sub.add_parser("oracle", help="сравнение с оракулом перебора")
    oracle.add_argument("kind", choices=ORACLE_KINDS)
    _add_common(oracle)
    _add_source(oracle)
    oracle.add_argument("--matching", help="паросочетание: 0-1,2-3 или x1x2")
    return parser


def resolve_config_path(path: str) -> str:
    """Относительный путь к конфигу, которого нет рядом, ищется среди ресурсов сборки."""
    if Path(path).exists() or Path(path).is_absolute():
        return path
    bundled = resource_path(path)
    return bundled if Path(bundled).exists() else path


def file_manager_from_config(config: ConfigManager) -> FileManager:
    return FileManager(
        log_directory=config.get("io.log_dir", "logs"),
        output_directory=config.get("io.output_dir", "output"),
    )


def _setup_logger(args: argparse.Namespace, config: ConfigManager) -> logging.Logger:
    log_config = LoggerConfig.from_dict(config.get("logging", {}))
    if args.verbose:
        log_config = log_config.with_level(logging.DEBUG)
    manager = LogManager.configure(log_config)
    log_file = args.log_file or config.get("logging.file")
    if log_file == "auto":
        log_file = str(file_manager_from_config(config).get_log_path(args.command))
    return manager.create_logger(LOGGER_NAME, log_file)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Точка входа CLI; возвращает код выхода."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = ConfigManager(resolve_config_path(args.config))
    except ConfigError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    try:
        logger = _setup_logger(args, config)
    except (ValueError, OSError) as e:
        print(f"❌ Ошибка настройки журнала: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR

    file_manager = file_manager_from_config(config)
    try:
        run = build_run_config(args, config)
        if args.output == "auto":
            run = replace(run, output_path=file_manager.get_report_path(args.command, run.output_format))
        if args.command == "sweep":
            return cmd_sweep(run, args.family, parse_range(args.n), logger, file_manager)
        if args.command == "verify":
            return cmd_verify(run, logger, file_manager)
        return cmd_oracle(args.kind, run, logger, args.matching, file_manager)
    except GraphFormatError as e:
        logger.error(f"❌ Ошибка разбора входа: {e}")
        return EXIT_PARSE_ERROR
    except CapExceededError as e:
        logger.error(f"❌ Превышен лимит: {e}")
        return EXIT_CAP_EXCEEDED
    except ValueError as e:
        logger.error(f"❌ Недопустимые параметры: {e}", exc_info=True)
        return EXIT_PARSE_ERROR
    finally:
        LogManager.get_manager().cleanup_all_loggers()


if __name__ == "__main__":
    sys.exit(main())
