"""
Модуль: чтение графов из файлов (graph6, список рёбер), разбор
спецификаций семейств и паросочетаний из командной строки.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

import networkx as nx

from .graph_core import Graph, Matching, WhiskerGraph, family_members

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"

NamedGraph = Tuple[str, Graph]

# Имя в спецификации -> имя семейства в generate_family
FAMILY_ALIASES = {
    "path": "path",
    "cycle": "cycle",
    "complete": "complete",
    "star": "star",
    "kbip": "complete_bipartite",
    "tree": "tree",
    "trees": "trees",
    "connected": "all_connected",
}

_RANGE = re.compile(r"^(\d+)\.\.(\d+)$")
_NAMED_VERTEX = re.compile(r"([xy])(\d+)")


class GraphFormatError(ValueError):
    """Ошибка разбора графа, семейства или паросочетания."""


def parse_edge_list(text: str) -> Graph:
    """
    Список рёбер: первая строка может содержать число вершин N (или «n N»),
    далее по ребру «u v» или «u-v» в строке, вершины с нуля; # начинает комментарий.

    Raises:
        GraphFormatError: некорректная строка
    """
    edges = []
    declared: Optional[int] = None
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace("-", " ").split()
        header = first
        first = False
        if parts[0] == "n":
            if not header or len(parts) != 2 or not parts[1].isdigit():
                raise GraphFormatError(f"Строка {lineno}: «n N» допускается только первой строкой")
            declared = int(parts[1])
            continue
        if header and len(parts) == 1 and parts[0].isdigit():
            declared = int(parts[0])
            continue
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"Строка {lineno}: ожидалось ребро «u v», получено «{raw.strip()}»")
        edges.append((int(parts[0]), int(parts[1])))
    n = 1 + max((max(e) for e in edges), default=-1)
    if declared is not None:
        if declared < n:
            raise GraphFormatError(f"Объявлено {declared} вершин, но встречается вершина {n - 1}")
        n = declared
    if n == 0:
        raise GraphFormatError("Граф без вершин")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def format_edge_list(G: Graph) -> str:
    lines = [str(G.n_vertices)]
    lines.extend(f"{u} {v}" for u, v in G.edge_list)
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> List[Graph]:
    """
    Графы в формате graph6, по одному в строке; заголовок >>graph6<< необязателен.

    Raises:
        GraphFormatError: строка не разбирается
    """
    graphs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        try:
            g = nx.from_graph6_bytes(line.encode("ascii"))
        except (nx.NetworkXError, ValueError, UnicodeEncodeError) as exc:
            raise GraphFormatError(f"Строка {lineno}: не graph6: {exc}") from exc
        graphs.append(Graph.from_networkx(g))
    if not graphs:
        raise GraphFormatError("Файл graph6 не содержит графов")
    return graphs


def format_graph6(G: Graph) -> str:
    data = nx.to_graph6_bytes(G.to_networkx(), header=False)
    return data.decode("ascii").strip()


def _looks_like_graph6(path: Path, text: str) -> bool:
    if path.suffix.lower() == ".g6" or text.lstrip().startswith(GRAPH6_HEADER):
        return True
    return False


def read_graph_file(path: Union[str, Path]) -> List[NamedGraph]:
    """
    Читает файл с одним или несколькими графами.

    Имя графа — имя файла без расширения; для нескольких графов
    добавляется номер строки.

    Raises:
        GraphFormatError: файл не читается или не разбирается
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"Не удалось прочитать {path}: {exc}") from exc
    if _looks_like_graph6(path, text):
        graphs = parse_graph6(text)
    else:
        graphs = [parse_edge_list(text)]
    if len(graphs) == 1:
        return [(path.stem, graphs[0])]
    return [(f"{path.stem}#{i}", g) for i, g in enumerate(graphs, start=1)]


def _int(token: str, spec: str) -> int:
    if not token.strip().isdigit():
        raise GraphFormatError(f"Ожидалось число в «{spec}», получено «{token}»")
    return int(token)


def _parse_pairs(text: str, spec: str) -> List[Tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        ends = chunk.strip().split("-")
        if len(ends) != 2:
            raise GraphFormatError(f"Ожидалось ребро «u-v» в «{spec}», получено «{chunk}»")
        pairs.append((_int(ends[0], spec), _int(ends[1], spec)))
    return pairs


def parse_range(text: str) -> List[int]:
    """«3» или «3..7» -> список чисел; пустой диапазон — ошибка."""
    text = text.strip()
    match = _RANGE.match(text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise GraphFormatError(f"Пустой диапазон «{text}»")
        return list(range(low, high + 1))
    return [_int(text, text)]


def parse_family_spec(spec: str) -> List[NamedGraph]:
    """
    Спецификация семейства: cycle:5, path:4, complete:4, star:5, kbip:3,3,
    tree:0-1,1-2, trees:6, connected:4. Для cycle/path/complete/star/trees/
    connected допускается диапазон n, например cycle:3..7.

    Raises:
        GraphFormatError: неизвестное семейство или параметры
    """
    name, sep, params = spec.partition(":")
    name = name.strip()
    if not sep or name not in FAMILY_ALIASES:
        raise GraphFormatError(f"Неизвестная спецификация семейства: «{spec}»")
    family = FAMILY_ALIASES[name]
    try:
        if family == "tree":
            return [(f"tree:{params}", family_members("tree", _parse_pairs(params, spec))[0])]
        if family == "complete_bipartite":
            parts = params.split(",")
            if len(parts) != 2:
                raise GraphFormatError(f"kbip требует два параметра: «{spec}»")
            a, b = (_int(p, spec) for p in parts)
            return [(f"kbip:{a},{b}", family_members(family, a, b)[0])]
        result: List[NamedGraph] = []
        for n in parse_range(params):
            members = family_members(family, n)
            if len(members) == 1 and family not in ("trees", "all_connected"):
                result.append((f"{name}:{n}", members[0]))
            else:
                result.extend((f"{name}:{n}#{i}", g) for i, g in enumerate(members, start=1))
        return result
    except GraphFormatError:
        raise
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def parse_matching(text: str, G: Union[Graph, WhiskerGraph]) -> Matching:
    """
    Паросочетание из строки: «0-1,2-3» (индексы G) или по именам вершин
    графа с усами с 1-индексацией: «x1x2», «x1-y1,x3x4».

    Raises:
        GraphFormatError: синтаксис, отсутствующее ребро или пересечение рёбер
    """
    graph = G.graph if isinstance(G, WhiskerGraph) else G
    text = text.strip()
    if not text:
        raise GraphFormatError("Пустое паросочетание")
    edges: List[Tuple[int, int]] = []
    if _NAMED_VERTEX.search(text):
        if not isinstance(G, WhiskerGraph):
            raise GraphFormatError("Имена x_i/y_i допустимы только для графов с усами")
        for chunk in text.split(","):
            names = _NAMED_VERTEX.findall(chunk)
            if len(names) != 2 or _NAMED_VERTEX.sub("", chunk).strip("- ") != "":
                raise GraphFormatError(f"Ожидалась пара вершин в «{chunk}»")
            ends = []
            for kind, index in names:
                i = int(index) - 1
                if not 0 <= i < G.n:
                    raise GraphFormatError(f"Нет вершины {kind}{index}")
                ends.append(i if kind == "x" else G.n + i)
            edges.append((ends[0], ends[1]))
    else:
        edges = _parse_pairs(text, text)
    for u, v in edges:
        if max(u, v) >= graph.n_vertices or not graph.has_edge(u, v):
            raise GraphFormatError(f"({u}, {v}) не является ребром графа")
    try:
        return Matching.of(edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc
