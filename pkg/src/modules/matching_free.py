"""
Модуль: комплексы MF^q(G), свободные от квадратов степени I(G)^[q]
и идеалы Стенли–Райснера.

Содержит также разбиение {Y, N, S} для граней графа с усами и жадное
расширение множества усов, попарно не связанных чётными маршрутами.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Tuple

from .graph_core import (
    Graph,
    Matching,
    WhiskerGraph,
    bits,
    enumerate_matchings,
    is_finite,
    mask_of,
    matching_number_of,
    matching_number_table,
    odd_girth,
    popcount,
    submasks_ascending,
)
from .simplicial import SimplicialComplex, minimal_nonfaces

logger = logging.getLogger(__name__)

# Выше этого числа вершин перебор 2^V не выполняется
MAX_BRUTEFORCE_VERTICES = 20


def _generator_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return popcount(mask), tuple(bits(mask))


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Идеал, порождённый свободными от квадратов мономами (по носителям).

    Образующие минимизируются при создании; пустой набор — нулевой идеал,
    образующая 0 (пустой носитель) — единичный идеал.
    """

    variable_count: int
    generators: Tuple[int, ...]

    def __post_init__(self):
        ordered = sorted(set(self.generators), key=_generator_key)
        minimal: List[int] = []
        for mask in ordered:
            if not any(other & ~mask == 0 for other in minimal):
                minimal.append(mask)
        object.__setattr__(self, "generators", tuple(minimal))

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]]) -> "MonomialIdeal":
        return cls(n, tuple(mask_of(s) for s in supports))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return 0 in self.generators

    def degrees(self) -> List[int]:
        return [popcount(g) for g in self.generators]

    def contains(self, monomial: int) -> bool:
        return any(g & ~monomial == 0 for g in self.generators)

    def colon(self, monomial: int) -> "MonomialIdeal":
        """(I : u) для свободного от квадратов u: образующие g / gcd(g, u)."""
        return MonomialIdeal(self.variable_count, tuple(g & ~monomial for g in self.generators))

    def to_json(self) -> List[List[int]]:
        return [list(bits(g)) for g in self.generators]


@dataclass(frozen=True)
class PartitionYNS:
    """Разбиение V(G)∖f на Y, N, S для грани f с q-1 непересекающимися рёбрами."""

    f: int
    matching: Matching
    y_set: int
    n_set: int
    s_set: int
    h_edge_count: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "f": list(bits(self.f)),
            "matching": self.matching.to_json(),
            "Y": list(bits(self.y_set)),
            "N": list(bits(self.n_set)),
            "S": list(bits(self.s_set)),
            "m": self.h_edge_count,
        }


def _check_vertex_budget(G: Graph) -> None:
    if G.order > MAX_BRUTEFORCE_VERTICES:
        raise ValueError(
            f"Граф на {G.order} вершинах слишком велик для перебора (предел {MAX_BRUTEFORCE_VERTICES})"
        )


def mf_complex(G: Graph, q: int) -> SimplicialComplex:
    """
    MF^q(G): грани — множества F, в G[F] нет паросочетания размера q.

    Перебираются все подмножества V(G) с таблицей ν(G[F]), остаются
    максимальные по включению. При q > ν(G) — полный симплекс на V(G).

    Raises:
        ValueError: q < 1 или граф слишком велик
    """
    if q < 1:
        raise ValueError(f"q должно быть не меньше 1: {q}")
    _check_vertex_budget(G)
    assert G.vertex_mask is not None
    mask = G.vertex_mask
    table = matching_number_table(G, mask)
    if table[mask] < q:
        return SimplicialComplex.full_simplex(G.n_vertices, mask)
    facets = []
    for sub, nu in table.items():
        if nu >= q:
            continue
        if all(table[sub | (1 << v)] >= q for v in bits(mask & ~sub)):
            facets.append(sub)
    logger.debug(f"MF^{q}: {len(facets)} фасет на {G.order} вершинах")
    return SimplicialComplex(G.n_vertices, tuple(facets))


def mf_facets_bruteforce(G: Graph, q: int) -> SimplicialComplex:
    """Оракул: фильтр 2^V через перечисление паросочетаний каждого индуцированного подграфа."""
    if q < 1:
        raise ValueError(f"q должно быть не меньше 1: {q}")
    _check_vertex_budget(G)
    assert G.vertex_mask is not None
    faces = [
        sub for sub in submasks_ascending(G.vertex_mask)
        if not enumerate_matchings(G.restrict(sub), q)
    ]
    return SimplicialComplex(G.n_vertices, tuple(faces))


def sf_power(G: Graph, q: int) -> MonomialIdeal:
    """I(G)^[q]: носители q-паросочетаний; нулевой идеал при q > ν(G)."""
    if q < 1:
        raise ValueError(f"q должно быть не меньше 1: {q}")
    return MonomialIdeal(G.n_vertices, tuple(M.support for M in enumerate_matchings(G, q)))


def edge_ideal(G: Graph) -> MonomialIdeal:
    return sf_power(G, 1)


def stanley_reisner(delta: SimplicialComplex, vertices: Optional[int] = None) -> MonomialIdeal:
    """
    I_Δ: образующие — минимальные не-грани.

    Args:
        delta: комплекс
        vertices: переменные кольца (маска); по умолчанию вся вселенная
    """
    scope = delta.universe if vertices is None else vertices
    return MonomialIdeal(
        delta.vertex_count,
        tuple(n for n in minimal_nonfaces(delta) if n & ~scope == 0),
    )


def verify_sr_equality(G: Graph, q: int) -> bool:
    """I_{MF^q(G)} = I(G)^[q] в кольце от вершин G."""
    assert G.vertex_mask is not None
    left = stanley_reisner(mf_complex(G, q), G.vertex_mask)
    right = sf_power(G, q)
    return left.generators == right.generators


def partition_yns(
    G: WhiskerGraph,
    f: int,
    M: Matching,
    q: Optional[int] = None,
) -> PartitionYNS:
    """
    Разбиение {Y, N, S} множества V(G)∖f.

    Y — усы концов H-рёбер M; N — пары {x_i, y_i} для x_i ∈ N_G(f)∩V(H);
    S — остаток. При пересечениях приоритет f > Y > N.

    Args:
        G: граф с усами
        f: грань (маска) MF^q(G)
        M: q-1 непересекающихся рёбер внутри f
        q: показатель; по умолчанию |M|+1

    Raises:
        ValueError: M не внутри f, |M| ≠ q-1 или f не грань MF^q(G)
    """
    q = len(M) + 1 if q is None else q
    if len(M) != q - 1:
        raise ValueError(f"Ожидалось {q - 1} рёбер, получено {len(M)}")
    graph = G.graph
    for u, v in M:
        if not graph.has_edge(u, v):
            raise ValueError(f"({u}, {v}) не является ребром графа")
    if M.support & ~f:
        raise ValueError("Паросочетание выходит за пределы грани f")
    if matching_number_of(graph, f) >= q:
        raise ValueError(f"{sorted(bits(f))} не является гранью MF^{q}")

    h_edges = [e for e in M if G.is_base_edge(e)]
    y_set = 0
    for u, v in h_edges:
        y_set |= (1 << G.partner(u)) | (1 << G.partner(v))
    y_set &= ~f

    closed = 0
    for v in bits(f):
        closed |= graph.neighbors(v)
    n_set = 0
    for x in bits(closed & ((1 << G.n) - 1)):
        n_set |= (1 << x) | (1 << G.partner(x))
    n_set &= ~(f | y_set)

    assert graph.vertex_mask is not None
    s_set = graph.vertex_mask & ~(f | y_set | n_set)
    return PartitionYNS(f, M, y_set, n_set, s_set, len(h_edges))


def check_facet_identity(G: WhiskerGraph, F: int, M: Matching) -> bool:
    """|F∩N| + |F∩S| = n - m - q + 1 для фасеты F ⊇ Supp(M), q = |M|+1."""
    part = partition_yns(G, M.support, M)
    q = len(M) + 1
    lhs = popcount(F & part.n_set) + popcount(F & part.s_set)
    return lhs == G.n - part.h_edge_count - q + 1


def check_facet_matchings(G: WhiskerGraph, q: int) -> bool:
    """Каждая фасета MF^q(G) содержит ровно q-1 непересекающихся рёбер, и тождество для неё выполнено."""
    delta = mf_complex(G.graph, q)
    for facet in delta.facets:
        if matching_number_of(G.graph, facet) != q - 1:
            return False
        for M in enumerate_matchings(G.graph.restrict(facet), q - 1):
            if not check_facet_identity(G, facet, M):
                return False
    return True


def check_pure_facet_size(G: WhiskerGraph, q: int) -> bool:
    """
    Если у грани f ⊆ F с q-1 рёбрами лишь m < ⌊ℓ/2⌋ рёбер из H,
    то фасета F имеет размер n+q-1.
    """
    ell = odd_girth(G.base)
    delta = mf_complex(G.graph, q)
    for facet in delta.facets:
        for M in enumerate_matchings(G.graph.restrict(facet), q - 1):
            m = sum(1 for e in M if G.is_base_edge(e))
            if is_finite(ell) and m >= ell // 2:
                continue
            if popcount(facet) != G.n + q - 1:
                return False
    return True


def extend_whisker_set(G: WhiskerGraph, M: Matching, S: int) -> int:
    """
    Дополняет S ⊆ Y до m вершин, попарно не связанных чётными маршрутами
    относительно H-рёбер M.

    Для каждого H-ребра {x_i1, x_i2} (i1 < i2), ни один ус которого ещё
    не выбран, сначала пробуется y_i1, затем y_i2.

    Raises:
        ValueError: S вне Y, уже содержит связанную пару или не расширяется
    """
    from .even_conn import even_connected

    h_matching = Matching(tuple(e for e in M if G.is_base_edge(e)))
    m = len(h_matching)
    y_set = 0
    for u, v in h_matching:
        y_set |= (1 << G.partner(u)) | (1 << G.partner(v))
    if S & ~y_set:
        raise ValueError("S должно лежать в Y")

    chosen = list(bits(S))
    graph = G.graph

    def linked(a: int, b: int) -> bool:
        return even_connected(graph, h_matching, a, b) is not None

    for i, a in enumerate(chosen):
        for b in chosen[i + 1:]:
            if linked(a, b):
                raise ValueError(f"Вершины {a} и {b} связаны чётным маршрутом")

    for u, v in h_matching:
        if len(chosen) >= m:
            break
        low, high = sorted((G.partner(u), G.partner(v)))
        if low in chosen or high in chosen:
            continue
        for candidate in (low, high):
            if not any(linked(candidate, other) for other in chosen):
                chosen.append(candidate)
                break

    if len(chosen) != m:
        raise ValueError(f"Не удалось расширить множество усов до {m} вершин: {sorted(chosen)}")
    return mask_of(chosen)
