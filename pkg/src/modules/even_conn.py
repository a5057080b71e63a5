"""
Модуль: чётные связи относительно паросочетания, графы G^M и B_G(M),
порядок на паросочетаниях, множества обмена и оракул для идеала-частного.

Чётная связь u ~_M v — маршрут u = p_0, p_1, ..., p_{2r+1} = v (r ≥ 1),
в котором пары {p_{2k+1}, p_{2k+2}} — рёбра M, каждое использовано не более
одного раза. Поиск ведётся по состояниям (вершина, использованные рёбра).
"""

from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .graph_core import Edge, Graph, Matching, WhiskerGraph, bits, enumerate_matchings
from .matching_free import MonomialIdeal, edge_ideal, sf_power

logger = logging.getLogger(__name__)

_State = Tuple[int, int]


@dataclass(frozen=True)
class EvenConnectionWitness:
    walk: Tuple[int, ...]
    used_edges: Tuple[Edge, ...]

    def reversed(self) -> "EvenConnectionWitness":
        return EvenConnectionWitness(tuple(reversed(self.walk)), tuple(reversed(self.used_edges)))


@dataclass(frozen=True)
class SwapSet:
    """
    S(M) и свидетели: для каждой вершины z — тройка (y, e_j, M'),
    где M' = (M∖e_j) ∪ {y, z} предшествует M.
    """

    matching: Matching
    vertices: int
    witnesses: Tuple[Tuple[int, int, Edge, Matching], ...] = field(default=(), compare=False)


def _validate_matching(G: Graph, M: Matching) -> None:
    for u, v in M:
        if not G.has_edge(u, v):
            raise ValueError(f"Ребро паросочетания ({u}, {v}) отсутствует в графе")


def _matching_index(M: Matching) -> Tuple[Dict[int, int], Dict[int, int]]:
    mate: Dict[int, int] = {}
    index: Dict[int, int] = {}
    for idx, (a, b) in enumerate(M.edges):
        mate[a], mate[b] = b, a
        index[a] = index[b] = idx
    return mate, index


def _explore(G: Graph, M: Matching, u: int) -> Dict[_State, Optional[Tuple[_State, int]]]:
    """Все достижимые из u состояния (чётная позиция, маска рёбер) с родителями."""
    mate, index = _matching_index(M)
    adj = G.adjacency
    parent: Dict[_State, Optional[Tuple[_State, int]]] = {}
    queue: deque = deque()
    for w in bits(adj[u] & M.support):
        state = (mate[w], 1 << index[w])
        if state not in parent:
            parent[state] = ((u, 0), w)
            queue.append(state)
    while queue:
        p, used = queue.popleft()
        for w in bits(adj[p] & M.support):
            bit = 1 << index[w]
            if used & bit:
                continue
            state = (mate[w], used | bit)
            if state not in parent:
                parent[state] = ((p, used), w)
                queue.append(state)
    return parent


def _reconstruct(
    parent: Dict[_State, Optional[Tuple[_State, int]]],
    state: _State,
    start: int,
    end: int,
) -> List[int]:
    tail: List[int] = [end]
    current = state
    while True:
        entry = parent[current]
        assert entry is not None
        previous, w = entry
        tail.extend([current[0], w])
        if previous == (start, 0):
            break
        current = previous
    tail.append(start)
    return list(reversed(tail))


def _check_endpoints(G: Graph, M: Matching, u: int, v: int) -> None:
    if u == v:
        raise ValueError("Концы чётной связи должны различаться")
    for x in (u, v):
        if (M.support >> x) & 1:
            raise ValueError(f"Вершина {x} лежит в носителе паросочетания")
        assert G.vertex_mask is not None
        if not (G.vertex_mask >> x) & 1:
            raise ValueError(f"Вершина {x} вне графа")


def even_connected(G: Graph, M: Matching, u: int, v: int) -> Optional[EvenConnectionWitness]:
    """
    Маршрут-свидетель u ~_M v или None.

    Raises:
        ValueError: u = v или конец лежит в Supp(M)
    """
    _check_endpoints(G, M, u, v)
    parent = _explore(G, M, u)
    for state in sorted(parent):
        p, _ = state
        if G.has_edge(p, v):
            walk = _reconstruct(parent, state, u, v)
            pairs = [(walk[i], walk[i + 1]) for i in range(1, len(walk) - 1, 2)]
            used = tuple((min(a, b), max(a, b)) for a, b in pairs)
            return EvenConnectionWitness(tuple(walk), used)
    return None


def even_reach(G: Graph, M: Matching, u: int) -> int:
    """Маска всех v ∉ Supp(M), v ≠ u, чётно связанных с u."""
    reach = 0
    adj = G.adjacency
    for p, _ in _explore(G, M, u):
        reach |= adj[p]
    return reach & ~M.support & ~(1 << u)


def even_connected_bruteforce(G: Graph, M: Matching, u: int, v: int) -> bool:
    """Оракул: полный перебор чередующихся маршрутов длины до 2|M|+1 без мемоизации."""
    _check_endpoints(G, M, u, v)
    mate, index = _matching_index(M)

    def walk(p: int, used: int) -> bool:
        for w in G.vertices:
            if not G.has_edge(p, w):
                continue
            if w == v and used:
                return True
            if w in mate and not used & (1 << index[w]):
                if walk(mate[w], used | (1 << index[w])):
                    return True
        return False

    return walk(u, 0)


def even_conn_graph(G: Graph, M: Matching) -> Graph:
    """
    G^M: вершины V(G)∖Supp(M); ребро — исходное ребро или чётная связь.

    Вселенная индексов сохраняется.
    """
    _validate_matching(G, M)
    assert G.vertex_mask is not None
    remaining = G.vertex_mask & ~M.support
    base = G.restrict(remaining)
    extra = set()
    for u in bits(remaining):
        for v in bits(even_reach(G, M, u) & remaining):
            if u < v:
                extra.add((u, v))
    return base.with_edges(extra)


def b_graph(G: WhiskerGraph, M: Matching) -> Graph:
    """B_G(M) = G^M[Y]: индуцированный подграф на усах концов рёбер M."""
    for edge in M:
        if not G.is_base_edge(edge):
            raise ValueError(f"Ребро {edge} не лежит в H")
    y_set = 0
    for u, v in M:
        y_set |= (1 << G.partner(u)) | (1 << G.partner(v))
    return even_conn_graph(G.graph, M).restrict(y_set)


def whisker_count(G: WhiskerGraph, M: Matching) -> int:
    return sum(1 for e in M if G.is_whisker_edge(e))


def matching_order_key(G: WhiskerGraph, M: Matching) -> Tuple[int, Tuple[Edge, ...]]:
    """Ключ порядка ≺: число усов, затем лексикографический порядок рёбер."""
    return whisker_count(G, M), M.edges


class MatchingOrder:
    """
    Упорядоченный список паросочетаний заданного размера в G∖x1.

    Семейства идут по возрастанию числа усов; внутри семейства — лексикографически
    либо в случайном порядке, если передан rng.
    """

    def __init__(self, G: WhiskerGraph, x1: int, size: int, rng: Optional[random.Random] = None):
        self.whisker_graph = G
        self.x1 = x1
        self.size = size
        reduced = G.graph.delete_vertices([x1])
        matchings = enumerate_matchings(reduced, size)
        if rng is None:
            ordered = sorted(matchings, key=lambda M: matching_order_key(G, M))
        else:
            ties = {M: rng.random() for M in matchings}
            ordered = sorted(matchings, key=lambda M: (whisker_count(G, M), ties[M]))
        self.matchings: List[Matching] = ordered
        self._rank = {M: i for i, M in enumerate(ordered)}

    def __len__(self) -> int:
        return len(self.matchings)

    def __iter__(self) -> Iterator[Matching]:
        return iter(self.matchings)

    def rank(self, M: Matching) -> int:
        try:
            return self._rank[M]
        except KeyError:
            raise ValueError(f"Паросочетание {M.edges} не входит в порядок") from None

    def precedes(self, a: Matching, b: Matching) -> bool:
        return self.rank(a) < self.rank(b)


def swap_set(
    G: WhiskerGraph,
    x1: int,
    M: Matching,
    order: Optional[MatchingOrder] = None,
) -> SwapSet:
    """
    S(M): вершины z ∉ Supp(M) ∪ {x1}, для которых замена ребра e_j ∈ M
    на {y, z} (y ∈ e_j) даёт паросочетание, предшествующее M.
    """
    if (M.support >> x1) & 1:
        raise ValueError("Паросочетание должно лежать в G∖x1")
    order = order or MatchingOrder(G, x1, len(M))
    graph = G.graph
    assert graph.vertex_mask is not None
    outside = graph.vertex_mask & ~M.support & ~(1 << x1)
    found: Dict[int, Tuple[int, int, Edge, Matching]] = {}
    for edge in M:
        for y in edge:
            for z in bits(graph.neighbors(y) & outside):
                if z in found:
                    continue
                replacement = M.without(edge).with_edge((y, z))
                if order.precedes(replacement, M):
                    found[z] = (z, y, edge, replacement)
    vertices = 0
    for z in found:
        vertices |= 1 << z
    return SwapSet(M, vertices, tuple(found[z] for z in sorted(found)))


@dataclass(frozen=True)
class ColonComparison:
    """Результат сравнения (I^[q+1] : ∏Supp M) с I(G^M)."""

    matching: Matching
    colon: MonomialIdeal
    expected: MonomialIdeal

    @property
    def all_degree_two(self) -> bool:
        return all(d == 2 for d in self.colon.degrees())

    @property
    def equal(self) -> bool:
        return self.colon.generators == self.expected.generators

    @property
    def ok(self) -> bool:
        return self.all_degree_two and self.equal

    def diff(self) -> Dict[str, List[List[int]]]:
        left = set(self.colon.generators)
        right = set(self.expected.generators)
        return {
            "only_colon": [list(bits(g)) for g in sorted(left - right)],
            "only_even_conn": [list(bits(g)) for g in sorted(right - left)],
        }


def colon_ideal(G: Graph, M: Matching, power: Optional[MonomialIdeal] = None) -> ColonComparison:
    """
    Частное (I(G)^[|M|+1] : ∏Supp M) перебором и рёберный идеал G^M.

    Args:
        G: граф
        M: паросочетание
        power: заранее посчитанный I(G)^[|M|+1]
    """
    _validate_matching(G, M)
    power = power if power is not None else sf_power(G, len(M) + 1)
    return ColonComparison(M, power.colon(M.support), edge_ideal(even_conn_graph(G, M)))


def colon_oracle_verify(G: Graph, M: Matching, q: Optional[int] = None) -> bool:
    """Все образующие частного имеют степень 2 и совпадают с I(G^M)."""
    if q is not None and q != len(M):
        raise ValueError(f"q должно равняться |M| = {len(M)}")
    comparison = colon_ideal(G, M)
    if not comparison.ok:
        logger.debug(f"❌ Частное не совпало для {M.edges}: {comparison.diff()}")
    return comparison.ok
