"""
Модуль: графы, графы с усами W(H), обхват и перечисление паросочетаний.

Вершины — целые индексы во вселенной 0..n_vertices-1, множества вершин
хранятся битовыми масками. Граф может занимать часть вселенной
(vertex_mask): удаление вершин сохраняет нумерацию, поэтому G^M, звенья
комплексов и подграфы сравниваются без перенумерации.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# Потолок перечисления всех связных графов (атлас networkx заканчивается на 7 вершинах)
MAX_ALL_CONNECTED = 7


@total_ordering
class ExtendedBound:
    """Сентинел бесконечности: сравним с int, арифметика запрещена."""

    def __init__(self, sign: int):
        self._sign = sign

    def __repr__(self) -> str:
        return "INFINITY" if self._sign > 0 else "NEG_INFINITY"

    def __str__(self) -> str:
        return "inf" if self._sign > 0 else "-inf"

    def __eq__(self, other: object) -> bool:
        return self is other

    def __hash__(self) -> int:
        return hash(("extended-bound", self._sign))

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, ExtendedBound):
            return self._sign < other._sign
        if isinstance(other, int):
            return self._sign < 0
        return NotImplemented


INFINITY = ExtendedBound(1)
NEG_INFINITY = ExtendedBound(-1)

ExtendedInt = Union[int, ExtendedBound]


def is_finite(value: ExtendedInt) -> bool:
    return not isinstance(value, ExtendedBound)


def to_json_value(value: ExtendedInt) -> Union[int, str]:
    """Расширенное число для JSON: бесконечности пишутся строками."""
    return str(value) if isinstance(value, ExtendedBound) else value


# --- Битовые множества ---

def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    """Индексы установленных битов по возрастанию."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"Отрицательный индекс вершины: {v}")
        mask |= 1 << v
    return mask


def submasks_ascending(mask: int) -> Iterator[int]:
    """Все подмаски mask в порядке возрастания (начиная с 0)."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Простой неориентированный граф во вселенной вершин 0..n_vertices-1.

    Args:
        n_vertices: размер вселенной индексов
        edges: неупорядоченные пары вершин
        labels: необязательные имена вершин (по одному на индекс вселенной)
        vertex_mask: присутствующие вершины; None — все
    """

    n_vertices: int
    edges: FrozenSet[Edge]
    labels: Optional[Tuple[str, ...]] = None
    vertex_mask: Optional[int] = None

    def __post_init__(self):
        if self.n_vertices < 0:
            raise ValueError(f"Число вершин не может быть отрицательным: {self.n_vertices}")
        full = (1 << self.n_vertices) - 1
        mask = full if self.vertex_mask is None else self.vertex_mask
        if mask & ~full:
            raise ValueError("Маска вершин выходит за пределы вселенной")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Петля в вершине {u} недопустима")
            if not ((mask >> u) & 1 and (mask >> v) & 1):
                raise ValueError(f"Ребро ({u}, {v}) выходит за множество вершин графа")
            normalized.add(_normalize_edge(u, v))
        if self.labels is not None and len(self.labels) != self.n_vertices:
            raise ValueError("Число меток не совпадает с числом вершин")
        object.__setattr__(self, "vertex_mask", mask)
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        edges: Iterable[Sequence[int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        return cls(
            n_vertices,
            frozenset((int(e[0]), int(e[1])) for e in edges),
            tuple(labels) if labels is not None else None,
        )

    @cached_property
    def adjacency(self) -> Tuple[int, ...]:
        adj = [0] * self.n_vertices
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def edge_list(self) -> Tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @property
    def vertices(self) -> List[int]:
        assert self.vertex_mask is not None
        return list(bits(self.vertex_mask))

    @property
    def order(self) -> int:
        assert self.vertex_mask is not None
        return popcount(self.vertex_mask)

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def restrict(self, mask: int) -> "Graph":
        """Индуцированный подграф на mask без перенумерации."""
        assert self.vertex_mask is not None
        if mask & ~self.vertex_mask:
            raise ValueError("Подмножество содержит вершины вне графа")
        edges = frozenset(e for e in self.edges if (mask >> e[0]) & 1 and (mask >> e[1]) & 1)
        return Graph(self.n_vertices, edges, self.labels, mask)

    def delete_vertices(self, vertices: Iterable[int]) -> "Graph":
        assert self.vertex_mask is not None
        return self.restrict(self.vertex_mask & ~mask_of(vertices))

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n_vertices, self.edges | frozenset(extra), self.labels, self.vertex_mask)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edge_list)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        """Переводит граф networkx в Graph; узлы нумеруются в порядке сортировки."""
        nodes = sorted(g.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        labels = None
        if nodes != list(range(len(nodes))):
            labels = tuple(str(node) for node in nodes)
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in g.edges()), labels)


@dataclass(frozen=True)
class WhiskerGraph:
    """W(H): основание H на x_0..x_{n-1} и граф G, где y_i = n + i."""

    base: Graph
    graph: Graph

    @property
    def n(self) -> int:
        return self.base.n_vertices

    @property
    def pairing(self) -> Dict[int, int]:
        return {i: self.n + i for i in range(self.n)}

    def partner(self, v: int) -> int:
        return v + self.n if v < self.n else v - self.n

    def is_whisker_vertex(self, v: int) -> bool:
        return v >= self.n

    def is_whisker_edge(self, edge: Edge) -> bool:
        u, v = _normalize_edge(*edge)
        return v == u + self.n

    def is_base_edge(self, edge: Edge) -> bool:
        return edge[0] < self.n and edge[1] < self.n

    def vertex_name(self, v: int) -> str:
        """Имя вершины в 1-индексации: x1.., y1.."""
        return f"x{v + 1}" if v < self.n else f"y{v - self.n + 1}"

    def delete_pair(self, i: int) -> Tuple["WhiskerGraph", Tuple[int, ...]]:
        """
        Удаляет пару {x_i, y_i} и возвращает W(H∖x_i) с картой индексов.

        Returns:
            tuple: (W(H∖x_i), index_map), где index_map[k] — исходный индекс вершины k
        """
        if not 0 <= i < self.n:
            raise ValueError(f"Нет базовой вершины {i}")
        sub_base, base_map = induced_subgraph(self.base, [v for v in range(self.n) if v != i])
        index_map = tuple(base_map) + tuple(self.n + v for v in base_map)
        return whisker(sub_base), index_map


@dataclass(frozen=True)
class Matching:
    """Паросочетание: попарно непересекающиеся рёбра и их носитель Supp(M)."""

    edges: Tuple[Edge, ...]
    support: int = field(default=0, init=False)

    def __post_init__(self):
        normalized = tuple(sorted(_normalize_edge(u, v) for u, v in self.edges))
        support = 0
        for u, v in normalized:
            if u == v:
                raise ValueError(f"Петля ({u}, {v}) не может входить в паросочетание")
            bit = (1 << u) | (1 << v)
            if support & bit:
                raise ValueError(f"Рёбра паросочетания пересекаются: {normalized}")
            support |= bit
        object.__setattr__(self, "edges", normalized)
        object.__setattr__(self, "support", support)

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]]) -> "Matching":
        return cls(tuple((int(e[0]), int(e[1])) for e in edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def mate(self, v: int) -> Optional[int]:
        for a, b in self.edges:
            if a == v:
                return b
            if b == v:
                return a
        return None

    def without(self, edge: Edge) -> "Matching":
        target = _normalize_edge(*edge)
        return Matching(tuple(e for e in self.edges if e != target))

    def with_edge(self, edge: Edge) -> "Matching":
        return Matching(self.edges + (_normalize_edge(*edge),))

    def to_json(self) -> List[List[int]]:
        return [list(e) for e in self.edges]


@dataclass(frozen=True)
class GraphStats:
    """n, обхват m, нечётный обхват ℓ и ν для строки отчёта."""

    n: int
    girth: ExtendedInt
    odd_girth: ExtendedInt
    matching_number: int


def whisker(H: Graph) -> WhiskerGraph:
    """Строит W(H): к каждой вершине x_i добавляется висячее ребро {x_i, y_i}, y_i = n + i."""
    if H.order != H.n_vertices:
        raise ValueError("Основание W(H) должно занимать всю вселенную вершин; перенумеруйте через induced_subgraph")
    n = H.n_vertices
    edges = set(H.edges) | {(i, n + i) for i in range(n)}
    labels = None
    if H.labels is not None:
        labels = tuple(H.labels) + tuple(f"y_{label}" for label in H.labels)
    return WhiskerGraph(H, Graph(2 * n, frozenset(edges), labels))


def _shortest_cycle(H: Graph, odd_only: bool) -> ExtendedInt:
    best: ExtendedInt = INFINITY
    adj = H.adjacency
    for root in H.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in bits(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif odd_only:
                    if dist[w] == dist[u]:
                        length = 2 * dist[u] + 1
                        if length < best:
                            best = length
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if length < best:
                        best = length
    return best


def girth(H: Graph) -> ExtendedInt:
    """Длина кратчайшего цикла; INFINITY для леса."""
    return _shortest_cycle(H, odd_only=False)


def odd_girth(H: Graph) -> ExtendedInt:
    """Длина кратчайшего нечётного цикла; INFINITY для двудольного графа."""
    return _shortest_cycle(H, odd_only=True)


def cycle_lengths_bruteforce(H: Graph) -> List[int]:
    """Оракул: длины всех простых циклов (перечисление networkx)."""
    lengths = {len(c) for c in nx.simple_cycles(H.to_networkx()) if len(c) >= 3}
    return sorted(lengths)


def is_bipartite(H: Graph) -> bool:
    return odd_girth(H) is INFINITY


def is_connected(H: Graph) -> bool:
    assert H.vertex_mask is not None
    if H.vertex_mask == 0:
        return False
    start = next(bits(H.vertex_mask))
    seen = 1 << start
    frontier = [start]
    while frontier:
        u = frontier.pop()
        fresh = H.adjacency[u] & ~seen
        seen |= fresh
        frontier.extend(bits(fresh))
    return seen == H.vertex_mask


def is_unicyclic(H: Graph) -> bool:
    return is_connected(H) and len(H.edges) == H.order


def complement(H: Graph) -> Graph:
    """Дополнение графа в пределах его множества вершин."""
    vertices = H.vertices
    edges = frozenset(
        (u, v) for u, v in itertools.combinations(vertices, 2) if not H.has_edge(u, v)
    )
    return Graph(H.n_vertices, edges, H.labels, H.vertex_mask)


def enumerate_matchings(G: Graph, k: int) -> List[Matching]:
    """
    Все паросочетания размера ровно k.

    Порядок детерминирован: лексикографический по отсортированным спискам рёбер.
    """
    if k < 0:
        raise ValueError(f"Размер паросочетания не может быть отрицательным: {k}")
    edges = G.edge_list
    result: List[Matching] = []
    chosen: List[Edge] = []

    def extend(start: int, used: int) -> None:
        if len(chosen) == k:
            result.append(Matching(tuple(chosen)))
            return
        for idx in range(start, len(edges) - (k - len(chosen)) + 1):
            u, v = edges[idx]
            bit = (1 << u) | (1 << v)
            if used & bit:
                continue
            chosen.append(edges[idx])
            extend(idx + 1, used | bit)
            chosen.pop()

    extend(0, 0)
    return result


def enumerate_matchings_bruteforce(G: Graph, k: int) -> List[Matching]:
    """Оракул: фильтр всех k-подмножеств рёбер по попарной непересекаемости."""
    found = []
    for combo in itertools.combinations(G.edge_list, k):
        touched = [v for e in combo for v in e]
        if len(set(touched)) == 2 * k:
            found.append(Matching(combo))
    return found


def matching_number_table(G: Graph, mask: Optional[int] = None) -> Dict[int, int]:
    """
    ν(G[F]) для всех подмножеств F ⊆ mask.

    Динамика по подмаскам в порядке возрастания: младшая вершина либо
    свободна, либо покрыта ребром к соседу внутри F.
    """
    assert G.vertex_mask is not None
    mask = G.vertex_mask if mask is None else mask
    adj = G.adjacency
    table: Dict[int, int] = {}
    for sub in submasks_ascending(mask):
        if sub == 0:
            table[0] = 0
            continue
        low = sub & -sub
        v = low.bit_length() - 1
        rest = sub ^ low
        best = table[rest]
        for u in bits(adj[v] & rest):
            cand = 1 + table[rest & ~(1 << u)]
            if cand > best:
                best = cand
        table[sub] = best
    return table


def _max_matching(adj: Tuple[int, ...], mask: int, memo: Dict[int, int]) -> int:
    if mask == 0:
        return 0
    cached = memo.get(mask)
    if cached is not None:
        return cached
    low = mask & -mask
    v = low.bit_length() - 1
    rest = mask ^ low
    best = _max_matching(adj, rest, memo)
    for u in bits(adj[v] & rest):
        best = max(best, 1 + _max_matching(adj, rest & ~(1 << u), memo))
    memo[mask] = best
    return best


def matching_number(G: Graph) -> int:
    """Наибольший размер паросочетания ν(G)."""
    assert G.vertex_mask is not None
    return _max_matching(G.adjacency, G.vertex_mask, {})


def matching_number_of(G: Graph, mask: int) -> int:
    """ν(G[mask]) без построения подграфа."""
    return _max_matching(G.adjacency, mask, {})


def graph_stats(H: Graph, whiskered: bool = True) -> GraphStats:
    """Статистика для отчёта; при whiskered ν берётся у W(H)."""
    nu = matching_number(whisker(H).graph) if whiskered else matching_number(H)
    return GraphStats(n=H.order, girth=girth(H), odd_girth=odd_girth(H), matching_number=nu)


def induced_subgraph(G: Graph, S: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """
    G[S] с перенумерацией вершин.

    Args:
        G: исходный граф
        S: подмножество вершин G

    Returns:
        tuple: (подграф на 0..|S|-1, index_map), index_map[k] — исходный индекс

    Raises:
        ValueError: если S содержит вершину вне G
    """
    assert G.vertex_mask is not None
    chosen = sorted(set(S))
    for v in chosen:
        if v < 0 or v >= G.n_vertices or not (G.vertex_mask >> v) & 1:
            raise ValueError(f"Вершина {v} вне графа")
    index = {v: k for k, v in enumerate(chosen)}
    edges = [(index[u], index[v]) for u, v in G.edge_list if u in index and v in index]
    labels = tuple(G.labels[v] for v in chosen) if G.labels is not None else None
    return Graph.from_edges(len(chosen), edges, labels), tuple(chosen)


def attach_whiskers(H: Graph, S: Iterable[int], t: int) -> Tuple[Graph, Dict[int, Tuple[int, ...]]]:
    """
    H ∪ W_t(S): к каждой вершине S подвешивается t новых листьев.

    Листья нумеруются после вершин H в порядке возрастания вершин S.

    Returns:
        tuple: (граф, словарь вершина S -> индексы её листьев)
    """
    if t < 1:
        raise ValueError(f"Число усов должно быть положительным: {t}")
    if H.order != H.n_vertices:
        raise ValueError("Граф H должен занимать всю вселенную вершин")
    next_index = H.n_vertices
    edges = set(H.edges)
    leaves: Dict[int, Tuple[int, ...]] = {}
    for s in sorted(set(S)):
        if not 0 <= s < H.n_vertices:
            raise ValueError(f"Вершина {s} вне графа")
        own = tuple(range(next_index, next_index + t))
        edges.update((s, leaf) for leaf in own)
        leaves[s] = own
        next_index += t
    return Graph.from_edges(next_index, edges), leaves


def _from_nx(g: nx.Graph) -> Graph:
    return Graph.from_networkx(nx.convert_node_labels_to_integers(g, ordering="sorted"))


def _all_connected(n: int, labeled: bool) -> List[Graph]:
    if n < 1 or n > MAX_ALL_CONNECTED:
        raise ValueError(f"all_connected поддерживает 1 ≤ n ≤ {MAX_ALL_CONNECTED}, получено {n}")
    if not labeled:
        return [
            _from_nx(g)
            for g in nx.graph_atlas_g()
            if g.number_of_nodes() == n and nx.is_connected(g)
        ]
    pairs = list(itertools.combinations(range(n), 2))
    graphs = []
    for size in range(n - 1, len(pairs) + 1):
        for chosen in itertools.combinations(pairs, size):
            g = Graph.from_edges(n, chosen)
            if is_connected(g):
                graphs.append(g)
    return graphs


def _trees(n: int) -> List[Graph]:
    if n < 1:
        raise ValueError(f"Дерево должно иметь хотя бы одну вершину: {n}")
    if n == 1:
        return [Graph.from_edges(1, [])]
    return [_from_nx(t) for t in nx.nonisomorphic_trees(n)]


def generate_family(name: str, *params, labeled: bool = False) -> Union[Graph, List[Graph]]:
    """
    Канонический граф (или список графов) семейства.

    Args:
        name: path, cycle, complete, complete_bipartite, star, tree,
            trees, all_connected
        params: параметры семейства (число вершин, доли, список рёбер)
        labeled: для all_connected — все помеченные графы вместо классов изоморфизма

    Returns:
        Graph для одиночных семейств, List[Graph] для trees и all_connected

    Raises:
        ValueError: неизвестное семейство или недопустимые параметры
    """
    if name == "path":
        (n,) = params
        if n < 1:
            raise ValueError(f"Путь должен иметь хотя бы одну вершину: {n}")
        return _from_nx(nx.path_graph(n))
    if name == "cycle":
        (n,) = params
        if n < 3:
            raise ValueError(f"Цикл должен иметь хотя бы 3 вершины: {n}")
        return _from_nx(nx.cycle_graph(n))
    if name == "complete":
        (n,) = params
        if n < 1:
            raise ValueError(f"Полный граф должен иметь хотя бы одну вершину: {n}")
        return _from_nx(nx.complete_graph(n))
    if name == "complete_bipartite":
        a, b = params
        if a < 1 or b < 1:
            raise ValueError(f"Доли полного двудольного графа должны быть непусты: {a}, {b}")
        return _from_nx(nx.complete_bipartite_graph(a, b))
    if name == "star":
        (n,) = params
        if n < 1:
            raise ValueError(f"Звезда должна иметь хотя бы одну вершину: {n}")
        return _from_nx(nx.star_graph(n - 1))
    if name == "tree":
        (edges,) = params
        edges = [tuple(e) for e in edges]
        n = 1 + max((max(e) for e in edges), default=0)
        graph = Graph.from_edges(n, edges)
        if not (is_connected(graph) and len(graph.edges) == n - 1):
            raise ValueError(f"Список рёбер не задаёт дерево: {edges}")
        return graph
    if name == "trees":
        (n,) = params
        return _trees(n)
    if name == "all_connected":
        (n,) = params
        return _all_connected(n, labeled)
    raise ValueError(f"Неизвестное семейство графов: {name}")


def family_members(name: str, *params, labeled: bool = False) -> List[Graph]:
    """generate_family, всегда возвращающий список."""
    result = generate_family(name, *params, labeled=labeled)
    return result if isinstance(result, list) else [result]
