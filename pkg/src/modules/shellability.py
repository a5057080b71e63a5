"""
Модуль: шеллингуемость и вершинная разложимость.

Содержит
- перебор порядков фасет (жадно, затем с возвратом и мемоизацией);
- разложимость по вершинам с мемоизацией по канонической форме;
- проверку теневой грани;
- конструктивный шеллинг MF^q(W(H)) по фильтрации теневыми гранями
  (носители (q-1)-паросочетаний G∖x1 в порядке ≺) с рекурсией на W(H∖x1);
- хордальность и критерий Фрёберга для рёберных идеалов.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .even_conn import MatchingOrder, even_conn_graph, swap_set
from .graph_core import Graph, Matching, WhiskerGraph, bits, complement, matching_number, popcount
from .matching_free import mf_complex
from .simplicial import (
    SimplicialComplex,
    delete_face,
    join,
    link,
    remove_face,
)

logger = logging.getLogger(__name__)

DEFAULT_SHELLING_CAP = 12


class CapExceededError(RuntimeError):
    """Перебор превысил лимит там, где ответ обязателен."""


class ShellabilityStatus(Enum):
    SHELLABLE = "shellable"
    NOT_SHELLABLE = "not-shellable"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ShellabilityResult:
    status: ShellabilityStatus
    order: Optional[Tuple[int, ...]] = None

    @property
    def shellable(self) -> Optional[bool]:
        if self.status is ShellabilityStatus.INDETERMINATE:
            return None
        return self.status is ShellabilityStatus.SHELLABLE


def _step_ok(previous: Sequence[int], facet: int) -> bool:
    """⟨F⟩ ∩ ⟨F_1, ..., F_{k-1}⟩ чист размерности dim F - 1."""
    if not previous:
        return True
    size = popcount(facet)
    meets = [facet & p for p in previous]
    ridges = [m for m in meets if popcount(m) == size - 1]
    return all(any(m & ~r == 0 for r in ridges) for m in meets)


def verify_shelling_order(delta: SimplicialComplex, order: Sequence[int]) -> bool:
    """Порядок — перестановка фасет Δ, и каждый шаг удовлетворяет условию шеллинга."""
    if len(order) != len(delta.facets) or set(order) != set(delta.facets):
        return False
    return all(_step_ok(order[:k], order[k]) for k in range(len(order)))


def _greedy(facets: List[int], first: int) -> Optional[List[int]]:
    order = [first]
    remaining = [f for f in facets if f != first]
    while remaining:
        top = max(popcount(f) for f in remaining)
        pick = next((f for f in remaining if popcount(f) == top and _step_ok(order, f)), None)
        if pick is None:
            return None
        order.append(pick)
        remaining.remove(pick)
    return order


def is_shellable_bruteforce(delta: SimplicialComplex, cap: int = DEFAULT_SHELLING_CAP) -> ShellabilityResult:
    """
    Ищет порядок шеллинга.

    Фасеты перебираются по невозрастанию размера (любой шеллинг так
    переставляется). Сначала жадные попытки от каждой фасеты наибольшего
    размера, затем полный перебор с возвратом, если фасет не больше cap.
    Неудачные множества уже выбранных фасет запоминаются: допустимость
    следующего шага зависит только от множества, а не от порядка.

    Returns:
        ShellabilityResult: SHELLABLE с порядком, NOT_SHELLABLE или INDETERMINATE
    """
    facets = sorted(delta.facets, key=lambda f: (-popcount(f), tuple(bits(f))))
    if len(facets) <= 1:
        return ShellabilityResult(ShellabilityStatus.SHELLABLE, tuple(facets))

    top = popcount(facets[0])
    for first in (f for f in facets if popcount(f) == top):
        order = _greedy(facets, first)
        if order is not None:
            return ShellabilityResult(ShellabilityStatus.SHELLABLE, tuple(order))

    if len(facets) > cap:
        logger.debug(f"Перебор шеллинга пропущен: {len(facets)} фасет > {cap}")
        return ShellabilityResult(ShellabilityStatus.INDETERMINATE)

    full = (1 << len(facets)) - 1
    dead = set()
    chosen: List[int] = []

    def search(used: int) -> bool:
        if used == full:
            return True
        if used in dead:
            return False
        size = max(popcount(facets[i]) for i in range(len(facets)) if not (used >> i) & 1)
        previous = [facets[i] for i in chosen]
        for i, facet in enumerate(facets):
            if (used >> i) & 1 or popcount(facet) != size:
                continue
            if _step_ok(previous, facet):
                chosen.append(i)
                if search(used | (1 << i)):
                    return True
                chosen.pop()
        dead.add(used)
        return False

    if search(0):
        return ShellabilityResult(ShellabilityStatus.SHELLABLE, tuple(facets[i] for i in chosen))
    return ShellabilityResult(ShellabilityStatus.NOT_SHELLABLE)


def _canonical(delta: SimplicialComplex) -> SimplicialComplex:
    """Перенумерация вершин по сигнатуре (число фасет, размеры фасет) с сохранением порядка при равенстве."""
    signature: Dict[int, Tuple[int, Tuple[int, ...]]] = {}
    for v in bits(delta.vertex_support):
        sizes = sorted(popcount(f) for f in delta.facets if (f >> v) & 1)
        signature[v] = (len(sizes), tuple(sizes))
    ordered = sorted(signature, key=lambda v: (signature[v], v))
    mapping = {v: i for i, v in enumerate(ordered)}
    return delta.relabel(mapping, len(ordered))


def _is_shedding_vertex(delta: SimplicialComplex, v: int, deletion: SimplicialComplex) -> bool:
    """Ни одна грань link(v) не является фасетой Δ∖v."""
    return not any(delta.contains(f | (1 << v)) for f in deletion.facets)


@lru_cache(maxsize=1 << 15)
def _vd(delta: SimplicialComplex) -> bool:
    if len(delta.facets) <= 1:
        return True
    for v in bits(delta.vertex_support):
        deletion = delete_face(delta, 1 << v)
        if not _is_shedding_vertex(delta, v, deletion):
            continue
        if _vd(_canonical(deletion)) and _vd(_canonical(link(delta, 1 << v))):
            return True
    return False


def is_vertex_decomposable(delta: SimplicialComplex) -> bool:
    """Рекурсивный поиск теневых вершин с мемоизацией по канонической форме."""
    return _vd(_canonical(delta))


def _vd_order(delta: SimplicialComplex) -> List[int]:
    if len(delta.facets) <= 1:
        return list(delta.facets)
    for v in bits(delta.vertex_support):
        deletion = delete_face(delta, 1 << v)
        if not _is_shedding_vertex(delta, v, deletion):
            continue
        lk = link(delta, 1 << v)
        if _vd(_canonical(deletion)) and _vd(_canonical(lk)):
            return _vd_order(deletion) + [f | (1 << v) for f in _vd_order(lk)]
    raise RuntimeError("Комплекс перестал быть вершинно разложимым при восстановлении порядка")


def vertex_decomposition_order(delta: SimplicialComplex) -> Optional[List[int]]:
    """Порядок шеллинга из разложения: сначала Δ∖v, затем v ∪ (порядок link v)."""
    if not is_vertex_decomposable(delta):
        return None
    return _vd_order(delta)


def is_shedding_face(delta: SimplicialComplex, sigma: int) -> bool:
    """
    Для всех τ ⊇ σ в Δ и v ∈ σ найдётся w ∈ V(Δ)∖τ с (τ ∪ {w})∖{v} ∈ Δ.

    Raises:
        ValueError: σ не грань Δ
    """
    if not delta.contains(sigma):
        raise ValueError(f"{sorted(bits(sigma))} не является гранью комплекса")
    faces = delta.face_set
    support = delta.vertex_support
    star_faces = set()
    for facet in delta.facets:
        if sigma & ~facet:
            continue
        free = facet & ~sigma
        sub = free
        while True:
            star_faces.add(sub | sigma)
            if sub == 0:
                break
            sub = (sub - 1) & free
    for tau in star_faces:
        outside = list(bits(support & ~tau))
        for v in bits(sigma):
            base = tau & ~(1 << v)
            if not any((base | (1 << w)) in faces for w in outside):
                return False
    return True


@dataclass(frozen=True)
class ShellingFailure:
    """Неудачный шаг конструктивного шеллинга."""

    q: int
    step: str
    detail: str

    def to_json(self) -> Dict[str, Any]:
        return {"q": self.q, "step": self.step, "detail": self.detail}


@dataclass(frozen=True)
class ShellingCertificate:
    """
    Данные фильтрации Ω_0 ⊃ Ω_1 ⊃ ... ⊃ Ω_α и итоговый порядок фасет.

    swap_sets — S(M_k) по определению через одиночные замены ребра;
    link_exclusions — вершины z, для которых μ_k ∪ {z} содержит более ранний
    носитель: именно они выпадают из звена μ_k в Ω_{k-1}.
    recursion — сертификат для MF^{q-1}(W(H∖x1)), recursion_map переводит
    его вершины в исходные индексы.
    """

    n_vertices: int
    q: int
    x1: int
    matching_order: Tuple[Matching, ...]
    supports: Tuple[int, ...]
    representatives: Tuple[Matching, ...]
    swap_sets: Tuple[int, ...]
    link_exclusions: Tuple[int, ...]
    links: Tuple[SimplicialComplex, ...]
    facet_order: Tuple[int, ...]
    recursion: Optional["ShellingCertificate"] = field(default=None, compare=False)
    recursion_map: Tuple[int, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n_vertices,
            "q": self.q,
            "x1": self.x1,
            "matchings": [M.to_json() for M in self.matching_order],
            "supports": [list(bits(mu)) for mu in self.supports],
            "representatives": [M.to_json() for M in self.representatives],
            "swap_sets": [list(bits(s)) for s in self.swap_sets],
            "link_exclusions": [list(bits(s)) for s in self.link_exclusions],
            "links": [lk.to_json() for lk in self.links],
            "facet_order": [list(bits(f)) for f in self.facet_order],
            "recursion": self.recursion.to_json() if self.recursion is not None else None,
            "recursion_map": list(self.recursion_map),
        }


def _lift(mask: int, index_map: Sequence[int]) -> int:
    lifted = 0
    for v in bits(mask):
        lifted |= 1 << index_map[v]
    return lifted


def _link_exclusions(mu: int, earlier: Sequence[int]) -> int:
    """Вершины z ∉ μ, для которых μ ∪ {z} содержит один из более ранних носителей."""
    excluded = 0
    for previous in earlier:
        extra = previous & ~mu
        if popcount(extra) == 1:
            excluded |= extra
    return excluded


def constructive_whisker_shelling(
    G: WhiskerGraph,
    q: int,
    x1: int = 0,
    rng: Optional[random.Random] = None,
    logger: Optional[logging.Logger] = None,
) -> Union[ShellingCertificate, ShellingFailure]:
    """
    Строит сертификат шеллинга MF^q(G) для G = W(H).

    Шаги: порядок (q-1)-паросочетаний G∖x1, различные носители μ_k,
    проверка теневой грани μ_k в Ω_{k-1}, равенство
    link_{Ω_{k-1}}(μ_k) = MF^1(H_k∖S_k), вершинная разложимость звена,
    равенство Ω_α = MF^{q-1}(G∖{x1,y1}) * 2^{x1,y1}, рекурсия и склейка
    порядков; итоговый порядок проверяется напрямую.

    S_k в равенстве для звена — вершины, возвращающие уже удалённый
    носитель (link_exclusions). Буквальное множество одиночных замен S(M_k)
    бывает меньше и сохраняется в сертификате как данные.

    При случайном порядке внутри семейств (rng) μ_k может не быть теневой
    гранью; это возвращается как ShellingFailure(step="shedding").

    Args:
        G: граф с усами
        q: 1 ≤ q ≤ ν(G)
        x1: фиксированная базовая вершина
        rng: генератор для случайного порядка внутри семейств
        logger: логгер

    Returns:
        ShellingCertificate при успехе, ShellingFailure с именем шага иначе

    Raises:
        ValueError: q вне диапазона
    """
    logger = logger or logging.getLogger(__name__)
    graph = G.graph
    nu = matching_number(graph)
    if not 1 <= q <= nu:
        raise ValueError(f"q = {q} вне диапазона 1..{nu}")
    if not 0 <= x1 < G.n:
        raise ValueError(f"x1 = {x1} не базовая вершина")
    n = graph.n_vertices
    omega0 = mf_complex(graph, q)

    def fail(step: str, detail: str) -> ShellingFailure:
        logger.debug(f"❌ Шеллинг MF^{q} (n={G.n}) остановлен на шаге {step}: {detail}")
        return ShellingFailure(q, step, detail)

    # 1. Базовый случай: комплекс независимости
    if q == 1:
        order = vertex_decomposition_order(omega0)
        if order is None:
            return fail("link_vd", "MF^1(G) не вершинно разложим")
        if not verify_shelling_order(omega0, order):
            return fail("facet_order", "порядок из разложения не является шеллингом")
        empty = Matching(())
        return ShellingCertificate(n, 1, x1, (empty,), (0,), (empty,), (0,), (0,), (omega0,), tuple(order))

    # 2. Носители паросочетаний в порядке ≺
    matching_order = MatchingOrder(G, x1, q - 1, rng)
    supports: List[int] = []
    representatives: List[Matching] = []
    for M in matching_order:
        if M.support not in supports:
            supports.append(M.support)
            representatives.append(M)

    # 3. Фильтрация теневыми гранями
    omega = omega0
    swap_masks: List[int] = []
    exclusion_masks: List[int] = []
    links: List[SimplicialComplex] = []
    link_orders: List[List[int]] = []
    for k, (mu, M) in enumerate(zip(supports, representatives), start=1):
        if not omega.contains(mu):
            return fail("support_face", f"μ_{k} = {sorted(bits(mu))} не грань Ω_{k - 1}")
        if not is_shedding_face(omega, mu):
            return fail("shedding", f"μ_{k} = {sorted(bits(mu))} не теневая грань Ω_{k - 1}")
        lk = link(omega, mu)
        excluded = _link_exclusions(mu, supports[: k - 1])
        h_k = even_conn_graph(graph, M)
        assert h_k.vertex_mask is not None
        expected = mf_complex(h_k.restrict(h_k.vertex_mask & ~excluded), 1)
        if lk != expected:
            return fail("link", f"звено μ_{k} не совпало с MF^1(H_{k}∖S_{k})")
        lk_order = vertex_decomposition_order(lk)
        if lk_order is None:
            return fail("link_vd", f"звено μ_{k} не вершинно разложимо")
        swap_masks.append(swap_set(G, x1, M, matching_order).vertices)
        exclusion_masks.append(excluded)
        links.append(lk)
        link_orders.append(lk_order)
        omega = remove_face(omega, mu)

    # 4. Ω_α = MF^{q-1}(G∖{x1,y1}) * 2^{x1,y1}
    y1 = G.partner(x1)
    pair = (1 << x1) | (1 << y1)
    reduced_graph = graph.delete_vertices([x1, y1])
    expected_alpha = join(mf_complex(reduced_graph, q - 1), SimplicialComplex.full_simplex(n, pair))
    if omega != expected_alpha:
        return fail("omega_alpha", "Ω_α не совпал с джойном MF^{q-1}(G∖{x1,y1}) и симплекса")

    # 5. Рекурсия и склейка
    reduced, index_map = G.delete_pair(x1)
    inner = constructive_whisker_shelling(reduced, q - 1, 0, rng, logger)
    if isinstance(inner, ShellingFailure):
        return fail("recursion", f"q-1 = {q - 1}: {inner.step} ({inner.detail})")
    order = [_lift(f, index_map) | pair for f in inner.facet_order]
    for mu, lk_order in reversed(list(zip(supports, link_orders))):
        order.extend(mu | f for f in lk_order)
    if not verify_shelling_order(omega0, order):
        return fail("facet_order", "склеенный порядок не прошёл проверку шеллинга")

    logger.debug(f"✅ Сертификат MF^{q}: {len(supports)} носителей, {len(order)} фасет")
    return ShellingCertificate(
        n,
        q,
        x1,
        tuple(matching_order.matchings),
        tuple(supports),
        tuple(representatives),
        tuple(swap_masks),
        tuple(exclusion_masks),
        tuple(links),
        tuple(order),
        inner,
        index_map,
    )


def independence_vd_via_simplicial(G: Graph) -> bool:
    """
    Для каждого независимого A граф G∖N[A] пуст, без рёбер или имеет
    симплициальную вершину; тогда MF^1(G) вершинно разложим.
    """
    assert G.vertex_mask is not None
    adj = G.adjacency
    checked: Dict[int, bool] = {}

    def has_simplicial_vertex(mask: int) -> bool:
        for v in bits(mask):
            nbrs = adj[v] & mask
            if all((adj[u] | (1 << u)) & nbrs == nbrs for u in bits(nbrs)):
                return True
        return False

    for independent in mf_complex(G, 1).face_set:
        closed = independent
        for a in bits(independent):
            closed |= adj[a]
        rest = G.vertex_mask & ~closed
        if rest in checked:
            if not checked[rest]:
                return False
            continue
        edgeless = all(adj[v] & rest == 0 for v in bits(rest))
        ok = edgeless or has_simplicial_vertex(rest)
        checked[rest] = ok
        if not ok:
            return False
    return True


def is_chordal(G: Graph) -> bool:
    """Хордальность через поиск максимальной мощности (networkx)."""
    if G.order < 4:
        return True
    return nx.is_chordal(G.to_networkx())


def edge_ideal_linear_resolution(T: Graph) -> bool:
    """
    Критерий Фрёберга: I(T) имеет линейную резольвенту тогда и только тогда,
    когда дополнение T хордально.

    Raises:
        ValueError: у T нет рёбер
    """
    if not T.edges:
        raise ValueError("Рёберный идеал графа без рёбер нулевой")
    return is_chordal(complement(T))
