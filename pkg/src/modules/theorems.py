"""
Модуль: ожидаемые значения для MF^q(W(H)) и сверка с вычислениями.

Ожидания — замкнутые формулы (размерность, чистота, граница шеллингуемости,
класс Коэн–Маколея, глубина); там, где утверждения нет, ожидание
отсутствует (None), а вычисленное значение прикладывается как данные.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx

from .even_conn import b_graph, colon_oracle_verify, even_conn_graph, even_connected
from .graph_core import (
    INFINITY,
    ExtendedInt,
    Graph,
    Matching,
    WhiskerGraph,
    attach_whiskers,
    bits,
    enumerate_matchings,
    generate_family,
    girth,
    is_bipartite,
    is_finite,
    is_unicyclic,
    mask_of,
    matching_number,
    matching_number_of,
    odd_girth,
    popcount,
    to_json_value,
    whisker,
)
from .homology import FieldTag, depth, is_cohen_macaulay, is_sequentially_cm
from .matching_free import edge_ideal, mf_complex, stanley_reisner, verify_sr_equality
from .shellability import (
    DEFAULT_SHELLING_CAP,
    CapExceededError,
    ShellabilityStatus,
    ShellingFailure,
    constructive_whisker_shelling,
    edge_ideal_linear_resolution,
    independence_vd_via_simplicial,
    is_shellable_bruteforce,
    is_vertex_decomposable,
)
from .simplicial import (
    SimplicialComplex,
    alexander_dual,
    complement_complex,
    dimension,
    is_pure,
    link,
)

logger = logging.getLogger(__name__)

CHECKS = ("purity", "dim", "shelling", "cm", "depth", "colon", "sr", "facet-complement")

# Ключи ожиданий/результатов в отчёте для каждой проверки
CHECK_KEYS = {
    "purity": "pure",
    "dim": "dim",
    "shelling": "shellable",
    "cm": "cm_class",
    "depth": "depth",
    "colon": "colon",
    "sr": "sr",
    "facet-complement": "facet_complement",
}


class CmClass(Enum):
    CM = "cm"
    SEQ_CM_NOT_PURE = "seq-cm-not-pure"
    PURE_UNKNOWN_CM = "pure-unknown-cm"
    NOT_PURE = "not-pure"
    FULL_SIMPLEX = "full-simplex"


def _half_up(value: int) -> int:
    return (value + 1) // 2


def _check_q(H: Graph, q: int, allow_full: bool = False) -> None:
    # ν(W(H)) = n: усы образуют совершенное паросочетание
    upper = H.order + (1 if allow_full else 0)
    if not 1 <= q <= upper:
        raise ValueError(f"q = {q} вне диапазона 1..{upper}")


def expected_dimension(H: Graph, q: int) -> int:
    _check_q(H, q)
    return H.order + q - 2


def expected_pure(H: Graph, q: int) -> bool:
    """
    Чистота MF^q(W(H)).

    Для двудольного H — всегда; иначе при q < ⌈ℓ/2⌉ или q > n - ⌊ℓ/2⌋.
    """
    _check_q(H, q)
    ell = odd_girth(H)
    if not is_finite(ell):
        return True
    assert isinstance(ell, int)
    return q < _half_up(ell) or q > H.order - ell // 2


def expected_shellable_upper(H: Graph) -> ExtendedInt:
    """⌈m/2⌉ при конечном обхвате, иначе ν(W(H)) = n."""
    m = girth(H)
    if not is_finite(m):
        return H.order
    assert isinstance(m, int)
    return _half_up(m)


def expected_cm_class(H: Graph, q: int) -> CmClass:
    """
    Класс MF^q(W(H)) по обхвату m и нечётному обхвату ℓ.

    Диапазоны, где известна только чистота, дают PURE_UNKNOWN_CM;
    q = ν + 1 — полный симплекс.
    """
    _check_q(H, q, allow_full=True)
    n = H.order
    if q == n + 1:
        return CmClass.FULL_SIMPLEX
    m = girth(H)
    if not is_finite(m):
        return CmClass.CM
    assert isinstance(m, int)
    if is_bipartite(H):
        return CmClass.CM if q <= m // 2 else CmClass.PURE_UNKNOWN_CM

    ell = odd_girth(H)
    assert isinstance(ell, int)
    if m % 2 == 0:
        if q <= m // 2:
            return CmClass.CM
        if q < _half_up(ell):
            return CmClass.PURE_UNKNOWN_CM
        if q <= n - ell // 2:
            return CmClass.NOT_PURE
        return CmClass.PURE_UNKNOWN_CM

    if q < _half_up(m):
        return CmClass.CM
    if q == _half_up(m):
        return CmClass.SEQ_CM_NOT_PURE
    if q <= n - m // 2:
        return CmClass.NOT_PURE
    return CmClass.PURE_UNKNOWN_CM


def expected_depth(H: Graph, q: int) -> Optional[int]:
    """
    depth R/I(W(H))^[q]: n+q-1 при q ≤ ⌊m/2⌋ или m = ∞; n при нечётном m
    и q = ⌈m/2⌉; вне этих диапазонов утверждения нет.
    """
    _check_q(H, q)
    n = H.order
    m = girth(H)
    if not is_finite(m):
        return n + q - 1
    assert isinstance(m, int)
    if q <= m // 2:
        return n + q - 1
    if m % 2 == 1 and q == _half_up(m):
        return n
    return None


def uni_depth_upper_bound(H: Graph, q: int) -> Optional[int]:
    """
    Верхняя оценка n+q-1-⌊m/2⌋ для одноциклического H с нечётным m
    при ⌈m/2⌉ ≤ q ≤ n-⌊m/2⌋.

    Raises:
        ValueError: H не одноциклический
    """
    if not is_unicyclic(H):
        raise ValueError("Оценка глубины определена только для одноциклических графов")
    m = girth(H)
    assert isinstance(m, int)
    n = H.order
    if m % 2 == 0 or not _half_up(m) <= q <= n - m // 2:
        return None
    return n + q - 1 - m // 2


@dataclass(frozen=True)
class WhiskerCycleReport:
    """Гипотетическая глубина для W(C_n), отметка доказанности и вычисленное значение."""

    n: int
    q: int
    conjectured: int
    proved: bool
    computed: Optional[int] = None

    @property
    def consistent(self) -> Optional[bool]:
        if not self.proved or self.computed is None:
            return None
        return self.computed == self.conjectured

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q": self.q,
            "conjectured": self.conjectured,
            "proved": self.proved,
            "computed": self.computed,
        }


def whisker_cycle_report(
    n: int,
    q: int,
    compute: bool = True,
    max_vertices: int = 7,
    field: FieldTag = FieldTag.GF2,
) -> WhiskerCycleReport:
    """
    n+q-1 при q ≤ ⌊n/2⌋, иначе 2q-1; доказано при q ≤ ⌊n/2⌋ и при
    нечётном n, q = ⌈n/2⌉. Глубина вычисляется, если n ≤ max_vertices.
    """
    if n < 3 or not 1 <= q <= n:
        raise ValueError(f"Ожидалось 3 ≤ n и 1 ≤ q ≤ n: n={n}, q={q}")
    if q <= n // 2:
        conjectured = n + q - 1
    else:
        conjectured = 2 * q - 1
    proved = q <= n // 2 or (n % 2 == 1 and q == _half_up(n))
    computed = None
    if compute and n <= max_vertices:
        G = whisker(generate_family("cycle", n))
        computed = depth(mf_complex(G.graph, q), field)
    return WhiskerCycleReport(n, q, conjectured, proved, computed)


def _pair_facets(G: WhiskerGraph) -> List[int]:
    """Дополнения пар {u, v}, подходящих под характеризацию фасет MF^{n-1}."""
    n = G.n
    universe = (1 << (2 * n)) - 1
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            pairs.append((i, j))
            if not G.base.has_edge(i, j):
                pairs.append((n + i, n + j))
    for i in range(n):
        for j in range(n):
            if i != j:
                pairs.append((i, n + j))
    return sorted({universe & ~mask_of(p) for p in pairs})


def facet_complement_check(H: Graph) -> bool:
    """
    Фасеты MF^{n-1}(W(H)) — ровно дополнения пар: двух базовых вершин,
    двух усов y_i, y_j при {x_i, x_j} ∉ E(H) или x_i, y_j при i ≠ j.

    Raises:
        ValueError: обхват H равен 3 или n < 2
    """
    if girth(H) == 3:
        raise ValueError("Характеризация фасет не применима при обхвате 3")
    if H.order < 2:
        raise ValueError("Нужно хотя бы две вершины")
    G = whisker(H)
    delta = mf_complex(G.graph, H.order - 1)
    if not is_pure(delta):
        logger.debug(f"❌ MF^{H.order - 1} не чист")
        return False
    ok = sorted(delta.facets) == _pair_facets(G)
    if not ok:
        logger.debug("❌ Фасеты MF^{n-1} не совпали с характеризацией через пары")
    return ok


def cm_characterizations_check(H: Graph, field: FieldTag = FieldTag.GF2) -> Tuple[bool, bool]:
    """
    Returns:
        tuple: (КМ MF^2 ⇔ H без треугольников, КМ MF^{n-1} ⇔ H — лес)

    Raises:
        ValueError: n < 2
    """
    n = H.order
    if n < 2:
        raise ValueError("Нужно хотя бы две вершины")
    G = whisker(H).graph
    triangle_free = girth(H) != 3
    first = is_cohen_macaulay(mf_complex(G, 2), field) == triangle_free
    acyclic = girth(H) is INFINITY
    second = is_cohen_macaulay(mf_complex(G, n - 1), field) == acyclic
    return first, second


def dual_route_check(H: Graph, field: FieldTag = FieldTag.GF2) -> bool:
    """
    Путь через двойственность для Δ = MF^{n-1}(W(H)):
    T — граф на фасетах Δ^c; I_{Δ^∨} = I(T); Δ КМ ⇔ I(T) имеет линейную
    резольвенту (критерий Фрёберга); дополнение T изоморфно W(H).

    Raises:
        ValueError: обхват 3 или n < 2
    """
    if girth(H) == 3:
        raise ValueError("Путь через двойственность требует обхвата, отличного от 3")
    n = H.order
    if n < 2:
        raise ValueError("Нужно хотя бы две вершины")
    G = whisker(H).graph
    delta = mf_complex(G, n - 1)
    co = complement_complex(delta)
    if any(popcount(f) != 2 for f in co.facets):
        logger.debug("❌ Фасеты Δ^c не являются рёбрами")
        return False
    T = Graph.from_edges(G.n_vertices, [tuple(bits(f)) for f in co.facets])
    dual_ideal = stanley_reisner(alexander_dual(delta))
    if dual_ideal.generators != edge_ideal(T).generators:
        logger.debug("❌ I_{Δ^∨} не совпал с I(T)")
        return False
    if is_cohen_macaulay(delta, field) != edge_ideal_linear_resolution(T):
        logger.debug("❌ Эйгон–Райнер и Фрёберг разошлись")
        return False
    complement_t = nx.complement(T.to_networkx())
    return nx.is_isomorphic(complement_t, G.to_networkx())


@dataclass(frozen=True)
class SharpnessReport:
    """Пример с W(C_6), q = 4: звено {x1..x6} — MF^1(K_{3,3})."""

    link_is_k33: bool
    link_shellability: ShellabilityStatus
    link_seq_cm: bool
    constructive_failed: bool
    failure_step: Optional[str] = None

    @property
    def ok(self) -> bool:
        return (
            self.link_is_k33
            and self.link_shellability is ShellabilityStatus.NOT_SHELLABLE
            and not self.link_seq_cm
            and self.constructive_failed
        )


def sharpness_check(field: FieldTag = FieldTag.GF2) -> SharpnessReport:
    """Граница ⌈m/2⌉ точна: MF^4(W(C_6)) не шеллингуем."""
    G = whisker(generate_family("cycle", 6))
    graph = G.graph
    delta = mf_complex(graph, 4)
    base = mask_of(range(6))
    lk = link(delta, base)
    odd_side = [6, 8, 10]
    even_side = [7, 9, 11]
    k33 = Graph(
        graph.n_vertices,
        frozenset((a, b) for a in odd_side for b in even_side),
        graph.labels,
        mask_of(odd_side + even_side),
    )
    link_is_k33 = lk == mf_complex(k33, 1)
    status = is_shellable_bruteforce(lk.compressed()).status
    seq_cm = is_sequentially_cm(lk, field)
    attempt = constructive_whisker_shelling(G, 4)
    failed = isinstance(attempt, ShellingFailure)
    return SharpnessReport(
        link_is_k33,
        status,
        seq_cm,
        failed,
        attempt.step if isinstance(attempt, ShellingFailure) else None,
    )


@dataclass(frozen=True)
class AttachmentReport:
    """
    C_5 с t усами на вершинном покрытии {x1, x3, x5}, q = 2.

    link_* относятся к грани F = {α_1..α_t, x3, x4}: её звено сравнивается
    с MF^1(K_{t+1,t+1}) и проверяется как данные. Звено F на деле комплекс
    независимости звезды с центром x5, поэтому опровержение опирается на
    witness_face: грань с не последовательно КМ звеном (свойство
    наследуется звеньями) или на полную проверку комплекса.
    """

    t: int
    link_is_bipartite_complete: bool
    link_seq_cm: bool
    witness_face: Optional[Tuple[int, ...]]
    complex_seq_cm: Optional[bool]

    @property
    def ok(self) -> bool:
        if self.complex_seq_cm is True:
            return False
        return self.complex_seq_cm is False or self.witness_face is not None


def seq_cm_link_witness(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> Optional[int]:
    """
    Непустая грань с не последовательно КМ звеном; грани перебираются от
    больших к меньшим. None, если все звенья непустых граней последовательно КМ.
    """
    faces = sorted(
        (f for f in delta.face_set if f and f not in delta.facets),
        key=lambda f: (-popcount(f), f),
    )
    for face in faces:
        if not is_sequentially_cm(link(delta, face).compressed(), field):
            return face
    return None


def whisker_attachment_check(
    t: int = 1,
    field: FieldTag = FieldTag.GF2,
    full_check_limit: int = 1,
) -> AttachmentReport:
    """
    Навешивание усов на вершинное покрытие не сохраняет последовательную
    КМ для q = 2. Полная проверка MF^2 выполняется при t ≤ full_check_limit.
    """
    H = generate_family("cycle", 5)
    graph, leaves = attach_whiskers(H, [0, 2, 4], t)
    delta = mf_complex(graph, 2)
    face = mask_of(leaves[0]) | mask_of([2, 3])
    lk = link(delta, face)
    left = [4, *leaves[4]]
    right = [1, *leaves[2]]
    K = Graph(
        graph.n_vertices,
        frozenset((a, b) for a in left for b in right),
        None,
        mask_of(left + right),
    )
    link_ok = lk == mf_complex(K, 1)
    link_scm = is_sequentially_cm(lk, field)
    witness = seq_cm_link_witness(delta, field)
    full = is_sequentially_cm(delta, field) if t <= full_check_limit else None
    return AttachmentReport(
        t,
        link_ok,
        link_scm,
        tuple(bits(witness)) if witness is not None else None,
        full,
    )


def check_leaf_removal(G: Graph, M: Matching) -> bool:
    """
    Для каждого ребра {x, y} ∈ M с N(x) = {y}:
    G^M = (G∖{x, y})^{M∖{x, y}}.

    Raises:
        ValueError: в M нет ребра с листом
    """
    leaf_edges = [e for e in M if G.degree(e[0]) == 1 or G.degree(e[1]) == 1]
    if not leaf_edges:
        raise ValueError("В паросочетании нет ребра, инцидентного листу")
    left = even_conn_graph(G, M)
    for edge in leaf_edges:
        right = even_conn_graph(G.delete_vertices(edge), M.without(edge))
        if left != right:
            logger.debug(f"❌ Удаление листа {edge} изменило G^M")
            return False
    return True


def check_vertex_deletion(G: Graph, M: Matching, x: int) -> bool:
    """
    G^M∖x = (G∖x)^M для x ∉ Supp(M).

    Raises:
        ValueError: x в носителе M или вне графа
    """
    assert G.vertex_mask is not None
    if (M.support >> x) & 1 or not (G.vertex_mask >> x) & 1:
        raise ValueError(f"Вершина {x} должна лежать в G вне носителя паросочетания")
    return even_conn_graph(G, M).delete_vertices([x]) == even_conn_graph(G.delete_vertices([x]), M)


def check_even_extension(G: Graph, q: int, subsets: bool = False) -> bool:
    """
    Для граней f с ν(G[f]) = q-1 и вершин, по одной добавимых к f:
    {x, y} ∪ f ∉ MF^q ⇔ {x, y} ∈ E(G) или x ~_M y (M — любое (q-1)-паросочетание в f).
    При subsets=True то же для произвольных S: S ∪ f ∉ MF^q ⇔ в S есть такая пара.
    """
    if q < 1:
        raise ValueError(f"q должно быть не меньше 1: {q}")
    delta = mf_complex(G, q)
    assert G.vertex_mask is not None
    for f in sorted(delta.face_set):
        if matching_number_of(G, f) != q - 1:
            continue
        addable = [v for v in bits(G.vertex_mask & ~f) if delta.contains(f | (1 << v))]
        for M in enumerate_matchings(G.restrict(f), q - 1):
            def related(a: int, b: int) -> bool:
                return G.has_edge(a, b) or even_connected(G, M, a, b) is not None

            pairs = {
                (a, b): related(a, b)
                for i, a in enumerate(addable)
                for b in addable[i + 1:]
            }
            for (a, b), rel in pairs.items():
                if delta.contains(f | (1 << a) | (1 << b)) == rel:
                    logger.debug(f"❌ Пара ({a}, {b}) при f = {sorted(bits(f))} нарушает эквивалентность")
                    return False
            if not subsets:
                continue
            for size in range(3, len(addable) + 1):
                for combo in itertools.combinations(addable, size):
                    linked = any(pairs[(a, b)] for i, a in enumerate(combo) for b in combo[i + 1:])
                    if delta.contains(f | mask_of(combo)) == linked:
                        logger.debug(f"❌ Множество {combo} при f = {sorted(bits(f))} нарушает эквивалентность")
                        return False
    return True


def check_b_graph_vd(G: WhiskerGraph, M: Matching) -> bool:
    """
    При |M| < m/2 (или m = ∞): MF^1(G^M) вершинно разложим, это же даёт
    критерий через симплициальные вершины, и MF^1(B_G(M)) вершинно
    разложим, если все рёбра M из H.

    Raises:
        ValueError: |M| вне диапазона теоремы
    """
    m = girth(G.base)
    if is_finite(m):
        assert isinstance(m, int)
        if not 2 * len(M) < m:
            raise ValueError(f"|M| = {len(M)} не меньше m/2 = {m / 2}")
    reduced = even_conn_graph(G.graph, M)
    if not is_vertex_decomposable(mf_complex(reduced, 1)):
        return False
    if not independence_vd_via_simplicial(reduced):
        return False
    if all(G.is_base_edge(e) for e in M):
        return is_vertex_decomposable(mf_complex(b_graph(G, M), 1))
    return True


@dataclass(frozen=True)
class VerificationCase:
    """Граф для прогона: основание H (или готовый G при whiskered=False) и ожидания из файла."""

    name: str
    graph: Graph
    whiskered: bool = True
    expectations: Dict[int, Dict[str, Any]] = field(default_factory=dict, compare=False)

    @property
    def target(self) -> Graph:
        return whisker(self.graph).graph if self.whiskered else self.graph


@dataclass(frozen=True)
class VerificationOptions:
    checks: Tuple[str, ...] = CHECKS
    fields: Tuple[FieldTag, ...] = (FieldTag.GF2,)
    shelling_cap: int = DEFAULT_SHELLING_CAP
    colon_max_matching: int = 3
    max_complex_vertices: int = 20
    include_timing: bool = False


@dataclass
class VerificationReport:
    """
    Строка сверки для пары (граф, q).

    agree[key] — None там, где ожидания нет; indeterminate — проверки с
    ожиданием, на которые перебор не дал ответа.
    """

    graph: str
    n: int
    m: ExtendedInt
    ell: ExtendedInt
    nu: int
    q: int
    expected: Dict[str, Any] = field(default_factory=dict)
    computed: Dict[str, Any] = field(default_factory=dict)
    agree: Dict[str, Optional[bool]] = field(default_factory=dict)
    indeterminate: List[str] = field(default_factory=list)
    elapsed_ms: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(flag is not False for flag in self.agree.values())

    @property
    def disagreements(self) -> List[str]:
        return [key for key, flag in self.agree.items() if flag is False]

    def to_json(self) -> Dict[str, Any]:
        return {
            "graph": self.graph,
            "n": self.n,
            "m": to_json_value(self.m),
            "ell": to_json_value(self.ell),
            "nu": self.nu,
            "q": self.q,
            "expected": self.expected,
            "computed": self.computed,
            "agree": self.agree,
            "elapsed_ms": self.elapsed_ms,
        }

    def csv_rows(self) -> List[Dict[str, Any]]:
        head = {
            "graph": self.graph,
            "n": self.n,
            "m": to_json_value(self.m),
            "ell": to_json_value(self.ell),
            "nu": self.nu,
            "q": self.q,
        }
        rows = []
        for key in self.computed:
            rows.append({
                **head,
                "check": key,
                "expected": self.expected.get(key),
                "computed": self.computed[key],
                "agree": self.agree.get(key),
                "elapsed_ms": self.elapsed_ms,
            })
        return rows


def _normalize_shellable(value: Any) -> Optional[str]:
    if value is None:
        return None
    if isinstance(value, bool):
        return (ShellabilityStatus.SHELLABLE if value else ShellabilityStatus.NOT_SHELLABLE).value
    return ShellabilityStatus(str(value)).value


def _theorem_expectations(H: Graph, q: int) -> Dict[str, Any]:
    upper = expected_shellable_upper(H)
    shellable = ShellabilityStatus.SHELLABLE.value if q <= upper else None
    return {
        "pure": expected_pure(H, q),
        "dim": expected_dimension(H, q),
        "shellable": shellable,
        "cm_class": expected_cm_class(H, q).value,
        "depth": expected_depth(H, q),
    }


def _cm_agreement(expected: Optional[str], computed: Dict[str, Any]) -> Optional[bool]:
    if expected is None:
        return None
    cls = CmClass(expected)
    if cls is CmClass.FULL_SIMPLEX:
        return computed["simplex"]
    if cls is CmClass.CM:
        return all(computed["cm"].values())
    if cls is CmClass.SEQ_CM_NOT_PURE:
        return all(computed["seq_cm"].values()) and not computed["pure"]
    if cls is CmClass.NOT_PURE:
        return not computed["pure"]
    return computed["pure"]


def _compute_shelling(
    case: VerificationCase,
    G: Graph,
    delta: SimplicialComplex,
    q: int,
    options: VerificationOptions,
    log: logging.Logger,
) -> ShellabilityStatus:
    if case.whiskered and 1 <= q <= case.graph.order:
        attempt = constructive_whisker_shelling(whisker(case.graph), q, logger=log)
        if not isinstance(attempt, ShellingFailure):
            return ShellabilityStatus.SHELLABLE
        log.debug(f"Конструктивный шеллинг не построен ({attempt.step}), переход к перебору")
    return is_shellable_bruteforce(delta, options.shelling_cap).status


def _colon_all(G: Graph, q: int, options: VerificationOptions) -> Optional[bool]:
    size = q - 1
    if size < 1 or size > options.colon_max_matching:
        return None
    return all(colon_oracle_verify(G, M) for M in enumerate_matchings(G, size))


def verify_case(
    case: VerificationCase,
    q: int,
    options: Optional[VerificationOptions] = None,
    logger: Optional[logging.Logger] = None,
) -> VerificationReport:
    """
    Считает выбранные проверки для MF^q(G) и сверяет их с ожиданиями.

    Ожидания берутся из теорем (для графов с усами) и перекрываются
    значениями из файла ожиданий.

    Raises:
        CapExceededError: комплекс слишком велик для перебора подмножеств
        ValueError: q < 1 или неизвестная проверка
    """
    options = options or VerificationOptions()
    log = logger or logging.getLogger(__name__)
    unknown = set(options.checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"Неизвестные проверки: {sorted(unknown)}")
    if q < 1:
        raise ValueError(f"q должно быть не меньше 1: {q}")

    started = time.perf_counter()
    H = case.graph
    G = case.target
    if G.order > options.max_complex_vertices:
        raise CapExceededError(
            f"{case.name}: {G.order} вершин больше предела {options.max_complex_vertices}"
        )

    nu = matching_number(G)
    report = VerificationReport(case.name, H.order, girth(H), odd_girth(H), nu, q)
    expected: Dict[str, Any] = {}
    if case.whiskered and q <= H.order:
        expected.update(_theorem_expectations(H, q))
    elif case.whiskered and q == H.order + 1:
        expected["cm_class"] = CmClass.FULL_SIMPLEX.value
    overrides = dict(case.expectations.get(q, {}))
    if "shellable" in overrides:
        overrides["shellable"] = _normalize_shellable(overrides["shellable"])
    expected.update(overrides)

    delta = mf_complex(G, q)
    fields = options.fields
    for check in options.checks:
        key = CHECK_KEYS[check]
        want = expected.get(key)

        if check == "purity":
            got: Any = is_pure(delta)
            report.agree[key] = None if want is None else got == want
        elif check == "dim":
            got = to_json_value(dimension(delta))
            report.agree[key] = None if want is None else got == want
        elif check == "shelling":
            status = _compute_shelling(case, G, delta, q, options, log)
            got = status.value
            if want is None:
                report.agree[key] = None
            elif status is ShellabilityStatus.INDETERMINATE:
                report.agree[key] = None
                report.indeterminate.append(key)
            else:
                report.agree[key] = got == want
        elif check == "cm":
            pure = is_pure(delta)
            cm = {f.value: is_cohen_macaulay(delta, f) for f in fields}
            seq = {f.value: cm[f.value] or is_sequentially_cm(delta, f) for f in fields}
            got = {"pure": pure, "simplex": delta.is_simplex, "cm": cm, "seq_cm": seq}
            report.agree[key] = _cm_agreement(want, got)
        elif check == "depth":
            got = {f.value: depth(delta, f) for f in fields}
            report.agree[key] = None if want is None else all(v == want for v in got.values())
        elif check == "colon":
            got = _colon_all(G, q, options)
            want = True if got is not None else None
            report.agree[key] = got
        elif check == "sr":
            got = verify_sr_equality(G, q)
            want = True
            report.agree[key] = got
        else:
            applicable = case.whiskered and H.order >= 2 and q == H.order - 1 and girth(H) != 3
            got = facet_complement_check(H) if applicable else None
            want = True if applicable else None
            report.agree[key] = got

        report.expected[key] = want
        report.computed[key] = got

    if options.include_timing:
        report.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    marker = "✅" if report.ok and not report.indeterminate else "❌"
    log.info(f"{marker} {case.name} q={q}: расхождений {len(report.disagreements)}, без ответа {len(report.indeterminate)}")
    return report
