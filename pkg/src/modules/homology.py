"""
Модуль: приведённые гомологии над полем, критерий Райснера,
последовательная Коэн–Маколеевость и глубина через остовы.

Над GF(2) столбцы граничной матрицы — целые битовые маски, ранг считается
исключением по старшему биту. Над Q используется DomainMatrix из sympy
(точная арифметика, разреженное хранение).
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .graph_core import INFINITY, ExtendedInt, bits, popcount
from .simplicial import (
    SimplicialComplex,
    dimension,
    is_pure,
    link,
    min_facet_size,
    pure_skeleton,
    skeleton,
)

__all__ = [
    "BettiVector",
    "FieldTag",
    "clear_caches",
    "depth",
    "depth_by_skeletons",
    "is_cohen_macaulay",
    "is_sequentially_cm",
    "min_facet_size",
    "reduced_betti",
    "reduced_euler_characteristic",
]

logger = logging.getLogger(__name__)


class FieldTag(Enum):
    GF2 = "gf2"
    RATIONALS = "rationals"


@dataclass(frozen=True)
class BettiVector:
    """Ранги H̃_i для i = -1..dim; ranks[0] соответствует i = -1."""

    ranks: Tuple[int, ...]

    def rank(self, i: int) -> int:
        idx = i + 1
        return self.ranks[idx] if 0 <= idx < len(self.ranks) else 0

    @property
    def top_dimension(self) -> int:
        return len(self.ranks) - 2

    def first_nonvanishing_below(self, d: int) -> Optional[int]:
        """Наименьшее i < d с H̃_i ≠ 0."""
        for i in range(-1, d):
            if self.rank(i):
                return i
        return None

    def to_json(self) -> List[int]:
        return list(self.ranks)


def _faces_by_size(delta: SimplicialComplex) -> List[List[int]]:
    top = max(popcount(f) for f in delta.facets)
    groups: List[List[int]] = [[] for _ in range(top + 1)]
    for face in delta.face_set:
        groups[popcount(face)].append(face)
    for group in groups:
        group.sort()
    return groups


def _rank_gf2(columns: List[int]) -> int:
    pivots: Dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            high = col.bit_length() - 1
            pivot = pivots.get(high)
            if pivot is None:
                pivots[high] = col
                rank += 1
                break
            col ^= pivot
    return rank


def _boundary_rank(lower: List[int], upper: List[int], field: FieldTag) -> int:
    """Ранг ∂: C(upper) → C(lower), где upper — грани на одну вершину больше."""
    if not lower or not upper:
        return 0
    index = {face: i for i, face in enumerate(lower)}
    if field is FieldTag.GF2:
        columns = []
        for face in upper:
            col = 0
            for v in bits(face):
                col ^= 1 << index[face & ~(1 << v)]
            columns.append(col)
        return _rank_gf2(columns)

    rows: Dict[int, Dict[int, object]] = defaultdict(dict)
    for j, face in enumerate(upper):
        for position, v in enumerate(bits(face)):
            rows[index[face & ~(1 << v)]][j] = ZZ(-1 if position % 2 else 1)
    matrix = DomainMatrix(dict(rows), (len(lower), len(upper)), ZZ)
    return int(matrix.rank())


@lru_cache(maxsize=1 << 16)
def _betti(delta: SimplicialComplex, field: FieldTag) -> BettiVector:
    groups = _faces_by_size(delta)
    counts = [len(g) for g in groups]
    boundary = [0] + [_boundary_rank(groups[s - 1], groups[s], field) for s in range(1, len(groups))]
    boundary.append(0)
    ranks = tuple(counts[s] - boundary[s] - boundary[s + 1] for s in range(len(groups)))
    return BettiVector(ranks)


def reduced_betti(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> BettiVector:
    """
    Ранги приведённых гомологий H̃_i(Δ; K), -1 ≤ i ≤ dim Δ.

    Raises:
        ValueError: для void-комплекса
    """
    if delta.is_void:
        raise ValueError("Гомологии void-комплекса не определены")
    return _betti(delta.compressed(), field)


def reduced_euler_characteristic(delta: SimplicialComplex) -> int:
    """Σ (-1)^i f_i по i ≥ -1."""
    return sum((-1) ** (size - 1) * count for size, count in enumerate(delta.f_vector()))


@lru_cache(maxsize=1 << 16)
def _depth_obstruction(delta: SimplicialComplex, field: FieldTag) -> ExtendedInt:
    """
    min по граням σ величины |σ| + a(σ) + 1, где a(σ) — наименьшее
    i < dim link(σ) с H̃_i(link σ) ≠ 0; INFINITY, если таких граней нет.

    Звено грани σ ∪ {v} равно звену σ в link(v), поэтому достаточно
    спуститься по звеньям вершин.
    """
    betti = _betti(delta, field)
    best: ExtendedInt = INFINITY
    bad = betti.first_nonvanishing_below(betti.top_dimension)
    if bad is not None:
        best = bad + 1
    for v in bits(delta.vertex_support):
        below = _depth_obstruction(link(delta, 1 << v).compressed(), field)
        if below is not INFINITY and below + 1 < best:
            best = below + 1
    return best


def is_cohen_macaulay(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> bool:
    """Критерий Райснера: H̃_i(link σ) = 0 для всех σ ∈ Δ и i < dim link σ."""
    if delta.is_void:
        raise ValueError("Критерий Райснера не применим к void-комплексу")
    if not is_pure(delta):
        return False
    return _depth_obstruction(delta.compressed(), field) is INFINITY


def is_sequentially_cm(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> bool:
    """Все чистые d-остовы, 0 ≤ d ≤ dim Δ, Коэн–Маколеевы."""
    if delta.is_void:
        raise ValueError("Последовательная КМ не определена для void-комплекса")
    dim = dimension(delta)
    assert isinstance(dim, int)
    return all(is_cohen_macaulay(pure_skeleton(delta, d), field) for d in range(dim + 1))


def depth(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> int:
    """
    depth R/I_Δ = 1 + max{i : Δ^{(i)} КМ}.

    Звено σ в остове Δ^{(i)} — остов (link σ)^{(i-|σ|)}, а гомологии остова
    ниже его размерности совпадают с гомологиями звена. Отсюда
    depth = min(dim Δ + 1, min_σ (|σ| + a(σ) + 1)).
    """
    if delta.is_void:
        raise ValueError("Глубина void-комплекса не определена")
    dim = dimension(delta)
    assert isinstance(dim, int)
    obstruction = _depth_obstruction(delta.compressed(), field)
    if obstruction is INFINITY:
        return dim + 1
    assert isinstance(obstruction, int)
    return min(dim + 1, obstruction)


def depth_by_skeletons(delta: SimplicialComplex, field: FieldTag = FieldTag.GF2) -> int:
    """Буквальная формула через остовы; медленная, служит оракулом."""
    if delta.is_void:
        raise ValueError("Глубина void-комплекса не определена")
    dim = dimension(delta)
    assert isinstance(dim, int)
    for i in range(dim, -2, -1):
        if is_cohen_macaulay(skeleton(delta, i), field):
            return i + 1
    return 0


def clear_caches() -> None:
    _betti.cache_clear()
    _depth_obstruction.cache_clear()
