"""
Модуль: симплициальные комплексы, заданные списком фасет.

Грань — битовая маска вершин вселенной 0..vertex_count-1. Пустой комплекс
без фасет (void) и комплекс {∅} различаются: размерность первого — NEG_INFINITY,
второго — -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from .graph_core import NEG_INFINITY, ExtendedInt, bits, mask_of, popcount

Face = int


def _facet_key(mask: int) -> Tuple[int, Tuple[int, ...]]:
    return popcount(mask), tuple(bits(mask))


def _maximal(masks: Iterable[int]) -> Tuple[int, ...]:
    """Убирает дубликаты и вложенные множества, сортирует по размеру и лексикографически."""
    unique = sorted(set(masks), key=popcount, reverse=True)
    kept: List[int] = []
    for mask in unique:
        if not any(mask & ~other == 0 for other in kept):
            kept.append(mask)
    return tuple(sorted(kept, key=_facet_key))


@dataclass(frozen=True)
class SimplicialComplex:
    """
    Комплекс на вселенной вершин 0..vertex_count-1.

    Фасеты нормализуются при создании: удаляются вложенные и повторные,
    порядок — по размеру, затем лексикографический.
    """

    vertex_count: int
    facets: Tuple[Face, ...]

    def __post_init__(self):
        full = (1 << self.vertex_count) - 1
        for facet in self.facets:
            if facet < 0 or facet & ~full:
                raise ValueError(f"Фасета {sorted(bits(facet))} выходит за пределы {self.vertex_count} вершин")
        object.__setattr__(self, "facets", _maximal(self.facets))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SimplicialComplex":
        return cls(n, tuple(masks))

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, ())

    @classmethod
    def empty(cls, n: int) -> "SimplicialComplex":
        """Комплекс {∅}."""
        return cls(n, (0,))

    @classmethod
    def full_simplex(cls, n: int, vertices: Optional[int] = None) -> "SimplicialComplex":
        return cls(n, ((1 << n) - 1 if vertices is None else vertices,))

    @property
    def universe(self) -> int:
        return (1 << self.vertex_count) - 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_simplex(self) -> bool:
        return len(self.facets) == 1

    @cached_property
    def vertex_support(self) -> int:
        support = 0
        for facet in self.facets:
            support |= facet
        return support

    @cached_property
    def face_set(self) -> FrozenSet[Face]:
        """Все грани (перечисляются из фасет по требованию)."""
        faces = set()
        for facet in self.facets:
            sub = facet
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & facet
        return frozenset(faces)

    def contains(self, face: Face) -> bool:
        return any(face & ~facet == 0 for facet in self.facets)

    def facet_sets(self) -> List[List[int]]:
        return [list(bits(facet)) for facet in self.facets]

    def f_vector(self) -> List[int]:
        """Число граней по размерностям -1..dim."""
        if self.is_void:
            return []
        top = max(popcount(f) for f in self.facets)
        counts = [0] * (top + 1)
        for face in self.face_set:
            counts[popcount(face)] += 1
        return counts

    def compressed(self) -> "SimplicialComplex":
        """Тот же комплекс на вершинах 0..k-1 (k — число используемых вершин), порядок сохраняется."""
        position = {v: i for i, v in enumerate(bits(self.vertex_support))}
        masks = []
        for facet in self.facets:
            new = 0
            for v in bits(facet):
                new |= 1 << position[v]
            masks.append(new)
        return SimplicialComplex(len(position), tuple(masks))

    def relabel(self, mapping: Dict[int, int], n: int) -> "SimplicialComplex":
        masks = []
        for facet in self.facets:
            new = 0
            for v in bits(facet):
                new |= 1 << mapping[v]
            masks.append(new)
        return SimplicialComplex(n, tuple(masks))

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.vertex_count, "facets": self.facet_sets()}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SimplicialComplex":
        return from_facets(int(data["n"]), data["facets"])


def from_facets(n: int, sets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """
    Комплекс по списку множеств вершин.

    Raises:
        ValueError: вершина вне диапазона 0..n-1
    """
    masks = []
    for s in sets:
        vertices = list(s)
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"Вершина {v} вне диапазона 0..{n - 1}")
        masks.append(mask_of(vertices))
    return SimplicialComplex(n, tuple(masks))


def dimension(delta: SimplicialComplex) -> ExtendedInt:
    if delta.is_void:
        return NEG_INFINITY
    return max(popcount(f) for f in delta.facets) - 1


def is_pure(delta: SimplicialComplex) -> bool:
    return len({popcount(f) for f in delta.facets}) <= 1


def min_facet_size(delta: SimplicialComplex) -> int:
    if delta.is_void:
        raise ValueError("У пустого (void) комплекса нет фасет")
    return min(popcount(f) for f in delta.facets)


def link(delta: SimplicialComplex, face: Face) -> SimplicialComplex:
    """link_Δ(F) = {F' : F'∩F = ∅, F'∪F ∈ Δ} на той же вселенной."""
    if not delta.contains(face):
        raise ValueError(f"{sorted(bits(face))} не является гранью комплекса")
    return SimplicialComplex(
        delta.vertex_count,
        tuple(f & ~face for f in delta.facets if face & ~f == 0),
    )


def star(delta: SimplicialComplex, face: Face) -> SimplicialComplex:
    """Замкнутая звезда: подкомплекс, порождённый фасетами, содержащими face."""
    if not delta.contains(face):
        raise ValueError(f"{sorted(bits(face))} не является гранью комплекса")
    return SimplicialComplex(delta.vertex_count, tuple(f for f in delta.facets if face & ~f == 0))


def delete_face(delta: SimplicialComplex, face: Face) -> SimplicialComplex:
    """Δ∖F = {H ∈ Δ : H∩F = ∅}."""
    return SimplicialComplex(delta.vertex_count, tuple(f & ~face for f in delta.facets))


def remove_face(delta: SimplicialComplex, face: Face) -> SimplicialComplex:
    """
    Удаление открытой звезды: грани Δ, не содержащие face.

    Для одной вершины совпадает с delete_face; фильтрация по теневым граням
    строится этой операцией.
    """
    masks = []
    for facet in delta.facets:
        if face & ~facet:
            masks.append(facet)
        else:
            masks.extend(facet & ~(1 << v) for v in bits(face))
    return SimplicialComplex(delta.vertex_count, tuple(masks))


def join(
    delta1: SimplicialComplex,
    delta2: SimplicialComplex,
    offset: Optional[int] = None,
) -> SimplicialComplex:
    """
    Джойн Δ1 * Δ2.

    Args:
        delta1, delta2: комплексы
        offset: если задан, вершины Δ2 сдвигаются на offset; иначе комплексы
            должны жить в одной вселенной с непересекающимися вершинами

    Raises:
        ValueError: множества вершин пересекаются
    """
    if offset is not None:
        n = max(delta1.vertex_count, offset + delta2.vertex_count)
        shifted = tuple(f << offset for f in delta2.facets)
    else:
        n = max(delta1.vertex_count, delta2.vertex_count)
        shifted = delta2.facets
    support2 = 0
    for f in shifted:
        support2 |= f
    if delta1.vertex_support & support2:
        raise ValueError("Джойн требует непересекающихся множеств вершин")
    return SimplicialComplex(n, tuple(a | b for a in delta1.facets for b in shifted))


def _subsets_of_size(mask: int, size: int) -> Iterable[int]:
    for combo in itertools.combinations(bits(mask), size):
        yield mask_of(combo)


def skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """Δ^{(i)}: грани размерности не выше i."""
    if i < -1:
        raise ValueError(f"Размерность остова должна быть не меньше -1: {i}")
    masks: List[int] = []
    for facet in delta.facets:
        if popcount(facet) <= i + 1:
            masks.append(facet)
        else:
            masks.extend(_subsets_of_size(facet, i + 1))
    return SimplicialComplex(delta.vertex_count, tuple(masks))


def pure_skeleton(delta: SimplicialComplex, d: int) -> SimplicialComplex:
    """Подкомплекс, порождённый гранями размерности ровно d."""
    dim = dimension(delta)
    if delta.is_void or d < -1 or d > dim:
        raise ValueError(f"Размерность {d} вне диапазона [-1, {dim}]")
    faces = set()
    for facet in delta.facets:
        if popcount(facet) >= d + 1:
            faces.update(_subsets_of_size(facet, d + 1))
    return SimplicialComplex(delta.vertex_count, tuple(faces))


def minimal_nonfaces(delta: SimplicialComplex) -> List[Face]:
    """Минимальные по включению не-грани (носители образующих идеала Стенли–Райснера)."""
    if delta.is_void:
        return [0]
    faces = delta.face_set
    found = set()
    universe = delta.universe
    for face in faces:
        for v in bits(universe & ~face):
            candidate = face | (1 << v)
            if candidate in faces or candidate in found:
                continue
            if all((candidate & ~(1 << u)) in faces for u in bits(face)):
                found.add(candidate)
    return sorted(found, key=_facet_key)


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """
    Δ^∨ = {V∖F : F ∉ Δ}; фасеты — дополнения минимальных не-граней.

    Raises:
        ValueError: для void-комплекса и полного симплекса
    """
    if delta.is_void:
        raise ValueError("Двойственный к void-комплексу не определён")
    if delta.facets == (delta.universe,):
        raise ValueError("Двойственный к полному симплексу не определён")
    universe = delta.universe
    return SimplicialComplex(delta.vertex_count, tuple(universe & ~n for n in minimal_nonfaces(delta)))


def complement_complex(delta: SimplicialComplex) -> SimplicialComplex:
    """⟨V∖F : F — фасета Δ⟩."""
    universe = delta.universe
    return SimplicialComplex(delta.vertex_count, tuple(universe & ~f for f in delta.facets))
