"""
Тесты для гомологий, критерия Райснера и глубины
"""
import pytest

from src.modules.graph_core import generate_family, whisker
from src.modules.homology import (
    FieldTag,
    clear_caches,
    depth,
    depth_by_skeletons,
    is_cohen_macaulay,
    is_sequentially_cm,
    min_facet_size,
    reduced_betti,
    reduced_euler_characteristic,
)
from src.modules.matching_free import mf_complex
from src.modules.simplicial import SimplicialComplex, from_facets

FIELDS = [FieldTag.GF2, FieldTag.RATIONALS]

TWO_TRIANGLES = from_facets(6, [[0, 1, 2], [3, 4, 5]])


@pytest.fixture(autouse=True)
def _fresh_caches():
    clear_caches()
    yield
    clear_caches()


@pytest.mark.parametrize("field", FIELDS)
def test_betti_examples(field):
    boundary = from_facets(3, [[0, 1], [0, 2], [1, 2]])
    assert reduced_betti(boundary, field).to_json() == [0, 0, 1]
    assert reduced_betti(SimplicialComplex.full_simplex(4), field).to_json() == [0, 0, 0, 0, 0]
    assert reduced_betti(from_facets(2, [[0], [1]]), field).rank(0) == 1
    assert reduced_betti(SimplicialComplex.empty(3), field).rank(-1) == 1


def test_betti_void_raises():
    with pytest.raises(ValueError):
        reduced_betti(SimplicialComplex.void(2))


def test_projective_plane_depends_on_field():
    """Шестивершинная RP^2: H̃_1 = Z/2, видна только над GF(2)"""
    rp2 = from_facets(6, [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
        [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5],
    ])
    gf2 = reduced_betti(rp2, FieldTag.GF2)
    rationals = reduced_betti(rp2, FieldTag.RATIONALS)
    assert (gf2.rank(1), gf2.rank(2)) == (1, 1)
    assert (rationals.rank(1), rationals.rank(2)) == (0, 0)
    assert is_cohen_macaulay(rp2, FieldTag.RATIONALS)
    assert not is_cohen_macaulay(rp2, FieldTag.GF2)


@pytest.mark.parametrize("field", FIELDS)
def test_euler_characteristic_matches_betti(field):
    delta = mf_complex(whisker(generate_family("cycle", 4)).graph, 2)
    betti = reduced_betti(delta, field)
    alternating = sum((-1) ** i * betti.rank(i) for i in range(-1, betti.top_dimension + 1))
    assert alternating == reduced_euler_characteristic(delta)


@pytest.mark.parametrize("name,n", [("cycle", 4), ("cycle", 5), ("path", 4), ("star", 4)])
def test_independence_complex_of_whisker_is_cm(name, n):
    delta = mf_complex(whisker(generate_family(name, n)).graph, 1)
    assert is_cohen_macaulay(delta)


@pytest.mark.parametrize("field", FIELDS)
def test_two_triangles(field):
    assert not is_cohen_macaulay(TWO_TRIANGLES, field)
    assert not is_sequentially_cm(TWO_TRIANGLES, field)
    assert depth(TWO_TRIANGLES, field) == 1


def test_k33_independence_complex():
    delta = mf_complex(generate_family("complete_bipartite", 3, 3), 1)
    assert delta.facet_sets() == [[0, 1, 2], [3, 4, 5]]
    assert not is_sequentially_cm(delta)


def test_sequentially_cm_not_pure(wc3):
    delta = mf_complex(wc3.graph, 2)
    assert not is_cohen_macaulay(delta)
    assert is_sequentially_cm(delta)
    assert is_sequentially_cm(SimplicialComplex.full_simplex(4))


def test_depth_examples(wc3):
    assert depth(mf_complex(wc3.graph, 2)) == 3
    assert depth(SimplicialComplex.full_simplex(5)) == 5
    assert depth(from_facets(2, [[0], [1]])) == 1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_depth_second_power_of_cycle(n):
    W = whisker(generate_family("cycle", n))
    assert depth(mf_complex(W.graph, 2)) == n + 1


@pytest.mark.parametrize("n,q", [(3, 2), (4, 2), (4, 3), (5, 3)])
def test_depth_agrees_with_skeletons(n, q):
    delta = mf_complex(whisker(generate_family("cycle", n)).graph, q)
    assert depth(delta) == depth_by_skeletons(delta)


def test_depth_at_half_odd_girth(wc5):
    """q = ⌈m/2⌉ для нечётного m: глубина n и наименьшая фасета размера n"""
    delta = mf_complex(wc5.graph, 3)
    assert min_facet_size(delta) == 5
    assert depth(delta) == 5


def test_min_facet_size():
    assert min_facet_size(from_facets(5, [[0, 1], [2, 3, 4]])) == 2


@pytest.mark.slow
def test_cm_of_third_power_cycle7():
    delta = mf_complex(whisker(generate_family("cycle", 7)).graph, 3)
    assert is_cohen_macaulay(delta)
    assert is_cohen_macaulay(delta, FieldTag.RATIONALS)
