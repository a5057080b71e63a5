"""
Тесты для теоретических ожиданий, структурных проверок и сверки
"""
import pytest

from src.modules.graph_core import INFINITY, Graph, Matching, attach_whiskers, generate_family, mask_of, whisker
from src.modules.homology import is_sequentially_cm
from src.modules.matching_free import mf_complex
from src.modules.shellability import CapExceededError, ShellabilityStatus
from src.modules.theorems import (
    CHECKS,
    CmClass,
    VerificationCase,
    VerificationOptions,
    check_b_graph_vd,
    check_even_extension,
    check_leaf_removal,
    check_vertex_deletion,
    cm_characterizations_check,
    dual_route_check,
    expected_cm_class,
    expected_depth,
    expected_dimension,
    expected_pure,
    expected_shellable_upper,
    facet_complement_check,
    seq_cm_link_witness,
    sharpness_check,
    uni_depth_upper_bound,
    verify_case,
    whisker_attachment_check,
    whisker_cycle_report,
)
from src.modules.simplicial import SimplicialComplex, from_facets, link


def cycle(n):
    return generate_family("cycle", n)


# C4 и пятиугольник с общим ребром: m = 4, ℓ = 5, n = 7
SQUARE_PENTAGON = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 1)])


def test_expected_dimension():
    assert expected_dimension(cycle(5), 3) == 6
    with pytest.raises(ValueError):
        expected_dimension(cycle(5), 6)


def test_expected_pure():
    assert expected_pure(cycle(5), 2)
    assert not expected_pure(cycle(5), 3)
    assert expected_pure(cycle(5), 4)
    assert all(expected_pure(cycle(6), q) for q in range(1, 7))


def test_expected_shellable_upper():
    assert expected_shellable_upper(cycle(6)) == 3
    assert expected_shellable_upper(cycle(3)) == 2
    assert expected_shellable_upper(generate_family("path", 5)) == 5


@pytest.mark.parametrize("H,q,expected", [
    (cycle(7), 3, CmClass.CM),
    (cycle(7), 4, CmClass.SEQ_CM_NOT_PURE),
    (cycle(7), 5, CmClass.PURE_UNKNOWN_CM),
    (cycle(3), 2, CmClass.SEQ_CM_NOT_PURE),
    (cycle(5), 3, CmClass.SEQ_CM_NOT_PURE),
    (cycle(5), 6, CmClass.FULL_SIMPLEX),
    (cycle(6), 3, CmClass.CM),
    (cycle(6), 5, CmClass.PURE_UNKNOWN_CM),
    (generate_family("path", 4), 4, CmClass.CM),
    (SQUARE_PENTAGON, 2, CmClass.CM),
    (SQUARE_PENTAGON, 3, CmClass.NOT_PURE),
    (SQUARE_PENTAGON, 5, CmClass.NOT_PURE),
    (SQUARE_PENTAGON, 6, CmClass.PURE_UNKNOWN_CM),
])
def test_expected_cm_class(H, q, expected):
    assert expected_cm_class(H, q) is expected


def test_expected_cm_class_range():
    with pytest.raises(ValueError):
        expected_cm_class(cycle(5), 7)


def test_expected_depth():
    assert expected_depth(cycle(7), 3) == 9
    assert expected_depth(cycle(7), 4) == 7
    assert expected_depth(cycle(7), 5) is None
    assert expected_depth(cycle(6), 4) is None
    assert [expected_depth(generate_family("path", 5), q) for q in range(1, 6)] == [5, 6, 7, 8, 9]


def test_uni_depth_upper_bound():
    assert uni_depth_upper_bound(cycle(5), 3) == 5
    assert uni_depth_upper_bound(cycle(5), 2) is None
    assert uni_depth_upper_bound(cycle(6), 3) is None
    with pytest.raises(ValueError):
        uni_depth_upper_bound(generate_family("path", 5), 3)


def test_whisker_cycle_report():
    assert whisker_cycle_report(5, 3, compute=False).to_json() == {
        "n": 5, "q": 3, "conjectured": 5, "proved": True, "computed": None,
    }
    report = whisker_cycle_report(6, 3, compute=False)
    assert (report.conjectured, report.proved) == (8, True)
    report = whisker_cycle_report(6, 5, compute=False)
    assert (report.conjectured, report.proved) == (9, False)
    assert report.consistent is None
    with pytest.raises(ValueError):
        whisker_cycle_report(2, 1)


def test_whisker_cycle_report_computed():
    report = whisker_cycle_report(5, 3)
    assert report.computed == 5
    assert report.consistent is True
    assert whisker_cycle_report(9, 2, max_vertices=7).computed is None


@pytest.mark.parametrize("H", [cycle(4), cycle(5), generate_family("path", 3), generate_family("star", 4)])
def test_facet_complement(H):
    assert facet_complement_check(H)


def test_facet_complement_rejects_triangle():
    with pytest.raises(ValueError):
        facet_complement_check(cycle(3))


@pytest.mark.parametrize("H", [cycle(3), cycle(4), cycle(5), generate_family("path", 4)])
def test_cm_characterizations(H):
    assert cm_characterizations_check(H) == (True, True)


@pytest.mark.parametrize("H", [cycle(4), cycle(5), generate_family("path", 4)])
def test_dual_route(H):
    assert dual_route_check(H)


def test_dual_route_rejects_triangle():
    with pytest.raises(ValueError):
        dual_route_check(cycle(3))


def test_whisker_attachment():
    """Звено грани {α, x3, x4} последовательно КМ, но весь MF^2 — нет"""
    report = whisker_attachment_check(t=1)
    assert not report.link_is_bipartite_complete
    assert report.link_seq_cm
    assert report.complex_seq_cm is False
    assert report.ok


def test_whisker_attachment_witness_link():
    report = whisker_attachment_check(t=1)
    if report.witness_face is not None:
        graph, _ = attach_whiskers(cycle(5), [0, 2, 4], 1)
        delta = mf_complex(graph, 2)
        assert not is_sequentially_cm(link(delta, mask_of(report.witness_face)))


def test_seq_cm_link_witness_on_two_squares():
    """Звено вершины 0 — два непересекающихся ребра"""
    delta = from_facets(5, [[0, 1, 2], [0, 3, 4]])
    assert seq_cm_link_witness(delta) == mask_of([0])
    assert seq_cm_link_witness(SimplicialComplex.full_simplex(3)) is None


@pytest.mark.slow
def test_whisker_attachment_two_whiskers():
    report = whisker_attachment_check(t=2, full_check_limit=2)
    assert not report.link_is_bipartite_complete
    assert report.complex_seq_cm is False
    assert report.ok


@pytest.mark.slow
def test_whisker_attachment_without_full_check():
    report = whisker_attachment_check(t=2, full_check_limit=1)
    assert report.complex_seq_cm is None
    assert report.ok == (report.witness_face is not None)


@pytest.mark.slow
def test_sharpness():
    report = sharpness_check()
    assert report.link_is_k33
    assert report.link_shellability is ShellabilityStatus.NOT_SHELLABLE
    assert report.constructive_failed
    assert report.ok


def test_leaf_removal():
    W = whisker(cycle(5)).graph
    assert check_leaf_removal(W, Matching.of([(0, 1), (4, 9)]))
    with pytest.raises(ValueError):
        check_leaf_removal(W, Matching.of([(0, 1)]))


def test_vertex_deletion():
    W = whisker(cycle(5)).graph
    M = Matching.of([(0, 1), (2, 3)])
    assert all(check_vertex_deletion(W, M, x) for x in (4, 5, 9))
    with pytest.raises(ValueError):
        check_vertex_deletion(W, M, 0)


@pytest.mark.parametrize("name,n,q", [("cycle", 3, 2), ("cycle", 4, 2), ("cycle", 5, 3), ("path", 4, 3)])
def test_even_extension(name, n, q):
    assert check_even_extension(whisker(generate_family(name, n)).graph, q)


def test_even_extension_subsets():
    assert check_even_extension(whisker(cycle(4)).graph, 2, subsets=True)


def test_b_graph_vd():
    W = whisker(cycle(5))
    assert check_b_graph_vd(W, Matching.of([(0, 1)]))
    assert check_b_graph_vd(W, Matching.of([(0, 1), (2, 3)]))
    assert check_b_graph_vd(W, Matching.of([(0, 1), (2, 7)]))
    with pytest.raises(ValueError):
        check_b_graph_vd(W, Matching.of([(0, 1), (2, 3), (4, 9)]))


def test_verify_case_agrees():
    case = VerificationCase("C5", cycle(5))
    report = verify_case(case, 2)
    assert report.ok
    assert report.indeterminate == []
    assert report.computed["dim"] == 5
    assert report.computed["depth"] == {"gf2": 6}
    assert report.computed["shellable"] == "shellable"
    assert report.expected["cm_class"] == "cm"
    assert report.agree["facet_complement"] is None
    assert set(report.computed) == {"pure", "dim", "shellable", "cm_class", "depth", "colon", "sr", "facet_complement"}


def test_verify_case_json_layout():
    report = verify_case(VerificationCase("P3", generate_family("path", 3)), 1, VerificationOptions(checks=("dim",)))
    data = report.to_json()
    assert list(data) == ["graph", "n", "m", "ell", "nu", "q", "expected", "computed", "agree", "elapsed_ms"]
    assert data["m"] == "inf"
    assert data["elapsed_ms"] is None
    assert len(report.csv_rows()) == 1


def test_verify_case_timing():
    options = VerificationOptions(checks=("purity",), include_timing=True)
    report = verify_case(VerificationCase("C4", cycle(4)), 2, options)
    assert report.elapsed_ms is not None


def test_verify_case_nonpure_classes():
    options = VerificationOptions(checks=("purity", "cm", "depth"))
    report = verify_case(VerificationCase("C5", cycle(5)), 3, options)
    assert report.ok
    assert report.computed["pure"] is False
    assert report.computed["depth"] == {"gf2": 5}


def test_verify_case_file_override_disagrees():
    case = VerificationCase("C5", cycle(5), expectations={2: {"dim": 99}})
    report = verify_case(case, 2, VerificationOptions(checks=("dim",)))
    assert not report.ok
    assert report.disagreements == ["dim"]


def test_verify_case_indeterminate_shelling():
    case = VerificationCase(
        "K33",
        generate_family("complete_bipartite", 3, 3),
        whiskered=False,
        expectations={1: {"shellable": True}},
    )
    report = verify_case(case, 1, VerificationOptions(checks=("shelling",), shelling_cap=1))
    assert report.computed["shellable"] == "indeterminate"
    assert report.agree["shellable"] is None
    assert report.indeterminate == ["shellable"]


def test_verify_case_raw_graph_without_expectations():
    case = VerificationCase("K33", generate_family("complete_bipartite", 3, 3), whiskered=False)
    report = verify_case(case, 1, VerificationOptions(checks=("shelling", "sr")))
    assert report.computed["shellable"] == "not-shellable"
    assert report.agree["shellable"] is None
    assert report.agree["sr"] is True
    assert report.m == 4 and report.ell is INFINITY


def test_verify_case_full_simplex():
    report = verify_case(VerificationCase("C4", cycle(4)), 5, VerificationOptions(checks=("cm",)))
    assert report.expected["cm_class"] == "full-simplex"
    assert report.agree["cm_class"] is True


def test_verify_case_errors():
    case = VerificationCase("C5", cycle(5))
    with pytest.raises(CapExceededError):
        verify_case(case, 2, VerificationOptions(max_complex_vertices=8))
    with pytest.raises(ValueError):
        verify_case(case, 2, VerificationOptions(checks=("magic",)))
    with pytest.raises(ValueError):
        verify_case(case, 0)


def test_checks_constant():
    assert CHECKS[0] == "purity" and "facet-complement" in CHECKS
