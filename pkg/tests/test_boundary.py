from fractions import Fraction as F

import pytest

from dualgraph.boundary import (
    BoundaryConfig,
    CombDecomposition,
    CombMismatch,
    KValue,
    branched_components,
    classify_K,
    comb_decompose,
    coprime_check,
    split_determinants,
    validate_boundary,
)
from dualgraph.construct import EnumerationConfig, enumerate_boundaries
from dualgraph.corpus import CORPUS
from dualgraph.errors import GraphError, PreconditionError
from dualgraph.graph import WeightedDualGraph, determinant_d

from helpers import corpus_boundary


def boundary(weights, edges, c="C"):
    return BoundaryConfig(WeightedDualGraph(weights, edges), c)


A1 = boundary({"D": -2, "C": -1}, [("D", "C")])


@pytest.fixture(scope="module")
def enumerated():
    return enumerate_boundaries(EnumerationConfig((2, 3, 4), 7, ("negdef", "minres")))


def test_marked_vertex_must_exist():
    with pytest.raises(GraphError):
        BoundaryConfig(WeightedDualGraph({"A": -2}), "C")


def test_D_and_neighbours():
    b = corpus_boundary("ample_f2")
    assert b.c_id not in b.D
    assert len(b.D) == len(b.graph) - 1
    assert b.c_weight == -1
    assert all(b.graph.has_edge(b.c_id, v) for v in b.c_neighbors)


@pytest.mark.parametrize("name", ["ample_f2", "ample_f3", "indefinite_peel", "trivial_long_arm_m5", "trivial_two_point_m4"])
def test_validation_passes(name):
    rep = validate_boundary(corpus_boundary(name))
    assert rep.ok and rep.determinant == -1


def test_validation_conic_complement():
    rep = validate_boundary(corpus_boundary("conic_complement"))
    assert rep.checks["tree"].passed
    assert rep.checks["components"].passed
    assert rep.failures() == ["determinant"]


def test_validation_single_minus_one():
    rep = validate_boundary(BoundaryConfig(WeightedDualGraph({"C": -1}), "C"))
    assert rep.determinant == 1
    assert "determinant" in rep.failures()


def test_validation_accepts_hirzebruch_pair():
    rep = validate_boundary(boundary({"M": -3, "C": 0}, [("M", "C")]))
    assert rep.ok


def test_validation_flags_weights_and_cycles():
    rep = validate_boundary(boundary({"a": -1, "b": -2, "C": -1}, [("a", "C"), ("b", "C"), ("a", "b")]))
    assert {"tree", "minimal_resolution"} <= set(rep.failures())


def test_comb_degenerate_chain():
    comb = comb_decompose(A1)
    assert isinstance(comb, CombDecomposition)
    assert comb.degenerate and comb.r == 0
    assert comb.s == [1] and comb.t == [0]


def test_comb_rejects_degree_three_c():
    b = boundary({"a": -2, "b": -2, "d": -2, "C": -1}, [("a", "C"), ("b", "C"), ("d", "C")])
    res = comb_decompose(b)
    assert isinstance(res, CombMismatch) and not res
    assert res.reason == "C adjacent to > 2 curves"


def test_comb_rejects_isolated_c():
    res = comb_decompose(BoundaryConfig(WeightedDualGraph({"C": -1}), "C"))
    assert not res and "meets no curve" in res.reason


@pytest.mark.parametrize("m", range(3, 9))
def test_comb_long_arm(m):
    comb = comb_decompose(corpus_boundary(f"trivial_long_arm_m{m}"))
    assert comb.r == 0
    assert comb.s == [2 * m + 1, 2] and comb.t == [0, 1]


@pytest.mark.parametrize("m", range(3, 9))
def test_comb_two_point(m):
    comb = comb_decompose(corpus_boundary(f"trivial_two_point_m{m}"))
    assert comb.s == [5, 2] and comb.t == [m - 2, 1]


def test_comb_reassembles_enumerated(enumerated):
    for e in enumerated:
        comb = comb_decompose(e.boundary)
        if not comb:
            continue
        assert sorted(comb.vertices()) == sorted(e.boundary.graph.ids)
        got = sorted(tuple(sorted(x)) for x in comb.edges())
        assert got == [tuple(sorted(x)) for x in e.boundary.graph.sorted_edges()]


def test_classify_examples():
    k = classify_K(corpus_boundary("trivial_long_arm_m3"))
    assert k.value is KValue.TRIVIAL and k.c_pairing == 1
    k = classify_K(corpus_boundary("ample_f2"))
    assert k.value is KValue.AMPLE and k.c_pairing == F(2, 3) + F(2, 5) == F(16, 15)
    k = classify_K(A1)
    assert k.value is KValue.ANTI_AMPLE and k.c_pairing == 0


def test_classify_preconditions():
    with pytest.raises(PreconditionError, match="not negative definite"):
        classify_K(boundary({"D": 0, "C": -1}, [("D", "C")]))
    with pytest.raises(PreconditionError, match="-1"):
        classify_K(boundary({"D": -2, "C": -2}, [("D", "C")]))


def test_trichotomy_is_sign_of_c_minus_one(enumerated):
    for e in enumerated:
        k = e.kclass
        want = KValue.ANTI_AMPLE if k.c_pairing < 1 else (KValue.TRIVIAL if k.c_pairing == 1 else KValue.AMPLE)
        assert k.value is want
        assert k.c_pairing == sum(k.d_sharp.cycle[v] for v in e.boundary.c_neighbors)


def test_c_pairing_at_least_one_forces_irrational_component(enumerated):
    from dualgraph.graph import connected_components
    from dualgraph.singularity import is_rational

    for e in enumerated:
        if e.kclass.c_pairing >= 1:
            assert any(not is_rational(c).rational for c in connected_components(e.boundary.D))


def test_split_case_one_with_empty_b():
    b = boundary({"C": -1, "D1": -2, "D2": -2}, [("C", "D1"), ("D1", "D2")])
    sd = split_determinants(b)
    assert sd.case == 1
    assert (sd.d_B, sd.d_B_under) == (1, 0)
    assert sd.identity_value() == determinant_d(b.graph)


def test_split_case_three_f2():
    sd = split_determinants(corpus_boundary("ample_f2"))
    assert sd.case == 3 and sd.m == 3
    assert sd.identity_value() == -1 and sd.holds()


@pytest.mark.parametrize(
    "name", [n for n, e in CORPUS.items() if any(x.key == "split_identity" for x in e.expected)]
)
def test_split_identity_on_corpus(name):
    sd = split_determinants(corpus_boundary(name))
    assert sd.identity_value() == -1
    assert sd.holds()


def test_split_identity_equals_total_determinant(enumerated):
    seen = set()
    for e in enumerated:
        try:
            sd = split_determinants(e.boundary)
        except PreconditionError:
            continue
        seen.add(sd.case)
        assert sd.identity_value() == determinant_d(e.boundary.graph) == -1
        if sd.case == 1:
            assert sd.d_A * sd.d_B - 1 > 0
    assert seen


def test_split_unrecognized():
    with pytest.raises(PreconditionError, match="shape not recognized"):
        split_determinants(boundary({"D": -3, "C": -1}, [("D", "C")]))


def test_coprime_examples():
    assert coprime_check(corpus_boundary("ample_f2"))
    for m in range(3, 9):
        assert coprime_check(corpus_boundary(f"trivial_two_point_m{m}"))
    with pytest.raises(PreconditionError, match="shape mismatch"):
        coprime_check(corpus_boundary("trivial_long_arm_m3"))


def test_coprime_on_two_component_boundaries(enumerated):
    for e in enumerated:
        if len(e.boundary.components()) == 2:
            assert coprime_check(e.boundary)


def test_branched_components():
    assert len(branched_components(corpus_boundary("ample_f2"))) == 1
    assert branched_components(A1) == []
