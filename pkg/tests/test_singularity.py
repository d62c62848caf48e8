import pytest
from hypothesis import given, settings, strategies as st

from dualgraph.boundary import branched_components
from dualgraph.cycles import pa_genus, pairing, Cycle
from dualgraph.errors import PreconditionError
from dualgraph.graph import WeightedDualGraph, chain
from dualgraph.singularity import SingularityKind, fundamental_cycle, is_rational, laufer_sequence, max_pa_bounded

from helpers import corpus_boundary
from oracles import brute_max_pa, minimal_anti_nef_cycle
from strategies import negative_definite_trees

Z_F3 = {"D1": 2, "D2": 5, "D3": 4, **{f"D{j}": 12 - j for j in range(4, 12)}, **{f"D{j}": 1 for j in range(12, 17)}}


def test_fundamental_cycle_examples():
    assert fundamental_cycle(chain([-2])).as_int_dict() == {"v1": 1}
    assert fundamental_cycle(chain([-2, -2, -2])).as_int_dict() == {"v1": 1, "v2": 1, "v3": 1}
    E = branched_components(corpus_boundary("trivial_long_arm_m3"))[0]
    assert pa_genus(fundamental_cycle(E)) >= 1


def test_d4_fundamental_cycle():
    g = WeightedDualGraph({"a": -2, "b": -2, "c": -2, "o": -2}, [("o", "a"), ("o", "b"), ("o", "c")])
    assert fundamental_cycle(g).as_int_dict() == {"a": 1, "b": 1, "c": 1, "o": 2}


@pytest.mark.parametrize(
    "g, msg",
    [
        (WeightedDualGraph(), "empty"),
        (WeightedDualGraph({"a": -2, "b": -2}), "not connected"),
        (chain([-1, -1]), "not negative definite"),
    ],
)
def test_fundamental_cycle_preconditions(g, msg):
    with pytest.raises(PreconditionError, match=msg):
        fundamental_cycle(g)


@pytest.mark.parametrize("n", range(1, 9))
def test_a_n_rational(n):
    g = chain([-2] * n)
    rep = is_rational(g)
    assert rep.rational and rep.kind is SingularityKind.CHAIN
    assert max_pa_bounded(g, 3)[0] <= 0


def test_corpus_verdicts():
    assert is_rational(corpus_boundary("conic_complement").D).rational
    E = branched_components(corpus_boundary("trivial_long_arm_m3"))[0]
    rep = is_rational(E)
    assert not rep.rational and rep.kind is SingularityKind.BRANCHED


def test_is_rational_needs_minimal_graph():
    with pytest.raises(PreconditionError, match="weight > -2"):
        is_rational(chain([-2, -1, -3]))


def test_max_pa_examples():
    value, witness = max_pa_bounded(chain([-2]), 3)
    assert value == 0 and witness.as_int_dict() == {"v1": 1}
    assert max_pa_bounded(corpus_boundary("conic_complement").D, 6)[0] <= 0


def test_max_pa_on_f3_component_finds_z():
    E = branched_components(corpus_boundary("ample_f3"))[0]
    value, witness = max_pa_bounded(E, 12)
    assert value >= 1
    assert witness.as_int_dict() == Z_F3


def test_max_pa_guards():
    with pytest.raises(PreconditionError):
        max_pa_bounded(WeightedDualGraph(), 3)
    with pytest.raises(PreconditionError):
        max_pa_bounded(chain([-2]), 0)
    tri = WeightedDualGraph({f"v{i}": -3 for i in range(24)}, [(f"v{i}", f"v{i + 1}") for i in range(23)] + [("v0", "v23")])
    with pytest.raises(PreconditionError, match="exceeds"):
        max_pa_bounded(tri, 2)
    with pytest.raises(PreconditionError, match="tree"):
        max_pa_bounded(tri, 2, method="dp")


@given(negative_definite_trees(max_size=5))
@settings(max_examples=60)
def test_fundamental_cycle_is_least_anti_nef_cycle(g):
    z = fundamental_cycle(g)
    top = max(int(c) for c in z.coeffs.values())
    want = minimal_anti_nef_cycle(g.weights, g.sorted_edges(), g.ids, top)
    assert z.as_int_dict() == want
    for v in g.ids:
        assert pairing(z, Cycle.reduced(g, [v])) <= 0


@given(negative_definite_trees(max_size=6), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_laufer_result_independent_of_scan_order(g, rnd):
    order = g.ids
    rnd.shuffle(order)
    assert laufer_sequence(g, order)[0] == fundamental_cycle(g)


@given(negative_definite_trees(max_size=5), st.integers(1, 3))
@settings(max_examples=60)
def test_tree_dp_matches_brute_force(g, bound):
    value, witness = max_pa_bounded(g, bound)
    brute, arg = brute_max_pa(g.weights, g.sorted_edges(), g.ids, bound)
    assert value == brute
    assert witness.as_int_dict() == arg
    assert max_pa_bounded(g, bound, method="brute") == (value, witness)


@given(negative_definite_trees(max_size=6))
@settings(max_examples=60)
def test_rationality_agrees_with_bounded_maximum(g):
    rep = is_rational(g)
    top = max(int(c) for c in rep.fundamental_cycle.coeffs.values())
    value, _ = max_pa_bounded(g, max(top, 3))
    assert rep.rational == (value <= 0)
    assert rep.pa_fundamental >= 0
