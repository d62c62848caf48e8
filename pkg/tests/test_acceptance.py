"""Acceptance criteria, one group per criterion, each under its time limit."""
import random
import time
from fractions import Fraction

import pytest

from dualgraph.birational import (
    ReductionTrace,
    blow_down,
    blow_up_at_edge,
    blow_up_on_curve,
    build_Z,
    check_monotone,
    peel_step,
    reduce_to_trivial,
)
from dualgraph.boundary import BoundaryConfig, KValue, branched_components, classify_K, comb_decompose
from dualgraph.construct import EnumerationConfig, enumerate_boundaries
from dualgraph.corpus import CORPUS, comb_label
from dualgraph.cycles import Cycle, pa_genus
from dualgraph.graph import (
    WeightedDualGraph,
    connected_components,
    determinant_d,
    intersection_matrix,
    is_negative_definite,
    remove_vertices,
)
from dualgraph.singularity import is_rational, max_pa_bounded

from helpers import corpus_boundary, rooted
from oracles import cofactor_det

F = Fraction


class Timer:
    def __init__(self, limit: float) -> None:
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, limit {self.limit}s"


def comb_alpha(b: BoundaryConfig, labels):
    comb = comb_decompose(b)
    assert comb, comb
    cyc = classify_K(b).d_sharp.cycle
    return {label: cyc[comb_label(comb, label)] for label in labels}


# -- 1 ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "long-arm K-trivial family m=3..8: d(D)=2(m-2), D# table, trivial, irrational")
def test_criterion_1_long_arm_family():
    with Timer(1.0):
        for m in range(3, 9):
            b = corpus_boundary(f"trivial_long_arm_m{m}")
            assert determinant_d(b.D) == 2 * (m - 2)
            want = {f"s0.{i}": F(i) for i in range(1, 2 * m + 2)}
            want.update({"spine1": F(2 * (m + 1)), "s1.1": F(m + 2), "s1.2": F(2), "t1.1": F(m + 1)})
            assert comb_alpha(b, want) == want
            assert len(want) == len(b.D)
            k = classify_K(b)
            assert k.value is KValue.TRIVIAL and k.c_pairing == 1
            assert is_rational(b.D).rational is False


# -- 2 ---------------------------------------------------------------------------


@pytest.mark.criterion(2, "two-point K-trivial family m=3..8: d(D)=(m-2)(m-1), D# table, chain + irrational branch")
def test_criterion_2_two_point_family():
    with Timer(1.0):
        for m in range(3, 9):
            b = corpus_boundary(f"trivial_two_point_m{m}")
            assert determinant_d(b.D) == (m - 2) * (m - 1)
            want = {f"s0.{i}": F(i) for i in range(1, 6)}
            want.update({f"t0.{j}": F(0) for j in range(1, m - 1)})
            want.update({"spine1": F(6), "s1.1": F(4), "s1.2": F(2), "t1.1": F(3)})
            assert comb_alpha(b, want) == want
            assert len(want) == len(b.D)
            assert classify_K(b).value is KValue.TRIVIAL
            comps = connected_components(b.D)
            assert len(comps) == 2
            chains = [c for c in comps if c.is_path()]
            branched = [c for c in comps if c.branch_vertices()]
            assert len(chains) == 1 and len(branched) == 1
            assert len(chains[0]) == m - 2
            assert is_rational(chains[0]).rational is True
            assert is_rational(branched[0]).rational is False


# -- 3 ---------------------------------------------------------------------------

ALPHA_F3 = {"D1": F(20, 7), "D2": F(53, 7), "D3": F(43, 7)}
ALPHA_F3.update({f"D{i}": F(126 - 10 * i, 7) for i in range(4, 12)})
ALPHA_F3.update({"D12": F(8, 7), "D16": F(8, 7), "D13": F(16, 7), "D15": F(16, 7), "D14": F(24, 7)})
Z_F3 = {"D1": 2, "D2": 5, "D3": 4, **{f"D{j}": 12 - j for j in range(4, 12)}, **{f"D{j}": 1 for j in range(12, 17)}}


@pytest.mark.criterion(3, "ample boundary over F_3: d=21, D# in sevenths, 8/7, reduces to long arm m=3, Z, p_a(Z)=1")
def test_criterion_3_ample_f3():
    with Timer(1.0):
        b = corpus_boundary("ample_f3")
        assert determinant_d(b.D) == 21
        k = classify_K(b)
        assert {v: k.d_sharp.cycle[v] for v in b.D.ids} == ALPHA_F3
        assert k.c_pairing == F(8, 7) and k.value is KValue.AMPLE
        trace = reduce_to_trivial(b)
        assert rooted(trace.final) == rooted(corpus_boundary("trivial_long_arm_m3"))
        z = build_Z(b, trace)
        assert z.as_int_dict() == Z_F3
        assert pa_genus(z) == 1


# -- 4 ---------------------------------------------------------------------------

ALPHA_F2 = {"D1": F(8, 3), "D2": F(16, 3), "D3": F(4)}
ALPHA_F2.update({f"D{i}": F(40 - 4 * i, 3) for i in range(4, 10)})
ALPHA_F2.update({"D10": F(1, 5), "D11": F(2, 5), "D12": F(2, 3)})
Z_F2 = {"D1": 2, "D2": 4, "D3": 3, **{f"D{j}": 10 - j for j in range(4, 10)}, "D10": 0, "D11": 0, "D12": 1}


@pytest.mark.criterion(4, "ample boundary over F_2: d=15, D# in thirds/fifths, 16/15, reduces to two-point m=3, Z, p_a(Z)=1")
def test_criterion_4_ample_f2():
    with Timer(1.0):
        b = corpus_boundary("ample_f2")
        assert determinant_d(b.D) == 15
        k = classify_K(b)
        assert {v: k.d_sharp.cycle[v] for v in b.D.ids} == ALPHA_F2
        assert k.c_pairing == F(16, 15) and k.value is KValue.AMPLE
        trace = reduce_to_trivial(b)
        assert rooted(trace.final) == rooted(corpus_boundary("trivial_two_point_m3"))
        z = build_Z(b, trace)
        assert z.as_int_dict() == Z_F2
        assert z["D10"] == 0 and z["D11"] == 0
        assert pa_genus(z) == 1


# -- 5 ---------------------------------------------------------------------------


@pytest.mark.criterion(5, "contracting C on the F_2 example leaves D' not negative definite")
def test_criterion_5_indefinite_after_contraction():
    with Timer(1.0):
        b = corpus_boundary("indefinite_peel")
        assert is_negative_definite(b.D)
        image = blow_down(b.graph, b.c_id)
        minus_one = [v for v in image.ids if image.weight(v) == -1]
        assert len(minus_one) == 1
        d_prime = remove_vertices(image, minus_one)
        assert is_negative_definite(d_prime) is False
        # the displayed D': nine (-2)-curves, connected, singular form
        assert len(d_prime) == 9 and set(d_prime.weights.values()) == {-2}
        assert len(connected_components(d_prime)) == 1
        assert determinant_d(d_prime) == 0
        step = peel_step(b)
        assert step.case == "2" and step.definite is False


# -- 6 ---------------------------------------------------------------------------

ALPHA_CONIC = {"D1": F(3, 2), **{f"D{i}": F(i - 1, 2) for i in range(2, 8)}, "D8": F(2), "D9": F(1), "D10": F(2), "D11": F(1)}


@pytest.mark.criterion(6, "conic complement: d(D)=16, D#, (D#.C)=1, rational, max p_a over [1,6]^11 <= 0")
def test_criterion_6_conic_complement():
    b = corpus_boundary("conic_complement")
    assert determinant_d(b.D) == 16
    k = classify_K(b)
    assert {v: k.d_sharp.cycle[v] for v in b.D.ids} == ALPHA_CONIC
    assert k.c_pairing == 1 and k.value is KValue.TRIVIAL
    assert is_rational(b.D).rational is True
    with Timer(10.0):
        value, witness = max_pa_bounded(b.D, 6)
    assert value <= 0
    assert pa_genus(witness) == value


# -- 7 ---------------------------------------------------------------------------


def check_enumerated_properties(found):
    """The invariants every enumerated boundary must satisfy; returns counts by class."""
    counts = {"trivial": 0, "ample": 0, "anti_ample": 0}
    for e in found:
        b = e.boundary
        assert determinant_d(b.graph) == -1, e.canonical
        k = e.kclass
        assert k is not None
        counts[k.value.value] += 1
        if k.c_pairing >= 1:
            assert any(is_rational(c).rational is False for c in connected_components(b.D)), e.canonical
        branched = branched_components(b)
        if k.value is KValue.TRIVIAL and branched:
            (E,) = branched
            assert all(k.d_sharp.cycle[v].denominator == 1 for v in E.ids), e.canonical
            assert is_rational(E).rational is False, e.canonical
        if k.value is KValue.AMPLE and branched:
            trace = reduce_to_trivial(b)
            seq = trace.c_pairings()
            for before, after in zip(seq, seq[1:]):
                check_monotone(before, after)
            assert seq[-1] == 1
            assert all(s.c_pairing is None or s.c_pairing >= 1 for s in trace.steps)
            z = build_Z(b, trace)
            assert pa_genus(z) == 1
    return counts


@pytest.mark.criterion(7, "enumerated boundaries (m=2..4, depth<=8, negdef+minres): d=-1 and K-class properties")
def test_criterion_7_property_suite():
    with Timer(60.0):
        found = enumerate_boundaries(EnumerationConfig((2, 3, 4), 8, ("negdef", "minres")))
        counts = check_enumerated_properties(found)
    assert sum(counts.values()) == len(found) > 0


def test_property_suite_at_depth_ten_reaches_trivial_and_ample():
    found = enumerate_boundaries(EnumerationConfig((2, 3, 4), 10, ("negdef", "minres")))
    counts = check_enumerated_properties(found)
    assert counts["trivial"] >= 1 and counts["ample"] >= 1


# -- 8 ---------------------------------------------------------------------------


def random_graph(rng: random.Random, max_n: int = 7) -> WeightedDualGraph:
    n = rng.randint(0, max_n)
    ids = [f"v{i}" for i in range(n)]
    weights = {v: rng.randint(-6, 3) for v in ids}
    edges = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
    return WeightedDualGraph(weights, edges)


@pytest.mark.criterion(8, "oracle agreement: cofactor determinants, Laufer vs bounded p_a, blow-up/down round trips")
def test_criterion_8_oracles():
    rng = random.Random(20240518)
    with Timer(30.0):
        for _ in range(1000):
            g = random_graph(rng)
            neg = intersection_matrix(g).negated()
            assert determinant_d(g) == cofactor_det(neg)

        for name, entry in CORPUS.items():
            g, c = entry.load()
            D = BoundaryConfig(g, c).D if c else g
            for comp in connected_components(D):
                if not is_negative_definite(comp) or any(w > -2 for w in comp.weights.values()):
                    continue
                rep = is_rational(comp)
                bound = max(6, max(int(x) for x in rep.fundamental_cycle.coeffs.values()))
                value, _ = max_pa_bounded(comp, bound)
                assert rep.rational == (value <= 0), (name, comp.ids)

        for _ in range(1000):
            g = random_graph(rng)
            if len(g) == 0:
                continue
            v = rng.choice(g.ids)
            assert blow_down(blow_up_on_curve(g, v, "X"), "X") == g
            if g.edges:
                u, w = sorted(rng.choice(sorted(g.sorted_edges())))
                assert blow_down(blow_up_at_edge(g, u, w, "X"), "X") == g

        rounds = 0
        while rounds < 1000:
            g = random_graph(rng)
            cands = [
                v
                for v in g.ids
                if g.weight(v) == -1 and 1 <= g.degree(v) <= 2 and not (g.degree(v) == 2 and g.has_edge(*g.neighbors(v)))
            ]
            if not cands:
                continue
            v = rng.choice(cands)
            nbrs = g.neighbors(v)
            down = blow_down(g, v)
            up = blow_up_on_curve(down, nbrs[0], v) if len(nbrs) == 1 else blow_up_at_edge(down, *nbrs, v)
            assert up == g
            rounds += 1
