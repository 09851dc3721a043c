import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from conftest import make
from hypothesis import given, settings
from hypothesis import strategies as st
from instances import random_hypergraph

from tritrans import (
    ALPHA,
    Condition,
    RejectedConditionError,
    TripartiteHypergraph,
    apply_condition,
    degree2,
    degree3,
    descendant,
    disjoint_union,
    enumerate_oracle,
    gen_cyclic_latin,
    gen_h15,
    gen_matching,
    gen_theorem1,
    is_minimal_transversal,
    max_2edge_matching,
    measure,
    validate,
)


def exhaustive_matching(h):
    pairs = [e for e in h.edges if len(e) == 2]
    for r in range(len(pairs), 0, -1):
        for combo in itertools.combinations(pairs, r):
            if len(frozenset().union(*combo)) == 2 * r:
                return r
    return 0


def networkx_matching(h):
    g = nx.Graph([tuple(e) for e in h.edges if len(e) == 2])
    return len(nx.max_weight_matching(g, maxcardinality=True))


seeds = st.integers(min_value=0, max_value=2**32)


class TestValidate:
    def test_single_edge_strict(self):
        h = TripartiteHypergraph([["a0"], ["b0"], ["c0"]], [{"a0", "b0", "c0"}])
        assert validate(h, strict_uniform=True).ok

    def test_two_vertices_in_one_part(self):
        h = TripartiteHypergraph([["a0", "a1"], [], []], [{"a0", "a1"}])
        report = validate(h)
        assert any("two vertices in one part" in v for v in report.violations)

    def test_h15_strict(self, h15):
        assert validate(h15, strict_uniform=True).ok
        assert h15.order == 15
        assert len(h15.edges) == 25

    def test_duplicates_orphans_and_arity(self):
        h = TripartiteHypergraph([["x", "w"], ["y"], ["z"]], [{"x", "y"}, {"x", "y"}])
        violations = validate(h, strict_uniform=True).violations
        assert any("duplicate" in v for v in violations)
        assert any("orphan vertex w" in v for v in violations)
        assert any("orphan vertex z" in v for v in violations)
        assert any("expected 3" in v for v in violations)

    def test_vertex_in_two_parts_rejected(self):
        with pytest.raises(ValueError, match="declared in parts"):
            TripartiteHypergraph([["x"], ["x"], []], [])


class TestApplyCondition:
    parts = ["a", "bc", "d"]

    def test_steps_one_and_two(self):
        h = make(["ab", "acd"], ["a", "bc", "d"], s_part=0)
        out = apply_condition(h, Condition({"b"}, {"c"}))
        assert set(out.edges) == {frozenset("ad")}
        assert not out.dead

    def test_only_transversal_is_empty(self):
        h = make(["ab"], ["a", "b", ""])
        out = apply_condition(h, Condition({"b"}))
        assert out.is_empty()
        assert out.order == 0
        assert len(enumerate_oracle(out)) == 1

    def test_shrinks_to_unit_edge(self):
        h = make(["xcd", "yab"], ["xy", "ca", "db"], s_part=0)
        out = apply_condition(h, Condition({"a", "b"}, {"c", "d"}))
        assert set(out.edges) == {frozenset("x")}
        assert out.vertices == {"x"}
        assert not out.dead

    def test_emptied_edge_marks_dead(self):
        # an edge without an S-vertex can be emptied
        h = make(["ab", "c"], ["a", "bc", ""], s_part=0)
        out = apply_condition(h, Condition({"a"}, {"c"}))
        assert out.dead
        assert len(enumerate_oracle(out)) == 0

    def test_duplicates_are_merged(self):
        h = make(["abc", "abd"], ["a", "b", "cd"], s_part=0)
        out = apply_condition(h, Condition(set(), {"c", "d"}))
        assert out.edges == (frozenset("ab"),)

    def test_superset_removal_is_opt_in(self):
        h = make(["ab", "abc", "ad"], ["a", "b", "cd"])
        cond = Condition({"d"})
        assert len(apply_condition(h, cond).edges) == 2
        assert apply_condition(h, cond, remove_supersets=True).edges == (frozenset("ab"),)

    def test_closure_violation_rejected(self):
        h = make(["ab", "ac"], ["a", "b", "c"], s_part=0)
        with pytest.raises(RejectedConditionError, match="loses S-vertex"):
            apply_condition(h, Condition({"b"}, {"a"}))

    def test_unknown_vertex_rejected(self):
        h = make(["ab"], ["a", "b", ""])
        with pytest.raises(RejectedConditionError):
            apply_condition(h, Condition({"q"}))

    def test_condition_invariants(self):
        with pytest.raises(ValueError):
            Condition({"a"}, {"a"})
        with pytest.raises(ValueError):
            Condition()

    @settings(max_examples=200, deadline=None)
    @given(seeds)
    def test_removes_condition_vertices_and_keeps_s_transversal(self, seed):
        h = random_hypergraph(random.Random(seed))
        for br in descendant(h):
            out = apply_condition(h, br.condition)
            assert not out.vertices & br.condition.vertices
            s = out.s_vertices
            assert all(e & s for e in out.edges)
            assert measure(out) <= measure(h)


class TestDegrees:
    def test_h15(self, h15):
        for v in h15.vertices:
            assert degree2(h15, v) == 0
            assert degree3(h15, v) == 5

    def test_small(self):
        h = make(["ab", "ac"], ["a", "b", "c"])
        assert degree2(h, "a") == 2
        h = make(["abc"], ["a", "b", "c"])
        assert (degree3(h, "a"), degree2(h, "a")) == (1, 0)

    def test_unknown_vertex(self, h15):
        with pytest.raises(KeyError):
            degree2(h15, "nope")


class TestMatching:
    def test_examples(self):
        assert max_2edge_matching(gen_h15()) == 0
        assert max_2edge_matching(make(["ab", "bc"], ["b", "ac", ""])) == 1
        h = make(["ab", "cd", "ac"], ["a", "bc", "d"])
        assert exhaustive_matching(h) == 2
        assert max_2edge_matching(h) == 2

    @settings(max_examples=300, deadline=None)
    @given(seeds)
    def test_agrees_with_exhaustive_and_networkx(self, seed):
        h = random_hypergraph(random.Random(seed), uniform=False, max_edges=14)
        m = max_2edge_matching(h)
        assert m == exhaustive_matching(h) == networkx_matching(h)

    @settings(max_examples=200, deadline=None)
    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_removing_vertices_costs_at_most_one_each(self, seed, j):
        rng = random.Random(seed)
        h = random_hypergraph(rng, uniform=False, max_edges=14)
        gone = set(rng.sample(sorted(h.vertices), min(j, h.order)))
        edges = [e for e in h.edges if not e & gone]
        smaller = TripartiteHypergraph.from_edges(edges, h.part_of)
        assert max_2edge_matching(h) - max_2edge_matching(smaller) <= len(gone)


class TestMeasure:
    def test_empty(self):
        assert measure(make([], ["", "", ""])) == 0

    def test_two_disjoint_pairs(self):
        h = make(["ab", "cd"], ["ac", "bd", ""])
        assert measure(h) == 4 - 2 * Fraction(145785, 1000000)
        assert measure(h) == Fraction(3708430, 1000000)

    def test_h15(self, h15):
        assert measure(h15, ALPHA) == 15

    def test_alpha_range(self, h15):
        with pytest.raises(ValueError):
            measure(h15, Fraction(3, 2))

    @settings(max_examples=100, deadline=None)
    @given(seeds)
    def test_bounds(self, seed):
        h = random_hypergraph(random.Random(seed))
        assert 0 <= measure(h) <= h.order


class TestDisjointUnion:
    def test_identity(self, h15):
        empty = TripartiteHypergraph([[], [], []], [])
        assert disjoint_union(h15, empty) == h15

    def test_two_triangles(self):
        e = gen_matching(1)
        assert len(enumerate_oracle(disjoint_union(e, e))) == 9

    def test_h15_plus_edge(self, h15):
        h = disjoint_union(h15, gen_matching(1))
        assert h.order == 16 + 2
        assert len(enumerate_oracle(h)) == 428 * 3

    def test_keeps_names_when_disjoint(self):
        h1 = make(["abc"], ["a", "b", "c"])
        h2 = make(["xyz"], ["x", "y", "z"])
        h = disjoint_union(h1, h2)
        assert h.parts == (("a", "x"), ("b", "y"), ("c", "z"))

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_product_law(self, seed):
        rng = random.Random(seed)
        h1 = random_hypergraph(rng, max_part=3)
        h2 = random_hypergraph(rng, max_part=3)
        h = disjoint_union(h1, h2)
        assert h.order == h1.order + h2.order
        assert len(enumerate_oracle(h)) == len(enumerate_oracle(h1)) * len(enumerate_oracle(h2))


class TestGenerators:
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_matching_count(self, k):
        h = gen_matching(k)
        assert h.order == 3 * k and len(h.edges) == k
        assert len(enumerate_oracle(h)) == 3**k

    def test_cyclic_latin_2(self):
        h = gen_cyclic_latin(2)
        assert (h.order, len(h.edges)) == (6, 4)
        assert len(enumerate_oracle(h)) == 7

    def test_h15_count(self, h15):
        assert h15 == gen_cyclic_latin(5)
        assert len(enumerate_oracle(h15)) == 428

    def test_h15_figure_cells(self):
        h = gen_h15(letter_names=True)
        edges = set(h.edges)
        assert frozenset({"alpha", "1", "a"}) in edges
        assert frozenset({"delta", "5", "c"}) in edges
        # the second table's rows for epsilon
        assert frozenset({"epsilon", "2", "a"}) in edges
        assert frozenset({"epsilon", "5", "d"}) in edges

    def test_h15_is_a_rook_placement(self):
        h = gen_h15()
        for i, j in itertools.combinations(range(3), 2):
            projections = {
                tuple(sorted(v for v in e if h.part_of[v] in (i, j))) for e in h.edges
            }
            assert len(projections) == 25

    @pytest.mark.parametrize("n,count", [(3, 3), (15, 428), (18, 1284)])
    def test_theorem1(self, n, count):
        h = gen_theorem1(n)
        assert h.order == n
        assert validate(h, strict_uniform=True).ok
        assert len(enumerate_oracle(h)) == count

    @pytest.mark.parametrize("n", [0, 4, 16, -3])
    def test_theorem1_rejects(self, n):
        with pytest.raises(ValueError):
            gen_theorem1(n)

    @pytest.mark.parametrize("h", [gen_h15(), gen_cyclic_latin(3), gen_matching(2)])
    def test_parts_are_minimal_transversals(self, h):
        for part in h.parts:
            assert is_minimal_transversal(h, part)
