"""Graph type and predicate tests, including the exhaustive small-n invariants."""

from itertools import permutations

import pytest

from bpmdual._errors import SizeLimitError
from bpmdual.bigraph import (
    BipartiteGraph,
    all_graphs,
    complement,
    connected_components,
    cyclomatic_number,
    has_perfect_matching,
    hetyei_conditions,
    is_elementary,
    is_matching_covered,
    parse_graph,
)


def g(n, *edges):
    return BipartiteGraph.from_edges(n, edges)


K22 = BipartiteGraph.complete(2)
PM2 = g(2, (1, 1), (2, 2))
EMPTY2 = BipartiteGraph.empty(2)


def brute_has_pm(graph):
    """Independent oracle: try all n! permutations."""
    return any(
        all(graph.rows[i] >> p[i] & 1 for i in range(graph.n))
        for p in permutations(range(graph.n))
    )


def brute_is_forest(graph):
    """Independent acyclicity check: DFS looking for a back edge."""
    n = graph.n
    adj = {("a", i): [] for i in range(n)}
    adj.update({("b", j): [] for j in range(n)})
    for i in range(n):
        for j in range(n):
            if graph.rows[i] >> j & 1:
                adj[("a", i)].append(("b", j))
                adj[("b", j)].append(("a", i))
    seen = set()
    for start in adj:
        if start in seen:
            continue
        stack = [(start, None)]
        seen.add(start)
        while stack:
            vertex, parent = stack.pop()
            skipped_parent = False
            for nb in adj[vertex]:
                if nb == parent and not skipped_parent:
                    skipped_parent = True  # multigraphs cannot occur here
                    continue
                if nb in seen:
                    return False
                seen.add(nb)
                stack.append((nb, vertex))
    return True


class TestConstruction:
    def test_mask_round_trip(self):
        for mask in range(16):
            assert BipartiteGraph.from_mask(2, mask).mask == mask

    def test_rejects_bad_rows(self):
        with pytest.raises(ValueError):
            BipartiteGraph(2, (4, 0))
        with pytest.raises(ValueError):
            BipartiteGraph(2, (0,))

    def test_rejects_oversize(self):
        with pytest.raises(SizeLimitError):
            BipartiteGraph.empty(33)

    def test_edges_are_one_based(self):
        assert g(2, (1, 2)).edges() == [(1, 2)]

    def test_parse_round_trip(self):
        text = "2\n10\n01"
        graph = parse_graph(text)
        assert graph == PM2
        assert str(graph) == text

    def test_parse_rejects_ragged_and_bad_chars(self):
        with pytest.raises(ValueError):
            parse_graph("2\n101\n01")
        with pytest.raises(ValueError):
            parse_graph("2\n1x\n01")
        with pytest.raises(ValueError):
            parse_graph("2\n10")


class TestPerfectMatching:
    def test_complete_has_pm(self):
        assert has_perfect_matching(K22)

    def test_empty_has_none(self):
        assert not has_perfect_matching(EMPTY2)

    def test_three_edge_graph(self):
        # Exhaustive check over both permutations of S_2 finds {(1,1),(2,2)}.
        assert has_perfect_matching(g(2, (1, 1), (1, 2), (2, 1)))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_agrees_with_permutation_oracle(self, n):
        for graph in all_graphs(n):
            assert has_perfect_matching(graph) == brute_has_pm(graph)

    def test_monotone_under_edge_addition(self):
        for graph in all_graphs(3):
            if not has_perfect_matching(graph):
                continue
            for i in range(3):
                for j in range(3):
                    rows = list(graph.rows)
                    rows[i] |= 1 << j
                    assert has_perfect_matching(BipartiteGraph(3, tuple(rows)))


class TestComplement:
    def test_complete_to_empty(self):
        for n in (1, 2, 3):
            assert complement(BipartiteGraph.complete(n)) == BipartiteGraph.empty(n)
            assert complement(BipartiteGraph.empty(n)) == BipartiteGraph.complete(n)

    def test_bitwise_negation(self):
        assert complement(g(2, (1, 1), (1, 2))) == g(2, (2, 1), (2, 2))

    def test_involution_and_edge_count(self):
        for graph in all_graphs(2):
            assert complement(complement(graph)) == graph
            assert graph.edge_count + complement(graph).edge_count == 4


class TestComponents:
    def test_empty_counts_isolated_vertices(self):
        assert connected_components(EMPTY2) == 4

    def test_complete_is_connected(self):
        assert connected_components(K22) == 1

    def test_perfect_matching_two_components(self):
        assert connected_components(PM2) == 2


class TestCyclomatic:
    def test_values(self):
        assert cyclomatic_number(K22) == 1
        assert cyclomatic_number(PM2) == 0
        for n in (1, 2, 3):
            assert cyclomatic_number(BipartiteGraph.empty(n)) == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nonnegative_and_forest_iff_zero(self, n):
        limit = 1 << (n * n)
        step = 1 if n <= 3 else 37  # sampled stride at n=4 keeps this quick
        for mask in range(0, limit, step):
            graph = BipartiteGraph.from_mask(n, mask)
            chi = cyclomatic_number(graph)
            assert chi >= 0
            assert (chi == 0) == brute_is_forest(graph)


class TestMatchingCovered:
    def test_perfect_matching_is_covered(self):
        assert is_matching_covered(PM2)

    def test_uncovered_edge(self):
        # Only PM is {(1,1),(2,2)}; edge (1,2) participates in none.
        assert not is_matching_covered(g(2, (1, 1), (1, 2), (2, 2)))

    def test_empty_graph_excluded_by_decision(self):
        assert not is_matching_covered(EMPTY2)
        assert not is_matching_covered(BipartiteGraph.empty(1))

    def test_implies_perfect_matching(self):
        for graph in all_graphs(3):
            if is_matching_covered(graph):
                assert has_perfect_matching(graph)


class TestElementary:
    def test_examples(self):
        assert is_elementary(K22)
        assert not is_elementary(PM2)
        assert is_elementary(BipartiteGraph.complete(1))


class TestHetyei:
    def test_complete_all_true(self):
        assert hetyei_conditions(K22).as_tuple() == (True,) * 5

    def test_perfect_matching_all_false(self):
        assert hetyei_conditions(PM2).as_tuple() == (False,) * 5

    def test_empty_all_false(self):
        assert hetyei_conditions(EMPTY2).as_tuple() == (False,) * 5

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            hetyei_conditions(BipartiteGraph.empty(6))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_equivalence_exhaustive(self, n):
        for graph in all_graphs(n):
            conditions = hetyei_conditions(graph)
            assert conditions.all_equal(), (graph, conditions)
