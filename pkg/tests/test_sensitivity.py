"""Sensitivity machinery tests."""

import pytest

from bpmdual._errors import DomainError, SizeLimitError
from bpmdual.bigraph import (
    BipartiteGraph,
    all_graphs,
    has_perfect_matching,
    is_matching_covered,
)
from bpmdual.sensitivity import (
    construct_path_input,
    degree_lower_bound,
    sens_lower_bound,
    sensitivity_at,
)


class TestConstruction:
    def test_n2(self):
        assert set(construct_path_input(2).edges()) == {(1, 1), (2, 1)}

    def test_n4(self):
        graph = construct_path_input(4)
        p1 = {(1, 1), (2, 1), (2, 2), (3, 2)}
        p2 = {(4, 3), (4, 4)}
        assert set(graph.edges()) == p1 | p2

    def test_rejects_small_n(self):
        with pytest.raises(DomainError):
            construct_path_input(1)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_no_perfect_matching(self, n):
        assert not has_perfect_matching(construct_path_input(n))


class TestSensLowerBound:
    def test_values(self):
        assert sens_lower_bound(2) == 2
        assert sens_lower_bound(3) == 4
        assert sens_lower_bound(6) == 12


class TestDegreeLowerBound:
    def test_values(self):
        assert degree_lower_bound(2) == 1  # ceil(sqrt(2/6))
        assert degree_lower_bound(6) == 2  # ceil(sqrt(2))
        assert degree_lower_bound(100) == 21  # ceil(sqrt(425))


def _k2_component_count(graph):
    """Number of components that are a single edge."""
    n = graph.n
    count = 0
    for i in range(n):
        row = graph.rows[i]
        if row.bit_count() != 1:
            continue
        j = row.bit_length() - 1
        col = sum(1 << r for r in range(n) if graph.rows[r] >> j & 1)
        if col == 1 << i:
            count += 1
    return count


class TestSensitivityAt:
    def test_complete_graph_insensitive(self):
        assert sensitivity_at(BipartiteGraph.complete(2)).count == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matching_covered_graphs_insensitive(self, n):
        """Matching-covered graphs are insensitive except at single-edge
        components, whose deletion destroys the matching.

        The claim "sens = 0 for every matching-covered graph" is exhaustively
        false (the two-edge perfect matching at n=2 has sensitivity 2): the
        positive-surplus argument only covers components on >= 4 vertices.
        The exact statement is count == number of K_2 components.
        """
        for graph in all_graphs(n):
            if not is_matching_covered(graph):
                continue
            expected = _k2_component_count(graph)
            assert sensitivity_at(graph).count == expected, graph

    def test_matching_covered_without_k2_components_insensitive(self):
        for graph in all_graphs(3):
            if is_matching_covered(graph) and _k2_component_count(graph) == 0:
                assert sensitivity_at(graph).count == 0, graph

    def test_constructed_n2(self):
        report = sensitivity_at(construct_path_input(2))
        assert report.count == 2
        assert set(report.sensitive_edges) == {(1, 2), (2, 2)}

    def test_constructed_n6_matches_formula(self):
        report = sensitivity_at(construct_path_input(6))
        assert report.count == 12 == sens_lower_bound(6)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_count_at_least_bound(self, n):
        report = sensitivity_at(construct_path_input(n))
        assert report.count >= sens_lower_bound(n)

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_even_case_sensitive_set_is_p1_cross_p2(self, n):
        k = n // 2
        report = sensitivity_at(construct_path_input(n))
        expected = {
            (i, j) for i in range(1, k + 2) for j in range(k + 1, n + 1)
        }
        assert set(report.sensitive_edges) == expected
        assert report.count == sens_lower_bound(n)

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_each_flip_creates_matching(self, n):
        graph = construct_path_input(n)
        report = sensitivity_at(graph)
        for i, j in report.sensitive_edges:
            rows = list(graph.rows)
            rows[i - 1] ^= 1 << (j - 1)
            flipped = BipartiteGraph(n, tuple(rows))
            assert has_perfect_matching(flipped)

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            sensitivity_at(BipartiteGraph.empty(17))
