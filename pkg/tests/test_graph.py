import numpy as np
import pytest
import scipy.sparse as sp
from conftest import bridged_cliques
from hypothesis import given, settings
from hypothesis import strategies as st

from loclu.errors import InvalidConfigError, InvalidInputError
from loclu.graph import (
    Graph,
    PowerIterConfig,
    exact_second_eigenvector,
    power_iteration,
    transition_apply,
)

edge_lists = st.integers(1, 30).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=80))
)


class TestGraph:
    def test_path(self):
        g = Graph(3, [(0, 1), (1, 2)])
        assert g.n_edges == 2
        assert list(g.degree) == [1, 2, 1]
        assert list(g.neighbors(1)) == [0, 2]

    def test_duplicates_and_self_loops(self):
        g = Graph(3, [(0, 1), (1, 0), (0, 1), (2, 2)])
        assert g.n_edges == 1
        assert g.self_loops_dropped == 1
        assert g.degree[2] == 0

    def test_out_of_range(self):
        with pytest.raises(InvalidInputError):
            Graph(2, [(0, 2)])
        with pytest.raises(InvalidInputError):
            Graph(2, [(-1, 0)])

    def test_empty(self):
        g = Graph(4)
        assert g.n_edges == 0 and g.edges().shape == (0, 2)

    def test_from_adjacency_roundtrip(self):
        g = Graph(5, [(0, 1), (1, 2), (3, 4)])
        assert Graph.from_adjacency(g.adjacency) == g
        assert Graph.from_adjacency(sp.triu(g.adjacency)) == g

    def test_subgraph_edges(self):
        g = bridged_cliques(4)
        assert g.subgraph_edges(range(4)) == 6
        assert g.subgraph_edges(range(8)) == 13

    def test_permuted(self):
        g = Graph(3, [(0, 1)])
        h = g.permuted([2, 0, 1])
        assert h.edges().tolist() == [[0, 2]]

    @settings(max_examples=100, deadline=None)
    @given(edge_lists)
    def test_adjacency_symmetric_zero_diagonal(self, data):
        n, edges = data
        g = Graph(n, edges)
        a = g.adjacency
        assert (a != a.T).nnz == 0
        assert a.diagonal().sum() == 0
        assert a.data.max(initial=1) == 1
        assert g.degree.sum() == 2 * g.n_edges


class TestTransition:
    def test_rows_average_neighbours(self):
        g = Graph(3, [(0, 1), (1, 2)])
        out = transition_apply(g, np.array([1.0, 2.0, 4.0]))
        assert out.tolist() == [2.0, 2.5, 2.0]

    def test_isolated_vertex_keeps_value(self):
        g = Graph(3, [(0, 1)])
        assert transition_apply(g, np.array([1.0, 3.0, 7.0]))[2] == 7.0

    def test_constant_is_fixed_point(self, rng):
        g = bridged_cliques(6)
        assert np.allclose(transition_apply(g, np.ones(g.n)), 1.0)

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            transition_apply(Graph(3), np.ones(2))


class TestPowerIteration:
    @pytest.mark.parametrize("kwargs", [{"epsilon_hat": 0}, {"max_iter": 0}, {"rng_seed": -3}, {"max_iter": 1.5}])
    def test_bad_config(self, kwargs):
        with pytest.raises(InvalidConfigError):
            PowerIterConfig(**kwargs)

    def test_unit_l1_norm_each_step(self):
        g = bridged_cliques(12)
        emb = power_iteration(g, PowerIterConfig(epsilon_hat=1e-9))
        assert emb.iterations == len(emb.norms) >= 2
        assert max(abs(v - 1.0) for v in emb.norms) <= 1e-12
        assert abs(np.abs(emb.values).sum() - 1.0) <= 1e-12

    def test_respects_max_iter(self):
        emb = power_iteration(bridged_cliques(8), PowerIterConfig(epsilon_hat=1e-300, max_iter=7))
        assert emb.iterations == 7

    def test_deterministic(self):
        g = bridged_cliques(10)
        a = power_iteration(g, PowerIterConfig(rng_seed=4))
        b = power_iteration(g, PowerIterConfig(rng_seed=4))
        assert np.array_equal(a.values, b.values)

    def test_explicit_start_vector(self):
        g = bridged_cliques(5)
        v0 = np.linspace(-1, 1, g.n)
        w = transition_apply(g, v0)
        one_step = power_iteration(g, PowerIterConfig(max_iter=1), v0=v0)
        assert np.allclose(one_step.values, w / np.abs(w).sum(), rtol=0, atol=1e-15)

    def test_kernel_start_vector_stops(self):
        # on the path 0-1-2 this vector lies in the kernel of the walk matrix
        emb = power_iteration(Graph(3, [(0, 1), (1, 2)]), v0=np.array([1.0, 0.0, -1.0]))
        assert emb.iterations == 0

    def test_empty_graph_rejected(self):
        with pytest.raises(InvalidInputError):
            power_iteration(Graph(0))

    def test_wrong_start_length(self):
        with pytest.raises(InvalidInputError):
            power_iteration(Graph(3), v0=np.ones(2))

    @pytest.mark.parametrize("k", [10, 25])
    def test_separates_bridged_cliques(self, k):
        emb = power_iteration(bridged_cliques(k)).values
        a, b = emb[:k], emb[k:]
        gap = min(abs(a.min() - b.max()), abs(b.min() - a.max()))
        assert gap >= 5 * max(np.ptp(a), np.ptp(b))

    def test_split_agrees_with_exact_eigenvector(self):
        g = bridged_cliques(15)
        exact = exact_second_eigenvector(g)
        emb = power_iteration(g).values
        split_exact = exact > np.median(exact)
        split_emb = emb > np.median(emb)
        assert np.array_equal(split_exact, split_emb) or np.array_equal(split_exact, ~split_emb)


class TestExactEigenvector:
    def test_orthogonal_to_constant_in_degree_metric(self):
        g = bridged_cliques(7)
        e2 = exact_second_eigenvector(g)
        assert abs(np.dot(g.degree, e2)) < 1e-12
        assert abs(np.abs(e2).sum() - 1) < 1e-12

    def test_is_eigenvector_of_walk_matrix(self):
        g = bridged_cliques(6)
        e2 = exact_second_eigenvector(g)
        w = transition_apply(g, e2)
        lam = np.dot(w, e2) / np.dot(e2, e2)
        assert np.allclose(w, lam * e2, atol=1e-12)
        assert 0 < lam < 1

    def test_size_limits(self):
        with pytest.raises(InvalidInputError):
            exact_second_eigenvector(Graph(1))
