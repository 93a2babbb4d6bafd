import numpy as np
import pytest

from loclu.core import (
    Preference,
    most_multimodal_attribute,
    run_loclu,
    sweep_order,
    verify_unimodality,
)
from loclu.dip import DipConfig
from loclu.errors import InvalidInputError
from loclu.graph import Graph, PowerIterConfig
from loclu.measures import attribute_unimodality, f1, graph_unimodality
from loclu.synthgen import SyntheticSpec, generate


class TestPreference:
    def test_duplicates_rejected(self):
        with pytest.raises(InvalidInputError):
            Preference(0, (1, 1))

    @pytest.mark.parametrize("pref", [Preference(5, ()), Preference(-1, ()), Preference(0, (3,))])
    def test_out_of_range(self, pref):
        with pytest.raises(InvalidInputError):
            pref.validate(5, 3)


class TestSweepOrder:
    def test_descending_with_index_tiebreak(self):
        assert sweep_order({0: 0.1, 1: 0.3, 2: 0.1, 3: 0.2}) == [1, 3, 0, 2]

    def test_embedding_last_among_ties(self):
        assert sweep_order({4: 0.05, 0: 0.05, 2: 0.05}) == [0, 2, 4]


class TestRunLoclu:
    @pytest.mark.parametrize("seed", [3, 400, 650, 999])
    def test_recovers_planted_cluster(self, planted_large, seed):
        inst = planted_large
        pref = Preference(seed, (most_multimodal_attribute(inst.X),))
        res = run_loclu(inst.graph, inst.X, pref)
        assert seed in res.members
        assert f1(res.members, inst.cluster_of(seed)) >= 0.85
        assert verify_unimodality(res, inst.graph, inst.X, pref)

    def test_scores(self, planted):
        pref = Preference(40, (0, 1))
        res = run_loclu(planted.graph, planted.X, pref)
        assert res.gu == graph_unimodality(res.embedding.values, res.members)
        assert res.au == attribute_unimodality(planted.X, res.members, [0, 1])
        assert abs(res.compactness - (res.gu + res.au)) <= 1e-12
        assert 0 <= res.gu < 0.25 and 0 <= res.au < 0.25

    def test_sweep_order_and_reported_dips(self, planted):
        pref = Preference(40, (0, 4))
        res = run_loclu(planted.graph, planted.X, pref)
        d = planted.X.shape[1]
        assert sorted(res.sweep_order) == [0, 4, d]
        dips = [dip for _, dip, _ in res.per_attribute_dips]
        assert dips == sorted(dips, reverse=True)
        assert [c for c, _, _ in res.per_attribute_dips] == res.sweep_order

    def test_no_designated_attributes(self, planted):
        res = run_loclu(planted.graph, planted.X, Preference(10, ()))
        assert res.au == 0.0 and res.compactness == res.gu
        assert res.sweep_order == [planted.X.shape[1]]
        assert 10 in res.members
        assert verify_unimodality(res, planted.graph, planted.X, Preference(10, ()))

    def test_most_multimodal_mode_keeps_one_column(self, planted):
        pref = Preference(10, (0, 4, 5))
        res = run_loclu(planted.graph, planted.X, pref, mode="most-multimodal")
        kept = most_multimodal_attribute(planted.X, [0, 4, 5])
        assert sorted(res.sweep_order) == [kept, planted.X.shape[1]]

    def test_deterministic(self, planted):
        pref = Preference(77, (1,))
        a = run_loclu(planted.graph, planted.X, pref)
        b = run_loclu(planted.graph, planted.X, pref)
        assert np.array_equal(a.members, b.members)

    def test_column_storage_order_irrelevant(self, planted):
        pref = Preference(77, (0, 2))
        base = run_loclu(planted.graph, planted.X, pref)
        perm = np.array([2, 5, 0, 1, 3, 4])
        moved = run_loclu(planted.graph, planted.X[:, perm], Preference(77, (2, 0)))
        assert np.array_equal(base.members, moved.members)

    def test_every_vertex_a_mode_returns_seed(self):
        # tight blocks 100 apart in every column; the seed is a lone point in both
        rng = np.random.default_rng(0)
        sizes = [20, 20, 1, 20, 20, 20]
        col = np.concatenate([100 * g + rng.normal(0, 1e-3, s) for g, s in enumerate(sizes)])
        n = col.size
        graph = Graph(n, [(i, (i + 1) % n) for i in range(n)])
        X = np.column_stack([col, 3.0 * col - 7.0])
        pref = Preference(40, (0, 1))
        res = run_loclu(graph, X, pref)
        assert res.members.tolist() == [40]
        assert verify_unimodality(res, graph, X, pref)

    def test_single_pass_option(self, planted):
        res = run_loclu(planted.graph, planted.X, Preference(5, (0,)), max_passes=1)
        assert res.passes == 1

    @pytest.mark.parametrize("kwargs", [{"mode": "bogus"}, {"max_passes": 0}])
    def test_bad_options(self, planted, kwargs):
        with pytest.raises(InvalidInputError):
            run_loclu(planted.graph, planted.X, Preference(0, ()), **kwargs)

    def test_dimension_mismatch(self, planted):
        with pytest.raises(InvalidInputError):
            run_loclu(planted.graph, planted.X[:-1], Preference(0, ()))

    def test_empty_graph(self):
        with pytest.raises(InvalidInputError):
            run_loclu(Graph(0), np.empty((0, 1)), Preference(0, ()))

    def test_nan_attributes(self, planted):
        X = planted.X.copy()
        X[3, 1] = np.nan
        with pytest.raises(InvalidInputError):
            run_loclu(planted.graph, X, Preference(0, ()))

    def test_configs_are_used(self, planted):
        res = run_loclu(planted.graph, planted.X, Preference(0, (0,)), PowerIterConfig(max_iter=2),
                        DipConfig(bootstrap_b=50))
        assert res.embedding.iterations <= 2

    def test_to_dict_field_order(self, planted):
        res = run_loclu(planted.graph, planted.X, Preference(0, (0,)))
        assert list(res.to_dict()) == ["members", "size", "gu", "au", "compactness", "iterations", "passes",
                                       "sweep_order", "per_attribute_dips"]


class TestVerifyUnimodality:
    def test_full_vertex_set_fails(self, planted):
        pref = Preference(0, tuple(planted.relevant))
        res = run_loclu(planted.graph, planted.X, pref)
        res.members = np.arange(planted.graph.n)
        assert not verify_unimodality(res, planted.graph, planted.X, pref)

    def test_single_member_passes(self, planted):
        pref = Preference(0, (0,))
        res = run_loclu(planted.graph, planted.X, pref)
        res.members = np.array([0])
        assert verify_unimodality(res, planted.graph, planted.X, pref)

    def test_randomized_instances(self):
        rng = np.random.default_rng(99)
        for r in range(15):
            spec = SyntheticSpec(cluster_sizes=tuple(rng.integers(20, 80, size=rng.integers(1, 4))),
                                 d=int(rng.integers(1, 5)), rng_seed=r)
            inst = generate(spec)
            des = tuple(int(a) for a in rng.choice(spec.d, size=rng.integers(0, spec.d + 1), replace=False))
            pref = Preference(int(rng.integers(spec.n)), des)
            assert verify_unimodality(run_loclu(inst.graph, inst.X, pref), inst.graph, inst.X, pref)
