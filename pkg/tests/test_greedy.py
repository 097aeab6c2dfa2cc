import math

import numpy as np
import pytest

from oracles import brute_greedy
from repgraph.applications import (
    WeightModel,
    animal_incidence,
    greedy_growth_experiment,
    greedy_score,
)
from repgraph.applications.greedy import nlogn
from repgraph.errors import ExperimentRefused, ModelError
from repgraph.graph import grid_window


def test_exact_matches_brute_force():
    w = grid_window(7, 7)
    x = 24
    rng = np.random.default_rng(0)
    for _ in range(30):
        wts = rng.exponential(size=w.vertex_count)
        N = int(rng.integers(1, 5))
        res = greedy_score(w, x, N, wts)
        assert res.value == pytest.approx(brute_greedy(w, x, N, wts))
        assert res.exact and x in res.witness and len(res.witness) == N
        assert sum(wts[v] for v in res.witness) == pytest.approx(res.value)


def test_heuristic_is_lower_bound():
    w = grid_window(7, 7)
    rng = np.random.default_rng(1)
    for _ in range(10):
        wts = rng.random(w.vertex_count)
        lo = greedy_score(w, 24, 4, wts, exact=False, rng=rng)
        assert lo.label == "lower bound"
        assert lo.value <= greedy_score(w, 24, 4, wts).value + 1e-12


def test_incidence_factors_common_vertices(hub):
    inc = animal_incidence(hub, 0, 5)
    assert inc.count == 1 and list(inc.common) == [0, 1, 2, 3, 4]


def test_model_moments():
    m = WeightModel("exponential", C=1.0, scaled=True)
    assert m.mean(3) == pytest.approx(nlogn(3))
    t = m.chernoff_t(3)
    assert m.log_mgf(3, t) / t == pytest.approx(2 * m.mean(3))
    for tt in (t / 2, t / 10):
        assert m.log_mgf(3, tt) / tt <= 2 * m.mean(3)
    assert WeightModel("uniform", bound=1).chernoff_t(3) == math.inf
    u = np.array([[0.5, 0.25]])
    assert m.sample(u, np.array([2, 3])).shape == (1, 2)


def test_mean_condition_enforced():
    with pytest.raises(ModelError):
        WeightModel("constant", value=1.0, degrees=(1, 2))     # n log n = 0 at n = 1
    with pytest.raises(ModelError):
        WeightModel("gamma")
    assert WeightModel.from_config({"law": "exponential", "rate": 2.0}).base_mean() == 0.5


def test_growth_experiment_guards(hub):
    m = WeightModel("exponential", scaled=True)
    with pytest.raises(ExperimentRefused):
        greedy_growth_experiment(hub, 0, [5], m, 10, 1.0, None)
    with pytest.raises(ExperimentRefused):
        greedy_growth_experiment(hub, 0, [5], m, 10, 1.0, 2.0)


def test_growth_experiment_is_reproducible(hub):
    m = WeightModel("exponential", scaled=True)
    a = greedy_growth_experiment(hub, 0, [10, 16], m, 300, 6.0, 5.0, seed=4, chunk=64)
    b = greedy_growth_experiment(hub, 0, [10, 16], m, 300, 6.0, 5.0, seed=4, chunk=1000)
    assert a.rows[0].mean_ratio == pytest.approx(b.rows[0].mean_ratio, rel=1e-12)
    assert a.rows[1].exceedances == b.rows[1].exceedances
    assert all(r.within() for r in a.rows)
