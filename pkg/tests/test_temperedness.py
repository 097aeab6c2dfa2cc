import math

import pytest

from oracles import brute_animals
from repgraph.errors import ArgumentError, CoverageError
from repgraph.graph import Animal, GraphWindow, bfs_distances, path_graph
from repgraph.phi import PhiFunction, phi_inverse
from repgraph.repulsion import default_phi
from repgraph.temperedness import (
    TemperedSequence,
    WeightFunction,
    classify_series,
    g_average,
    gamma_series,
    is_good_animal,
    max_g_average,
    preset,
    qpn_sequence,
    shell_counts,
    shell_weight_bound,
)

GOLDEN = math.e * math.pi ** 2 / 3


# --- gamma series ------------------------------------------------------------


def brute_partial(g, phi, ts, K):
    return 2 * sum(g(ts.value(k + 1)) / phi(ts.value(k)) for k in range(1, K + 1))


def test_gamma_golden_closed_form():
    p = preset("paths-default")
    gs = gamma_series(p.g, p.phi, p.ts, tol=1e-9)
    assert gs.converged and gs.status == "integral"
    assert abs(gs.gamma - GOLDEN) < 1e-6
    assert gs.gamma - gs.tail_bound <= GOLDEN <= gs.gamma_upper + 1e-12
    assert gs.q == pytest.approx(math.exp(gs.gamma))


def test_partial_sums_match_direct_evaluation():
    # small tower keeps every term representable
    g, phi = WeightFunction.log(), PhiFunction.power(2)
    ts = TemperedSequence.geometric(2, 2)
    gs = gamma_series(g, phi, ts, tol=1e-12)
    for K in (1, 2, 5):
        assert 2 * gs.partial_sums[K - 1] == pytest.approx(brute_partial(g, phi, ts, K))


def test_divergent_companion_refused():
    p = preset("animals-default")
    gs = gamma_series(p.g, p.phi, p.ts)
    assert not gs.converged and gs.status == "divergent" and gs.gamma is None


def test_ratio_class_under_default_profile():
    ts = TemperedSequence.geometric(2, 2)
    phi = default_phi()
    assert gamma_series(WeightFunction.log(), phi, ts).gamma == pytest.approx(5.008, abs=1e-3)
    assert gamma_series(WeightFunction.tlogt(), phi, ts).gamma == pytest.approx(31.72, abs=1e-2)
    assert classify_series(WeightFunction.power(1.0), phi, ts)[0] == "divergent"


def test_explicit_sequence_is_finite_only():
    ts = TemperedSequence.explicit([3, 9, 27])
    gs = gamma_series(WeightFunction.log(), PhiFunction.power(2), ts)
    assert gs.status == "finite" and not gs.converged
    assert 2 * gs.partial_sums[-1] == pytest.approx(
        brute_partial(WeightFunction.log(), PhiFunction.power(2), ts, 2))


# --- weights, sequences, presets -------------------------------------------


def test_weights():
    assert WeightFunction.parse("t log t")(math.e) == pytest.approx(math.e)
    assert WeightFunction.parse("power(-0.5)")(4) == pytest.approx(2.0)
    assert WeightFunction.from_table([0.5, 1.0])(2) == 1.0
    with pytest.raises(ArgumentError):
        WeightFunction.parse("sin")


def test_sequences():
    ts = TemperedSequence.tower()
    assert ts.value(1) == pytest.approx(math.exp(math.e))
    assert ts.magnitude(600).loglog == pytest.approx(600.0)
    g = TemperedSequence.geometric(2, 2)
    assert g.values(4) == [2, 4, 8, 16]
    assert TemperedSequence.from_config(g.to_config()) == g
    with pytest.raises(ArgumentError):
        TemperedSequence.explicit([3, 2])
    with pytest.raises(CoverageError):
        TemperedSequence.explicit([2, 3]).value(3)


def test_presets():
    assert preset("randic(-0.5)").g(4) == pytest.approx(2.0)
    with pytest.raises(ArgumentError):
        preset("nope")


# --- animal quantities -------------------------------------------------------


def test_good_animals_and_averages(hub):
    phi = default_phi()
    a = Animal(hub, frozenset(range(8, 13)))          # contains the degree-5 hub
    v = is_good_animal(a, phi)
    assert v.margin == pytest.approx(5 - phi(5) / 2) and v.good == (v.margin >= 0)
    g = WeightFunction.log()
    assert g_average(a, g) == pytest.approx((4 * math.log(2) + math.log(5)) / 5)
    best, wit = max_g_average(hub, 8, 4, g)
    brute = max(sum(math.log(hub.ambient_degree[u]) for u in s) / 4
                for s in brute_animals(hub, 8, 4))
    assert best == pytest.approx(brute) and 8 in wit


def test_shells():
    w = GraphWindow.from_edges(3, [(0, 1), (1, 2)], ambient_degree=[2, 9, 20])
    a = Animal(w, frozenset(range(3)))
    ts = TemperedSequence.geometric(2, 2)
    sc = shell_counts(a, ts)
    assert sc.below == 1 and sc.counts == (0, 0, 1, 1) and sc.total == 3
    g = WeightFunction.log()
    assert shell_weight_bound(a, g, ts) == pytest.approx((math.log(16) + math.log(32)) / 3)
    with pytest.raises(CoverageError):
        shell_counts(a, TemperedSequence.explicit([2, 4]))


# --- ball sequences ---------------------------------------------------------


def ball_max_degree(w, x, N):
    d = bfs_distances(w, x)
    return max(w.ambient_degree[v] for v in range(w.vertex_count) if 0 <= d[v] <= N)


def test_default_window_minus_sequence(hub):
    phi = default_phi()
    res = qpn_sequence(hub, 0, phi, 2, "minus")
    assert res.Ns == (29, 69, 129)
    for s in res.steps:
        assert s.max_degree == ball_max_degree(hub, 0, s.N)
        assert s.phi_inverse == phi_inverse(phi, 2 * s.N + 1)
        assert s.holds
    assert [s.max_degree for s in res.steps] == [5, 6, 7]
    assert res.passed


def test_default_window_plus_threshold(hub):
    res = qpn_sequence(hub, 0, default_phi(), 2, "plus")
    assert res.case == "i" and res.N_x == 1
    assert res.plus_failures == () and res.checked_up_to >= 129
    phi = default_phi()
    for N in range(res.N_x, res.checked_up_to + 1, 7):
        assert ball_max_degree(hub, 0, N) <= phi_inverse(phi, 2 * N)


def test_no_hubs_gives_empty_sequence():
    res = qpn_sequence(path_graph(10), 0, default_phi(), 2, "minus")
    assert res.Ns == () and res.exhausted
    with pytest.raises(ArgumentError):
        qpn_sequence(path_graph(10), 0, default_phi(), 2, "sideways")
