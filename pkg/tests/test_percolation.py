import math
from itertools import product

import pytest

from oracles import is_connected
from repgraph.applications import (
    PercolationConfig,
    half_line_check,
    path_envelope_check,
    percolation_run,
)
from repgraph.errors import ArgumentError, WindowTooSmallError
from repgraph.graph import GraphWindow, bfs_distances, grid_window, half_line


def exact_reach(w, x, p, N, mode):
    """Sum over every open/closed configuration."""
    dist = bfs_distances(w, x)
    objs = w.edges() if mode == "bond" else [v for v in range(w.vertex_count) if v != x]
    total = 0.0
    for state in product((0, 1), repeat=len(objs)):
        prob = math.prod(p if s else 1 - p for s in state)
        if mode == "bond":
            open_edges = [e for e, s in zip(objs, state) if s]
            sub = GraphWindow.from_edges(w.vertex_count, open_edges)
            reach = bfs_distances(sub, x)
            hit = any(r >= 0 and dist[v] >= N for v, r in enumerate(reach))
        else:
            open_v = {x} | {v for v, s in zip(objs, state) if s}
            sub = GraphWindow.from_edges(w.vertex_count, [(a, b) for a, b in w.edges()
                                                         if a in open_v and b in open_v])
            reach = bfs_distances(sub, x)
            hit = any(r >= 0 and dist[v] >= N for v, r in enumerate(reach))
        total += prob * hit
    return total


@pytest.mark.parametrize("mode", ["bond", "site"])
def test_matches_exhaustive_configuration_sum(mode):
    w = grid_window(2, 3)
    cfg = PercolationConfig(mode, 0.6, 20000, (1, 2, 3), 99)
    table = percolation_run(w, 0, cfg)
    for r in table.rows:
        exact = exact_reach(w, 0, 0.6, r.N, mode)
        se = math.sqrt(exact * (1 - exact) / cfg.trials)
        assert abs(r.estimate - exact) <= 4 * se + 1e-12


def test_half_line_closed_form():
    cfg = PercolationConfig("bond", 0.5, 20000, range(1, 9), 7)
    table = percolation_run(half_line(10), 0, cfg)
    rows = half_line_check(table)
    assert all(r.passed for r in rows)
    assert rows[0].exact == 0.5


def test_site_mode_reports_both_estimates():
    cfg = PercolationConfig("site", 0.5, 4000, (1, 2), 3)
    r = percolation_run(half_line(5), 0, cfg).row(1)
    assert r.hits_unconditioned <= r.hits
    assert r.estimate_unconditioned == pytest.approx(r.estimate / 2, abs=0.05)


def test_determinism_and_threads():
    cfg = PercolationConfig("bond", 0.5, 3000, (1, 2, 3), 11)
    a = percolation_run(grid_window(4, 4), 5, cfg)
    b = percolation_run(grid_window(4, 4), 5, cfg, threads=2)
    assert a == b


def test_envelope_on_hub_window(hub):
    cfg = PercolationConfig("bond", 0.5 / 149.6, 2000, (1, 2, 3), 5)
    table = percolation_run(hub, 0, cfg)
    rows = path_envelope_check(table, {1: 1, 2: 1, 3: 1})
    assert all(r.passed for r in rows)


def test_config_validation():
    with pytest.raises(ArgumentError):
        PercolationConfig("edge", 0.5, 10, (1,), 0)
    with pytest.raises(ArgumentError):
        PercolationConfig("bond", 1.5, 10, (1,), 0)
    with pytest.raises(ArgumentError):
        PercolationConfig("bond", 0.5, 10, (0,), 0)
    with pytest.raises(WindowTooSmallError):
        percolation_run(half_line(3), 0, PercolationConfig("bond", 0.5, 10, (5,), 0))


def test_connected_helper_sanity():
    assert is_connected(grid_window(2, 2), {0, 1, 3})
