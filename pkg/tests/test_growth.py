import math

import pytest

from repgraph.applications import ball_growth_check
from repgraph.errors import ArgumentError
from repgraph.graph import bfs_distances


def test_ball_growth_counts(z2):
    rows = ball_growth_check(z2, z2.origin, 5.0, [1, 2, 3])
    assert [r.sphere for r in rows] == [4, 8, 12]
    assert [r.ball for r in rows] == [5, 13, 25]
    assert all(r.passed for r in rows)
    # B_x is fixed by the first radius, so the first ball bound is tight
    assert rows[0].log_ball_bound == pytest.approx(math.log(5))


def test_sphere_failure_detected(z2):
    rows = ball_growth_check(z2, z2.origin, 1.5, [3])
    assert not rows[0].passed_sphere


def test_hub_window_counts(hub):
    d = bfs_distances(hub, 0)
    rows = ball_growth_check(hub, 0, 2.0, [29, 69])
    assert rows[0].ball == sum(1 for v in d if 0 <= v <= 29)


def test_errors(z2):
    with pytest.raises(ArgumentError):
        ball_growth_check(z2, z2.origin, 1.0, [1])
    with pytest.raises(ArgumentError):
        ball_growth_check(z2, z2.origin, 2.0, [0])
