import math

import pytest

from oracles import brute_randic
from repgraph.applications import randic_index, randic_max
from repgraph.graph import Animal, grid_window, path_graph


@pytest.mark.parametrize("theta", [-1.0, -0.5, 0.5, 1.0])
@pytest.mark.parametrize("N", [2, 3, 4])
def test_max_matches_brute_force(z2, theta, N):
    r = randic_max(z2, z2.origin, N, theta)
    assert r.value == pytest.approx(brute_randic(z2, z2.origin, N, theta))
    assert randic_index(Animal(z2, frozenset(r.witness)), theta) == pytest.approx(r.value)


def test_grid_golden(z2):
    assert randic_max(z2, z2.origin, 3, 1.0).value == 32


def test_intrinsic_degrees():
    w = grid_window(3, 3)
    a = Animal(w, frozenset({0, 1, 2}))
    # ambient: 0-1 (2*3), 1-2 (3*2); intrinsic: (1*2) twice
    assert randic_index(a, 1.0) == 12
    assert randic_index(a, 1.0, intrinsic=True) == 4
    assert randic_max(w, 0, 3, 1.0, intrinsic=True).value == pytest.approx(4)


def test_within_uses_log_scale():
    r = randic_max(path_graph(6), 0, 4, -0.5)
    assert r.within(math.log(r.value) / 4 + 1e-6)
    assert not r.within(math.log(r.value) / 4 - 1e-3)
