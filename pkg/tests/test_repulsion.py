import numpy as np
import pytest

from repgraph.errors import ArgumentError, GenerationError
from repgraph.graph import GraphWindow, bfs_distances, path_graph, star_graph
from repgraph.phi import PhiFunction, at_least
from repgraph.repulsion import (
    HubFamilySpec,
    check_repulsion,
    classify_vertices,
    default_phi,
    generate_hub_graph,
    random_hub_spec,
)


def brute_repulsive(w, phi, n_star, family):
    deg = w.ambient_degree
    hubs = [v for v in range(w.vertex_count) if deg[v] > n_star]
    for i, x in enumerate(hubs):
        d = bfs_distances(w, x)
        for y in hubs[i + 1:]:
            if d[y] < 0:
                continue
            m = min(deg[x], deg[y]) if family == "minus" else max(deg[x], deg[y])
            if not at_least(d[y], phi(m)):
                return False
    return True


def two_hubs(gap, d0=4, d1=5):
    # spine 0..gap+2, hubs at 1 and 1+gap
    return generate_hub_graph(HubFamilySpec(gap + 3, ((1, d0), (1 + gap, d1)),
                                            PhiFunction.affine(1), 2, "minus"))


def test_generator_spacing_is_checked():
    phi = PhiFunction.affine(2)
    with pytest.raises(GenerationError) as exc:
        generate_hub_graph(HubFamilySpec(20, ((2, 4), (8, 5)), phi, 2, "minus"))
    assert exc.value.pair == (2, 8)
    w = generate_hub_graph(HubFamilySpec(20, ((2, 4), (10, 5)), phi, 2, "minus"))
    assert w.ambient_degree[2] == 4 and w.ambient_degree[10] == 5
    assert w.vertex_count == 20 + 2 + 3


def test_plus_family_needs_increasing_degrees():
    with pytest.raises(GenerationError):
        generate_hub_graph(HubFamilySpec(50, ((2, 5), (40, 4)), PhiFunction.affine(1), 2, "plus"))


def test_minus_and_plus_thresholds():
    w = two_hubs(4)
    phi = PhiFunction.affine(1)
    assert check_repulsion(w, phi, 2, "minus").passed       # 4 >= phi(4)
    rep = check_repulsion(w, phi, 2, "plus")                # 4 < phi(5)
    assert not rep.passed
    v = rep.witnesses[0]
    assert (v.x, v.y, v.distance, v.required) == (1, 5, 4, 5)


def test_star_threshold_excludes_low_degrees():
    w = star_graph(3)
    phi = PhiFunction.affine(10)
    assert check_repulsion(w, phi, 3, "minus").passed
    with pytest.raises(ArgumentError):
        check_repulsion(w, PhiFunction.power(2, shift=-16), 2, "minus")


def test_classification_kernels():
    w = two_hubs(6)
    c = classify_vertices(w, PhiFunction.affine(1), 2)
    assert c.v_star_c == {1, 7}
    assert 4 in c.kernels[1] and 5 not in c.kernels[1]     # open ball of radius phi(4) = 4


def test_default_window_is_plus_repulsive(hub):
    assert check_repulsion(hub, default_phi(), 2, "plus").passed


@pytest.mark.parametrize("family", ["minus", "plus"])
def test_check_agrees_with_brute_force(family):
    rng = np.random.default_rng(7)
    phi = PhiFunction.affine(1, -1)
    for _ in range(40):
        n = int(rng.integers(4, 12))
        edges = [(i, i + 1) for i in range(n - 1)]
        for _ in range(int(rng.integers(0, 6))):
            a, b = sorted(int(v) for v in rng.choice(n, 2, replace=False))
            if (a, b) not in edges:
                edges.append((a, b))
        w = GraphWindow.from_edges(n, edges)
        assert check_repulsion(w, phi, 2, family).passed == brute_repulsive(w, phi, 2, family)


def test_random_specs_generate_valid_windows():
    rng = np.random.default_rng(3)
    for fam in ("minus", "plus"):
        for _ in range(20):
            spec = random_hub_spec(rng, default_phi(), fam)
            w = generate_hub_graph(spec)
            assert check_repulsion(w, spec.phi, spec.n_star, fam).passed


def test_path_graph_has_no_hubs():
    assert check_repulsion(path_graph(10), default_phi(), 2, "minus").witnesses == ()
