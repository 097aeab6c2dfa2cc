"""Build the reference hub window and follow the counting argument on it.

Run: python demos/hub_window_walkthrough.py
"""

import math

from repgraph.enumeration import Caps, count_simple_paths, count_theta_paths
from repgraph.repulsion import check_repulsion, default_hub_spec, generate_hub_graph
from repgraph.temperedness import TemperedSequence, WeightFunction, gamma_series, qpn_sequence


def main() -> None:
    spec = default_hub_spec()
    w = generate_hub_graph(spec)
    print(f"window: {w.vertex_count} vertices, hubs {list(spec.hubs)}, phi = {spec.phi.describe()}")

    rep = check_repulsion(w, spec.phi, spec.n_star, spec.family)
    print(f"repulsion ({spec.family} family): {rep.verdict}")

    seq = qpn_sequence(w, 0, spec.phi, spec.n_star, "minus")
    for s in seq.steps:
        print(f"  N_{s.k} = {s.N:3d}: max degree on the ball {s.max_degree} <= phi^-1(2N+1) = {s.phi_inverse}")

    ts = TemperedSequence.geometric(2, 2)
    gs = gamma_series(WeightFunction.log(), spec.phi, ts)
    print(f"gamma(log) = {gs.gamma:.6f} (+/- {gs.tail_bound:.1e}), q = {gs.q:.2f}")

    caps = Caps(max_walk_length=80, max_path_length=200)
    for N in seq.Ns:
        paths = count_simple_paths(w, 0, N, caps=caps)
        line = f"  N = {N:3d}: |paths| = {paths.count}, exp bound = exp({paths.bound_13:.2f})"
        if caps.allows("walks", N):
            walks = count_theta_paths(w, 0, N, caps=caps)
            line += f", |walks| = {walks.count}"
        print(line + f", q^N = exp({N * math.log(gs.q):.1f})")


if __name__ == "__main__":
    main()
