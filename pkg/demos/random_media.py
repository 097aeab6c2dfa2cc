"""Percolation reach probabilities and greedy animals on the reference window.

Run: python demos/random_media.py
"""

from repgraph.applications import (
    PercolationConfig,
    WeightModel,
    greedy_growth_experiment,
    half_line_check,
    path_envelope_check,
    percolation_run,
)
from repgraph.enumeration import Caps, path_profile
from repgraph.graph import half_line
from repgraph.repulsion import default_hub_spec, generate_hub_graph
from repgraph.temperedness import TemperedSequence, WeightFunction, gamma_series, qpn_sequence


def main() -> None:
    cfg = PercolationConfig("bond", 0.5, 20_000, range(1, 9), 1)
    print("half-line, p = 0.5:")
    for r in half_line_check(percolation_run(half_line(10), 0, cfg)):
        print(f"  N={r.N}: estimate {r.estimate:.4f}  exact {r.exact:.4f}  z={r.z:+.2f}")

    spec = default_hub_spec()
    w = generate_hub_graph(spec)
    ts = TemperedSequence.geometric(2, 2)
    g_paths = gamma_series(WeightFunction.log(), spec.phi, ts)
    p = 0.5 / g_paths.q
    radii = (1, 2, 3, 4)
    table = percolation_run(w, 0, PercolationConfig("bond", p, 20_000, radii, 1))
    counts = path_profile(w, 0, 4).counts
    print(f"\nhub window, p = 0.5/q = {p:.4g}:")
    for r in path_envelope_check(table, {N: counts[N] for N in radii}):
        verdict = "ok" if r.passed else "ABOVE"
        print(f"  N={r.N}: estimate {r.estimate:.2e}, envelope {r.envelope:.2e}"
              f" + 3 stderr {3 * r.stderr:.1e}: {verdict}")

    g_animals = gamma_series(WeightFunction.tlogt(), spec.phi, ts)
    Ns = qpn_sequence(w, 0, spec.phi, spec.n_star, "minus").Ns
    model = WeightModel("exponential", C=1.0, scaled=True)
    Y = g_animals.gamma_upper + 1
    rep = greedy_growth_experiment(w, 0, Ns, model, 2000, Y, g_animals.gamma_upper,
                                   seed=1, caps=Caps(max_animal_order=200))
    print(f"\ngreedy animals, Y = gamma C + 1 = {Y:.3f}:")
    for r in rep.rows:
        print(f"  N={r.N}: mean S_N/N = {r.mean_ratio:.3f}, max {r.max_ratio:.3f}, "
              f"exceedances {r.exceedances}/{r.replications}")


if __name__ == "__main__":
    main()
