"""Acceptance criteria 1-8, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line; the lines are printed at the end of
the session (see ``conftest.py``) and also immediately when run with ``-s``.
"""

import math
import time

import numpy as np

from oracles import brute_animals, brute_greedy, brute_paths
from repgraph.applications import (
    PercolationConfig,
    greedy_score,
    half_line_check,
    path_envelope_check,
    percolation_run,
)
from repgraph.capacity import (
    animal_distance_matrix,
    capacity_bound_15,
    capacity_exact,
    is_path_animal,
    optimality_witness,
)
from repgraph.enumeration import (
    Caps,
    count_animals,
    count_simple_paths,
    enumerate_connected_sets,
    for_each_animal,
    path_profile,
    verify_exponential_bound,
    walk_profile,
    within_log_bound,
)
from repgraph.graph import Animal, bfs_distances, grid_window, half_line, lattice_ball
from repgraph.harness import default_config, emit_report, run_pipeline, validate_config
from repgraph.phi import PhiFunction, phi_inverse
from repgraph.repulsion import default_phi, generate_hub_graph, random_hub_spec
from repgraph.temperedness import (
    TemperedSequence,
    WeightFunction,
    gamma_series,
    qpn_sequence,
)

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_1_counting_oracles():
    t0 = time.perf_counter()
    w = lattice_ball(6)
    x = w.origin
    paths = [count_simple_paths(w, x, N).count for N in range(1, 5)]
    animals = [count_animals(w, x, N).count for N in range(1, 4)]
    brute_p = [brute_paths(w, x, N) for N in range(1, 5)]
    brute_a = [len(brute_animals(w, x, N)) for N in range(1, 4)]
    dt = time.perf_counter() - t0
    ok = (paths == brute_p == [4, 12, 36, 100] and animals == brute_a == [1, 4, 18] and dt < 10)
    record(1, ok, f"paths={paths} animals={animals} oracle agrees, {dt:.2f}s")


def test_criterion_2_log_bound_suite():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    caps = Caps()
    checks = violations = 0
    for i in range(200):
        spec = random_hub_spec(rng, default_phi(), "plus" if i % 2 else "minus")
        w = generate_hub_graph(spec)
        for x in range(w.vertex_count):
            paths = path_profile(w, x, caps.max_path_length, caps=caps)
            walks = walk_profile(w, x, caps.max_walk_length, caps=caps)
            for prof, top in ((paths, caps.max_path_length), (walks, caps.max_walk_length)):
                for N in range(1, top + 1):
                    checks += 1
                    violations += not within_log_bound(prof.counts[N], prof.best[N], 1e-9)
    dt = time.perf_counter() - t0
    record(2, violations == 0 and dt < 300,
           f"{checks} (window, x, N) checks, {violations} violations, {dt:.1f}s")


def _capacity_violations(w, max_order, lams):
    stats = {"sets": 0, "v15": 0, "v14": 0, "paths": 0}

    def visit(cur):
        a = Animal(w, frozenset(cur))
        dm = animal_distance_matrix(a)
        path = is_path_animal(a)
        stats["sets"] += 1
        stats["paths"] += path
        for lam in lams:
            c = capacity_exact(a, lam, distances=dm).value
            stats["v15"] += c > capacity_bound_15(a.order, lam) + 1e-12
            if path:
                stats["v14"] += c > 1 + (a.order - 1) / lam + 1e-12

    enumerate_connected_sets(w, max_order, visit)
    return stats


def test_criterion_3_capacity_suite():
    t0 = time.perf_counter()
    lams = [2.0, 3.0, 4.0, 5.0, 6.0]
    total = _capacity_violations(grid_window(6, 6), 9, lams)
    rng = np.random.default_rng(77)
    for i in range(50):
        w = generate_hub_graph(random_hub_spec(rng, default_phi(), "plus" if i % 2 else "minus"))
        s = _capacity_violations(w, 9, lams)
        for k in total:
            total[k] += s[k]
    wit = optimality_witness(100, 0.05)
    dt = time.perf_counter() - t0
    ok = total["v15"] == 0 and total["v14"] == 0 and wit.holds and wit.capacity == 2 and dt < 300
    record(3, ok, f"{total['sets']} animals ({total['paths']} paths) x {len(lams)} lambdas, "
                  f"{total['v15']}+{total['v14']} violations, witness C={wit.capacity} > "
                  f"{wit.threshold:.4f}, {dt:.1f}s")


def test_criterion_4_gamma_golden():
    t0 = time.perf_counter()
    phi = PhiFunction.loglog(1.0, 1.0)
    ts = TemperedSequence.tower()
    gs = gamma_series(WeightFunction.log(), phi, ts, tol=1e-9)
    companion = gamma_series(WeightFunction.tlogt(), phi, ts)
    dt = time.perf_counter() - t0
    exact = math.e * math.pi ** 2 / 3
    err = abs(gs.gamma - exact)
    ok = (gs.converged and err < 1e-6 and gs.tail_bound < 1e-6
          and companion.status == "divergent" and not companion.converged and dt < 1)
    record(4, ok, f"gamma={gs.gamma:.12f} vs e*pi^2/3 (error {err:.1e}, tail {gs.tail_bound:.1e}); "
                  f"t log t companion {companion.status}; {dt:.2f}s")


def test_criterion_5_reference_window():
    t0 = time.perf_counter()
    cfg = default_config()
    report = run_pipeline(cfg)
    w = generate_hub_graph(cfg.hub)
    x = 0
    gamma = report.step("gamma").data["gamma"] + report.step("gamma").data["tail_bound"]
    q = math.exp(gamma)
    seq = qpn_sequence(w, x, cfg.phi, cfg.n_star, "minus")
    dist = bfs_distances(w, x)
    problems = []
    for N in seq.Ns:
        # ball scan, independent of the sequence code
        top = max(w.ambient_degree[v] for v, d in enumerate(dist) if 0 <= d <= N)
        if top > phi_inverse(cfg.phi, 2 * N + 1):
            problems.append(f"ball degree at {N}")
    counts = [count_simple_paths(w, x, N, caps=cfg.caps) for N in seq.Ns
              if cfg.caps.allows("paths", N)]
    problems += [f"paths at {v.N}" for v in verify_exponential_bound(counts, q) if not v.passed]
    animals = 0
    for N in seq.Ns:
        if not cfg.caps.allows("animals", N):
            continue

        def visit(cur, N=N):
            nonlocal animals
            animals += 1
            n_a = max(w.ambient_degree[v] for v in cur)
            if N < cfg.phi(n_a) / 2:
                problems.append(f"bad animal at {N}")
            if sum(math.log(w.ambient_degree[v]) for v in cur) / N > gamma + 1e-12:
                problems.append(f"G(A; log) at {N}")

        for_each_animal(w, x, N, visit, caps=cfg.caps)
    dt = time.perf_counter() - t0
    ok = len(seq.Ns) >= 3 and not problems and report.overall and dt < 600
    record(5, ok, f"N_k={list(seq.Ns)}, gamma={gamma:.6f}, {len(counts)} path counts and "
                  f"{animals} animals checked, {len(problems)} violations, pipeline "
                  f"{'pass' if report.overall else 'fail'}, {dt:.1f}s")


def test_criterion_6_percolation():
    t0 = time.perf_counter()
    hl = percolation_run(half_line(12), 0, PercolationConfig("bond", 0.5, 100_000, range(1, 11), 12345))
    rows = half_line_check(hl, sigmas=3)
    worst = max(abs(r.z) for r in rows)
    cfg = default_config()
    w = generate_hub_graph(cfg.hub)
    gs = gamma_series(cfg.g, cfg.phi, cfg.ts, tol=cfg.tol)
    p = 0.5 / gs.q
    radii = tuple(range(1, 11))
    table = percolation_run(w, 0, PercolationConfig("bond", p, 100_000, radii, 12345))
    prof = path_profile(w, 0, max(radii))
    env = path_envelope_check(table, {N: prof.counts[N] for N in radii})
    dt = time.perf_counter() - t0
    ok = all(r.passed for r in rows) and all(r.passed for r in env) and dt < 300
    record(6, ok, f"half-line max |z|={worst:.2f} over N<=10; hub window p={p:.3g}: "
                  f"{sum(r.passed for r in env)}/{len(env)} below envelope; {dt:.1f}s")


def test_criterion_7_greedy_animals():
    t0 = time.perf_counter()
    w = grid_window(9, 9)
    x = 40
    mismatches = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        wts = rng.exponential(size=w.vertex_count)
        N = 1 + seed % 4
        got = greedy_score(w, x, N, wts).value
        mismatches += not math.isclose(got, brute_greedy(w, x, N, wts), rel_tol=1e-12)
    cfg = validate_config(_GREEDY_CONFIG)
    report = run_pipeline(cfg)
    rows = [v for v in report.verdicts if v.check == "greedy-exceedance"]
    last = rows[-1]
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and last.passed and report.overall and dt < 600
    record(7, ok, f"100 exact/brute-force instances, {mismatches} mismatches; N={last.N}: "
                  f"exceedance frequency {last.value} <= 10 x envelope = {last.bound:.3g}; {dt:.1f}s")


_GREEDY_CONFIG = """\
kind = "greedy"
seed = 2024
family = "plus"
[graph.hub]
spine_length = 160
hubs = [[10, 5], [30, 6], [70, 7], [130, 8]]
[phi]
family = "power"
exponent = 2
shift = -16
floor = 0.5
[sequence]
rule = "geometric"
c = 2
r = 2
[caps]
max_animal_order = 200
[greedy]
law = "exponential"
C = 1.0
scaled = true
replications = 10000
y_offset = 1.0
"""


_PERCOLATION_CONFIG = """\
kind = "percolation"
seed = 99
[phi]
family = "power"
exponent = 2
shift = -16
floor = 0.5
[sequence]
rule = "geometric"
c = 2
r = 2
[percolation]
p = 0.3
trials = 5000
radii = [1, 2, 3, 4, 5]
"""


def test_criterion_8_determinism():
    t0 = time.perf_counter()
    same = []
    for text in (None, _GREEDY_CONFIG.replace("10000", "2000"), _PERCOLATION_CONFIG):
        outs = []
        for _ in range(2):
            cfg = default_config() if text is None else validate_config(text)
            r = run_pipeline(cfg)
            outs.append(tuple(emit_report(r, f) for f in ("csv", "json-lines", "human")))
        same.append(outs[0] == outs[1])
    dt = time.perf_counter() - t0
    record(8, all(same), f"paths, greedy and percolation pipelines run twice: "
                         f"{sum(same)}/{len(same)} byte-identical in all formats; {dt:.1f}s")
