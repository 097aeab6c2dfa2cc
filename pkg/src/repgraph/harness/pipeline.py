"""End-to-end experiment: generate, check, sequence, gamma, then the kind-specific step.

Each step appends a :class:`StepResult` to the report.  A step that raises
is recorded with status ``error`` and stops the run; so does a failed
repulsion check, since nothing downstream is meaningful on a window that is
not repulsive.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .. import __version__
from ..applications import (
    PercolationConfig,
    WeightModel,
    ball_growth_check,
    greedy_growth_experiment,
    path_envelope_check,
    percolation_run,
    randic_max,
)
from ..capacity import (
    animal_distance_matrix,
    capacity_bound_15,
    capacity_exact,
    is_path_animal,
    optimality_witness,
    random_spanning_tree,
    tree_animal,
)
from ..enumeration import (
    count_simple_paths,
    count_theta_paths,
    enumerate_connected_sets,
    for_each_animal,
    animal_profile,
    path_profile,
    resolve_threads,
    verify_exponential_bound,
    within_log_bound,
    CountResult,
)
from ..errors import ArgumentError, EnumerationCapError, ExperimentRefused, RepgraphError
from ..graph import Animal, GraphWindow, grid_window, lattice_ball, read_graph
from ..repulsion import check_repulsion, generate_hub_graph
from ..rng import substream
from ..temperedness import WeightFunction, gamma_series, qpn_sequence
from .config import ExperimentConfig
from .report import Report, StepResult

PLANS = {
    "paths": ("generate", "check", "sequence", "gamma", "paths"),
    "animals": ("generate", "check", "sequence", "gamma", "animals"),
    "randic": ("generate", "check", "sequence", "gamma", "randic"),
    "percolation": ("generate", "check", "sequence", "gamma", "percolation"),
    "greedy": ("generate", "check", "sequence", "gamma", "greedy"),
    "capacity": ("generate", "capacity"),
}


@dataclass
class Context:
    cfg: ExperimentConfig
    window: GraphWindow | None = None
    x: int = 0
    Ns: tuple[int, ...] = ()
    gamma: float | None = None
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def q(self) -> float:
        return math.exp(self.gamma)


class _Stop(Exception):
    pass


def build_window(cfg: ExperimentConfig) -> GraphWindow:
    src = cfg.graph.get("source", "hub")
    if src == "hub":
        return generate_hub_graph(cfg.hub)
    if src == "file":
        return read_graph(cfg.graph["path"])
    if src == "grid":
        return grid_window(cfg.graph["rows"], cfg.graph["cols"])
    return lattice_ball(cfg.graph["radius"], cfg.graph.get("dim", 2))


# ---------------------------------------------------------------------------
# steps
# ---------------------------------------------------------------------------


def _step_generate(ctx: Context, st: StepResult) -> None:
    w = build_window(ctx.cfg)
    ctx.window = w
    if ctx.cfg.x is not None:
        w.check_vertex(ctx.cfg.x)
        ctx.x = ctx.cfg.x
    else:
        ctx.x = w.origin if w.origin is not None else 0
    st.put("vertices", w.vertex_count)
    st.put("edges", w.edge_count)
    st.put("max_degree", w.max_degree)
    st.put("standalone", w.is_standalone)
    st.put("x", ctx.x)


def _step_check(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    rep = check_repulsion(ctx.window, cfg.phi, cfg.n_star, cfg.family)
    st.put("family", cfg.family)
    st.put("witnesses", [list(v) for v in rep.witnesses[:20]])
    st.add("repulsion", None, len(rep.witnesses), 0, rep.passed,
           f"family={cfg.family} n_star={cfg.n_star}")
    if not rep.passed:
        raise _Stop


def _step_sequence(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    res = qpn_sequence(ctx.window, ctx.x, cfg.phi, cfg.n_star, "minus")
    ctx.Ns = res.Ns
    st.put("N_k", list(res.Ns))
    st.put("exhausted", res.exhausted)
    st.put("reason", res.reason)
    for s in res.steps:
        st.add("ball-degree", s.N, s.max_degree, s.phi_inverse, s.holds,
               f"x_k={s.pivot} x_k+1={s.next_vertex}")
    if cfg.family == "plus":
        plus = qpn_sequence(ctx.window, ctx.x, cfg.phi, cfg.n_star, "plus")
        st.put("N_x", plus.N_x)
        st.put("plus_case", plus.case)
        if plus.N_x is not None:
            st.add("ball-degree-plus", plus.N_x, len(plus.plus_failures), 0,
                   not plus.plus_failures, f"checked up to N={plus.checked_up_to}")
    if not ctx.Ns:
        raise ArgumentError("no radii N_k available around x in this window")


def _gamma_for(g: WeightFunction, ctx: Context, st: StepResult, prefix: str = ""):
    cfg = ctx.cfg
    gs = gamma_series(g, cfg.phi, cfg.ts, tol=cfg.tol)
    st.put(prefix + "g", g.describe())
    st.put(prefix + "status", gs.status)
    st.put(prefix + "gamma", gs.gamma)
    st.put(prefix + "tail_bound", gs.tail_bound)
    st.put(prefix + "q", gs.q)
    st.put(prefix + "terms", gs.terms)
    st.put(prefix + "partial_sums", list(gs.partial_sums[:8]))
    return gs


def _step_gamma(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    st.put("phi", cfg.phi.describe())
    st.put("sequence", cfg.ts.describe())
    gs = _gamma_for(cfg.g, ctx, st)
    st.add("gamma-series", None, gs.gamma_upper, None, gs.converged, gs.message)
    if not gs.converged:
        raise ExperimentRefused(f"gamma series not certified ({gs.status}): {gs.message}")
    ctx.gamma = gs.gamma_upper


def _good_scan(ctx: Context, st: StepResult, N: int, g: WeightFunction) -> None:
    w = ctx.window
    phi = ctx.cfg.phi
    deg = w.ambient_degree
    gv = [g(d) if d >= 1 else 0.0 for d in deg]
    need = {}
    stats = {"bad": 0, "best": -math.inf, "min_margin": math.inf}

    def visit(cur):
        n_a = max(deg[v] for v in cur)
        half = need.get(n_a)
        if half is None:
            half = need[n_a] = phi(n_a) / 2
        margin = N - half
        if margin < stats["min_margin"]:
            stats["min_margin"] = margin
        if margin < 0:
            stats["bad"] += 1
        s = sum(gv[v] for v in cur)
        if s > stats["best"]:
            stats["best"] = s

    count = for_each_animal(w, ctx.x, N, visit, caps=ctx.cfg.caps)
    st.add("good-animals", N, stats["bad"], 0, stats["bad"] == 0,
           f"animals={count} min_margin={stats['min_margin']:g}")
    avg = stats["best"] / N
    st.add("degree-average", N, avg, ctx.gamma, avg <= ctx.gamma + 1e-12, g.describe())


def _growth_rows(ctx: Context, st: StepResult, Ns) -> None:
    rows = ball_growth_check(ctx.window, ctx.x, ctx.q, Ns)
    for r in rows:
        st.add("sphere-growth", r.N, r.sphere, f"exp({r.log_qN:.6g})", r.passed_sphere)
        st.add("ball-growth", r.N, r.ball, f"exp({r.log_ball_bound:.6g})", r.passed_ball)


def _feasible(ctx: Context, st: StepResult, kind: str) -> list[int]:
    caps = ctx.cfg.caps
    ok = [N for N in ctx.Ns if caps.allows(kind, N)]
    skipped = [N for N in ctx.Ns if not caps.allows(kind, N)]
    if skipped:
        st.put(f"skipped_{kind}", skipped)
    return ok


def _step_paths(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    counts = []
    for N in _feasible(ctx, st, "paths"):
        c = count_simple_paths(ctx.window, ctx.x, N, caps=cfg.caps, threads=cfg.threads)
        counts.append(c)
        st.add("path-log-bound", N, c.log_count, c.bound_13, within_log_bound(c.count, c.bound_13))
        if cfg.params.get("walks", True) and not cfg.caps.allows("walks", N):
            st.data.setdefault("skipped_walks", []).append(N)
        elif cfg.params.get("walks", True):
            try:
                t = count_theta_paths(ctx.window, ctx.x, N, caps=cfg.caps, threads=cfg.threads)
            except EnumerationCapError:
                st.data.setdefault("skipped_walks", []).append(N)
                continue
            st.add("walk-log-bound", N, t.log_count, t.bound_12, within_log_bound(t.count, t.bound_12))
            st.add("paths-in-walks", N, c.count, t.count, c.count <= t.count)
    for v in verify_exponential_bound(counts, ctx.q):
        st.add("path-growth", v.N, v.count, f"exp({v.N * ctx.gamma:.6g})", v.passed)
    for N in _feasible(ctx, st, "animals"):
        _good_scan(ctx, st, N, cfg.g)
    _growth_rows(ctx, st, ctx.Ns)


def _step_animals(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    counts = []
    for N in _feasible(ctx, st, "animals"):
        prof = animal_profile(ctx.window, ctx.x, N, caps=cfg.caps, threads=cfg.threads)
        counts.append(CountResult(N, prof[N]))
        _good_scan(ctx, st, N, cfg.g)
    for v in verify_exponential_bound(counts, ctx.q):
        st.add("animal-growth", v.N, v.count, f"exp({v.N * ctx.gamma:.6g})", v.passed)


def _step_randic(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    theta = float(cfg.params.get("theta", -0.5))
    st.put("theta", theta)
    # the exponent t^(2 theta + 1) is recorded alongside for comparison
    alt = None
    if 2 * theta + 1 >= 0:
        alt_gs = _gamma_for(WeightFunction.power(2 * theta), ctx, st, prefix="alt_")
        alt = alt_gs.gamma_upper if alt_gs.converged else None
    for N in _feasible(ctx, st, "animals"):
        r = randic_max(ctx.window, ctx.x, N, theta, caps=cfg.caps)
        ok = r.within(ctx.gamma)
        detail = f"witness_size={len(r.witness)}"
        if alt is not None:
            detail += f" alt_exponent_holds={r.within(alt)}"
        st.add("randic-growth", N, r.value, f"exp({N * ctx.gamma:.6g})", ok, detail)


def _step_percolation(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    prm = cfg.params
    p = prm["p"] if "p" in prm else prm.get("p_factor", 0.5) / ctx.q
    radii = tuple(prm["radii"])
    pc = PercolationConfig(prm["mode"], p, prm["trials"], radii, cfg.seed)
    st.put("p", p)
    table = percolation_run(ctx.window, ctx.x, pc, threads=resolve_threads(cfg.threads))
    prof = path_profile(ctx.window, ctx.x, max(radii), caps=cfg.caps)
    counts = {N: prof.counts[N] for N in radii}
    st.put("estimates", [r.estimate for r in table.rows])
    if pc.mode == "site":
        st.put("estimates_unconditioned", [r.estimate_unconditioned for r in table.rows])
    for row in path_envelope_check(table, counts):
        st.add("reach-envelope", row.N, row.estimate, row.envelope + 3 * row.stderr, row.passed,
               f"paths={row.paths} stderr={row.stderr:.3g}")


def _step_greedy(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    prm = cfg.params
    model = WeightModel(prm["law"], value=prm.get("value", 1.0), rate=prm.get("rate", 1.0),
                        bound=prm.get("bound", 1.0), C=prm.get("C", 1.0),
                        scaled=prm.get("scaled", True), degrees=ctx.window.ambient_degree)
    Y = ctx.gamma * model.C + prm.get("y_offset", 1.0)
    Ns = _feasible(ctx, st, "animals")
    st.put("Y", Y)
    rep = greedy_growth_experiment(ctx.window, ctx.x, Ns, model, prm["replications"], Y,
                                   ctx.gamma, seed=cfg.seed, t_max=prm.get("t_max", 1.0),
                                   caps=cfg.caps)
    slack = prm.get("slack", 10.0)
    for r in rep.rows:
        st.add("greedy-exceedance", r.N, r.frequency, slack * r.envelope, r.within(slack),
               f"mean_ratio={r.mean_ratio:.6g} t={r.chernoff_t:.6g}")


def _step_capacity(ctx: Context, st: StepResult) -> None:
    cfg = ctx.cfg
    w = ctx.window
    lams = [float(v) for v in cfg.params["lambdas"]]
    max_order = int(cfg.params.get("max_order", 9))
    n_trees = int(cfg.params.get("spanning_trees", 0))
    rng = substream(cfg.seed or 0, "misc", 0)
    bad15 = {lam: 0 for lam in lams}
    bad14 = {lam: 0 for lam in lams}
    bad_span = {lam: 0 for lam in lams}
    seen = [0, 0]

    def visit(cur):
        a = Animal(w, frozenset(cur))
        dm = animal_distance_matrix(a)
        path = is_path_animal(a)
        trees = [random_spanning_tree(a, rng) for _ in range(n_trees)]
        seen[0] += 1
        seen[1] += path
        for lam in lams:
            c = capacity_exact(a, lam, distances=dm).value
            if c > capacity_bound_15(a.order, lam) + 1e-12:
                bad15[lam] += 1
            if path and c > 1 + (a.order - 1) / lam + 1e-12:
                bad14[lam] += 1
            for t in trees:
                if capacity_exact(tree_animal(a, t), lam).value < c:
                    bad_span[lam] += 1

    enumerate_connected_sets(w, max_order, visit, caps=cfg.caps)
    st.put("animals", seen[0])
    st.put("path_animals", seen[1])
    for lam in lams:
        st.add("capacity-bound", None, bad15[lam], 0, bad15[lam] == 0, f"lambda={lam:g}")
        st.add("path-capacity-bound", None, bad14[lam], 0, bad14[lam] == 0, f"lambda={lam:g}")
        if n_trees:
            st.add("spanning-capacity", None, bad_span[lam], 0, bad_span[lam] == 0, f"lambda={lam:g}")
    wit = optimality_witness(100, 0.05)
    st.add("capacity-optimality", 100, wit.capacity, wit.threshold, wit.holds, "epsilon=0.05")


STEPS: dict[str, Callable[[Context, StepResult], None]] = {
    "generate": _step_generate,
    "check": _step_check,
    "sequence": _step_sequence,
    "gamma": _step_gamma,
    "paths": _step_paths,
    "animals": _step_animals,
    "randic": _step_randic,
    "percolation": _step_percolation,
    "greedy": _step_greedy,
    "capacity": _step_capacity,
}


def run_pipeline(cfg: ExperimentConfig, steps: tuple[str, ...] | None = None) -> Report:
    """Run the configured plan (or an explicit list of step names)."""
    plan = steps if steps is not None else PLANS[cfg.kind]
    report = Report(__version__, cfg.seed, cfg.echo())
    ctx = Context(cfg)
    for name in plan:
        st = StepResult(name)
        report.steps.append(st)
        t0 = time.perf_counter()
        try:
            STEPS[name](ctx, st)
        except _Stop:
            report.timings[name] = time.perf_counter() - t0
            break
        except (RepgraphError, ValueError, KeyError, OSError) as exc:
            st.status = "error"
            st.error = f"{type(exc).__name__}: {exc}"
            report.timings[name] = time.perf_counter() - t0
            break
        report.timings[name] = time.perf_counter() - t0
    return report
