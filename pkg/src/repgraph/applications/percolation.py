"""Bernoulli bond and site percolation on a ball: reach probabilities.

For each trial the edges (bond mode) or vertices (site mode) of the ball
``B_R(x)`` are opened independently with probability ``p`` and the open
cluster of ``x`` is formed with union-find.  The cluster *reaches* radius N
when it contains a vertex at distance at least N from ``x``; only edges
with an endpoint at distance ``< R`` can matter for radii up to ``R``.

Object ``i`` of trial ``k`` is open iff its uniform from
``rng.uniforms(seed, mode, k, ...)`` is below ``p``, so runs at different
``p`` share their randomness and the estimates are monotone in ``p`` and in
``N`` for every seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError
from ..graph import GraphWindow, require_exact_ball
from ..rng import uniforms

MODES = ("bond", "site")


@dataclass(frozen=True)
class PercolationConfig:
    mode: str
    p: float
    trials: int
    reach_radii: tuple[int, ...]
    rng_seed: int

    def __post_init__(self):
        if self.mode not in MODES:
            raise ArgumentError(f"mode must be 'bond' or 'site', got {self.mode!r}")
        if not 0 <= self.p <= 1:
            raise ArgumentError("p must lie in [0, 1]")
        if self.trials < 1:
            raise ArgumentError("trials must be >= 1")
        radii = tuple(sorted({int(r) for r in self.reach_radii}))
        if not radii or radii[0] < 1:
            raise ArgumentError("reach radii must be positive")
        object.__setattr__(self, "reach_radii", radii)


@dataclass(frozen=True)
class ReachRow:
    N: int
    hits: int
    trials: int
    hits_unconditioned: int | None = None   # site mode: x itself also drawn open

    @property
    def estimate(self) -> float:
        return self.hits / self.trials

    @property
    def stderr(self) -> float:
        q = self.estimate
        return math.sqrt(q * (1 - q) / self.trials)

    @property
    def estimate_unconditioned(self) -> float | None:
        return None if self.hits_unconditioned is None else self.hits_unconditioned / self.trials

    @property
    def stderr_unconditioned(self) -> float | None:
        q = self.estimate_unconditioned
        return None if q is None else math.sqrt(q * (1 - q) / self.trials)


@dataclass(frozen=True)
class PercolationTable:
    x: int
    config: PercolationConfig
    rows: tuple[ReachRow, ...]

    def row(self, N: int) -> ReachRow:
        for r in self.rows:
            if r.N == N:
                return r
        raise KeyError(N)


def _find(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def _ball_setup(w: GraphWindow, x: int, R: int):
    dist = require_exact_ball(w, x, R)
    verts = [v for v, d in enumerate(dist) if 0 <= d <= R]
    local = {v: i for i, v in enumerate(verts)}
    ldist = [dist[v] for v in verts]
    edges = [(local[u], local[v]) for u, v in w.edges()
             if u in local and v in local and min(dist[u], dist[v]) < R]
    return verts, local, ldist, edges


def _run_trials(args):
    mode, p, seed, trial_range, n_vertices, edges, ldist, x_local, radii = args
    hits = [0] * len(radii)
    hits_u = [0] * len(radii)
    n_obj = len(edges) if mode == "bond" else n_vertices
    for t in trial_range:
        u = uniforms(seed, mode, t, n_obj) if n_obj else np.empty(0)
        parent = list(range(n_vertices))
        if mode == "bond":
            for (a, b), ue in zip(edges, u):
                if ue < p:
                    ra, rb = _find(parent, a), _find(parent, b)
                    if ra != rb:
                        parent[ra] = rb
            x_open = True
        else:
            is_open = u < p
            x_open = bool(is_open[x_local])
            is_open[x_local] = True
            for a, b in edges:
                if is_open[a] and is_open[b]:
                    ra, rb = _find(parent, a), _find(parent, b)
                    if ra != rb:
                        parent[ra] = rb
        rx = _find(parent, x_local)
        reach = 0
        for v in range(n_vertices):
            if ldist[v] > reach and _find(parent, v) == rx:
                reach = ldist[v]
        for i, N in enumerate(radii):
            if reach >= N:
                hits[i] += 1
                if x_open:
                    hits_u[i] += 1
    return hits, hits_u


def percolation_run(w: GraphWindow, x: int, cfg: PercolationConfig,
                    threads: int = 1) -> PercolationTable:
    """Monte-Carlo reach probabilities of the open cluster of ``x``.

    Site mode conditions ``x`` open for the main estimate and also reports
    the unconditioned frequency (``x`` drawn like every other vertex).
    """
    R = max(cfg.reach_radii)
    verts, local, ldist, edges = _ball_setup(w, x, R)
    x_local = local[x]
    radii = cfg.reach_radii
    chunks = _split(cfg.trials, max(1, threads))
    tasks = [(cfg.mode, cfg.p, cfg.rng_seed, rng_, len(verts), edges, ldist, x_local, radii)
             for rng_ in chunks]
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_run_trials, tasks))
    else:
        parts = [_run_trials(t) for t in tasks]
    hits = [sum(h[0][i] for h in parts) for i in range(len(radii))]
    hits_u = [sum(h[1][i] for h in parts) for i in range(len(radii))]
    rows = tuple(
        ReachRow(N, hits[i], cfg.trials, hits_u[i] if cfg.mode == "site" else None)
        for i, N in enumerate(radii)
    )
    return PercolationTable(x, cfg, rows)


def _split(n: int, k: int) -> list[range]:
    step = -(-n // k)
    return [range(i, min(i + step, n)) for i in range(0, n, step)]


@dataclass(frozen=True)
class EnvelopeRow:
    N: int
    estimate: float
    stderr: float
    paths: int
    envelope: float       # min(1, p^N |Sigma_N|)
    passed: bool


def path_envelope_check(table: PercolationTable, path_counts: dict[int, int]) -> list[EnvelopeRow]:
    """Compare each estimate with ``min(1, p^N |Sigma_N(x)|) + 3 stderr``."""
    p = table.config.p
    out = []
    for r in table.rows:
        c = path_counts[r.N]
        env = min(1.0, (p ** r.N) * c)
        out.append(EnvelopeRow(r.N, r.estimate, r.stderr, c, env,
                               r.estimate <= env + 3 * r.stderr + 1e-15))
    return out


@dataclass(frozen=True)
class ClosedFormRow:
    N: int
    estimate: float
    stderr: float
    exact: float
    z: float
    passed: bool


def half_line_check(table: PercolationTable, sigmas: float = 3.0) -> list[ClosedFormRow]:
    """Bond percolation from the end of a half-line: ``P(reach N) = p^N``.

    A row passes when the estimate is within ``sigmas`` standard errors of
    the exact value, the standard error being taken at the exact value.
    """
    p = table.config.p
    n = table.config.trials
    out = []
    for r in table.rows:
        exact = p ** r.N
        se = math.sqrt(exact * (1 - exact) / n)
        z = (r.estimate - exact) / se if se > 0 else (0.0 if r.estimate == exact else math.inf)
        out.append(ClosedFormRow(r.N, r.estimate, se, exact, z, abs(z) <= sigmas))
    return out
