"""Experiment configuration: a TOML file validated into :class:`ExperimentConfig`.

Grammar (all keys optional unless noted)::

    kind   = "paths"        # paths | animals | randic | percolation | greedy | capacity
    seed   = 1              # required for percolation and greedy
    x      = 0              # vertex; default: window origin, else 0
    family = "plus"         # minus | plus
    n_star = 2
    preset = "paths-default"   # weight g; default depends on kind
    tol    = 1e-9
    output = "report.csv"
    format = "csv"          # csv | json-lines | human

    [graph]                 # source = "hub" (default) | "file" | "grid" | "lattice"
    source = "hub"
    path = "g.txt"          # file
    rows = 6  cols = 6      # grid
    radius = 8  dim = 2     # lattice
    [graph.hub]             # spine_length, hubs = [[pos, degree], ...]

    [phi]                   # family = loglog | power | affine | table, plus parameters
    [sequence]              # rule = tower | geometric | explicit, plus parameters
    [caps]                  # max_animal_order, max_walk_length, max_path_length, node_budget
    [paths]       walks = true
    [percolation] mode, p | p_factor, trials, radii
    [randic]      theta
    [greedy]      law, C, scaled, rate, bound, value, replications, y_offset, t_max, slack
    [capacity]    lambdas, max_order, spanning_trees
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any

from ..enumeration import Caps
from ..errors import ArgumentError, ConfigError
from ..phi import PhiFunction
from ..repulsion import FAMILY_NAMES, HubFamilySpec, default_hub_spec, default_phi
from ..temperedness import (
    TemperedSequence,
    WeightFunction,
    classify_series,
    gamma_series,
    preset,
)

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

KINDS = ("paths", "animals", "randic", "percolation", "greedy", "capacity")
FORMATS = ("csv", "json-lines", "human")
STOCHASTIC = ("percolation", "greedy")
DEFAULT_PRESET = {
    "paths": "paths-default",
    "animals": "animals-default",
    "percolation": "paths-default",
    "greedy": "animals-default",
    "capacity": "paths-default",
}

TOP_KEYS = {"kind", "seed", "x", "family", "n_star", "preset", "tol", "output", "format",
            "threads", "graph", "phi", "sequence", "caps", "paths", "percolation", "randic",
            "greedy", "capacity"}
SECTION_KEYS = {
    "graph": {"source", "path", "rows", "cols", "radius", "dim", "hub"},
    "caps": {"max_animal_order", "max_walk_length", "max_path_length", "node_budget"},
    "paths": {"walks"},
    "percolation": {"mode", "p", "p_factor", "trials", "radii"},
    "randic": {"theta"},
    "greedy": {"law", "C", "scaled", "rate", "bound", "value", "replications", "y_offset",
               "t_max", "slack"},
    "capacity": {"lambdas", "max_order", "spanning_trees"},
}
KIND_DEFAULTS: dict[str, dict[str, Any]] = {
    "paths": {"walks": True},
    "percolation": {"mode": "bond", "p_factor": 0.5, "trials": 10000, "radii": list(range(1, 11))},
    "randic": {"theta": -0.5},
    "greedy": {"law": "exponential", "C": 1.0, "scaled": True, "replications": 10000,
               "y_offset": 1.0, "t_max": 1.0, "slack": 10.0},
    "capacity": {"lambdas": [2, 3, 4, 5, 6], "max_order": 9, "spanning_trees": 0},
}


@dataclass
class ExperimentConfig:
    kind: str
    graph: dict[str, Any]
    hub: HubFamilySpec | None
    phi: PhiFunction
    n_star: int
    family: str
    preset: str
    g: WeightFunction
    ts: TemperedSequence
    caps: Caps
    params: dict[str, Any]
    seed: int | None = None
    x: int | None = None
    tol: float = 1e-9
    output: str | None = None
    format: str = "csv"
    threads: int | None = None       # None: THREADS env var, else 1
    warnings: list[str] = field(default_factory=list)

    def echo(self) -> dict[str, Any]:
        """Plain-data view used in reports (stable key order)."""
        graph = dict(self.graph)
        if self.hub is not None:
            graph["hub"] = {"spine_length": self.hub.spine_length,
                            "hubs": [list(h) for h in self.hub.hubs]}
        return {
            "kind": self.kind,
            "seed": self.seed,
            "x": self.x,
            "family": self.family,
            "n_star": self.n_star,
            "preset": self.preset,
            "tol": self.tol,
            "graph": graph,
            "phi": self.phi.to_config(),
            "sequence": self.ts.to_config(),
            "caps": {"max_animal_order": self.caps.max_animal_order,
                     "max_walk_length": self.caps.max_walk_length,
                     "max_path_length": self.caps.max_path_length,
                     "node_budget": self.caps.node_budget},
            "params": dict(self.params),
        }


DEFAULT_CONFIG_TEXT = """\
kind = "paths"
seed = 1
family = "plus"
n_star = 2

[graph]
source = "hub"

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
max_walk_length = 80
max_path_length = 200
"""


def _preflight(g, phi, ts, pname: str, n_star: int) -> list[str]:
    out = []
    try:
        kind_series, _ = classify_series(g, phi, ts)
        if kind_series == "divergent":
            out.append(f"gamma series for {pname} with phi {phi.describe()} is likely divergent")
        elif kind_series == "undetermined":
            out.append("gamma series has no certified tail for this combination")
        gamma_series(g, phi, ts, tol=1.0, max_terms=5)
        if ts.value(1) != n_star:
            out.append(f"t_1 = {ts.value(1):g} differs from n_star = {n_star}")
    except ArgumentError as exc:
        out.append(f"gamma pre-flight: {exc}")
    return out


def _parse_text(raw: str) -> dict[str, Any]:
    try:
        return tomllib.loads(raw)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"syntax: {exc}"]) from None


def validate_config(raw: str | dict[str, Any]) -> ExperimentConfig:
    """Parse, default and cross-check a configuration; collect every error."""
    data = _parse_text(raw) if isinstance(raw, str) else dict(raw)
    errors: list[str] = []
    warnings: list[str] = []

    for k in sorted(set(data) - TOP_KEYS):
        errors.append(f"unknown key {k!r}")
    for sec, allowed in SECTION_KEYS.items():
        block = data.get(sec)
        if block is None:
            continue
        if not isinstance(block, dict):
            errors.append(f"[{sec}] must be a table")
            continue
        for k in sorted(set(block) - allowed):
            errors.append(f"unknown key {k!r} in [{sec}]")

    kind = data.get("kind", "paths")
    if kind not in KINDS:
        errors.append(f"kind must be one of {', '.join(KINDS)}")
        kind = "paths"
    seed = data.get("seed")
    if seed is None and kind in STOCHASTIC:
        errors.append(f"seed is required for kind {kind!r}")
    elif seed is not None and (not isinstance(seed, int) or not 0 <= seed < 2**64):
        errors.append("seed must be an integer in [0, 2^64)")
    fmt = data.get("format", "csv")
    if fmt not in FORMATS:
        errors.append(f"format must be one of {', '.join(FORMATS)}")
    family = data.get("family", "minus")
    if family not in FAMILY_NAMES:
        errors.append("family must be 'minus' or 'plus'")
        family = "minus"
    n_star = data.get("n_star", 2)
    if not isinstance(n_star, int) or n_star < 1:
        errors.append("n_star must be a positive integer")
        n_star = 2
    tol = data.get("tol", 1e-9)
    if not isinstance(tol, (int, float)) or not tol > 0:
        errors.append("tol must be positive")
        tol = 1e-9
    threads = data.get("threads")
    if threads is not None and (not isinstance(threads, int) or threads < 1):
        errors.append("threads must be a positive integer")
        threads = None
    x = data.get("x")
    if x is not None and (not isinstance(x, int) or x < 0):
        errors.append("x must be a non-negative vertex id")

    # weight preset; its phi and sequence apply unless overridden
    pname = data.get("preset")
    if pname is None:
        block = data.get(kind) if isinstance(data.get(kind), dict) else {}
        pname = (f"randic({block.get('theta', KIND_DEFAULTS['randic']['theta'])})"
                 if kind == "randic" else DEFAULT_PRESET[kind])
    g = None
    base_ts = None
    phi = default_phi()
    try:
        pre = preset(pname)
        g, base_ts, phi = pre.g, pre.ts, pre.phi
    except ArgumentError as exc:
        errors.append(str(exc))
    if "phi" in data:
        try:
            phi = PhiFunction.from_config(data["phi"])
        except ArgumentError as exc:
            errors.append(f"phi: {exc}")

    # graph source
    graph = dict(data.get("graph", {}))
    hub_cfg = graph.pop("hub", None)
    source = graph.setdefault("source", "hub")
    hub = None
    if source == "hub":
        try:
            if hub_cfg is None:
                base = default_hub_spec()
                hub = HubFamilySpec(base.spine_length, base.hubs, phi, n_star, family)
            else:
                hub = HubFamilySpec.from_config({**hub_cfg, "n_star": n_star, "family": family}, phi)
        except (ArgumentError, KeyError, TypeError, ValueError) as exc:
            errors.append(f"graph.hub: {exc}")
    elif source == "file":
        if "path" not in graph:
            errors.append("graph.path is required for source = 'file'")
    elif source == "grid":
        if not all(isinstance(graph.get(k), int) and graph[k] > 0 for k in ("rows", "cols")):
            errors.append("grid source needs positive rows and cols")
    elif source == "lattice":
        if not isinstance(graph.get("radius"), int) or graph["radius"] < 1:
            errors.append("lattice source needs a positive radius")
        graph.setdefault("dim", 2)
    else:
        errors.append(f"unknown graph source {source!r}")

    # kind parameters
    params = dict(KIND_DEFAULTS.get(kind, {}))
    params.update(data.get(kind, {}) if isinstance(data.get(kind, {}), dict) else {})
    if kind == "percolation":
        if params.get("mode") not in ("bond", "site"):
            errors.append("percolation.mode must be 'bond' or 'site'")
        if "p" in params and not 0 <= params["p"] <= 1:
            errors.append("percolation.p must lie in [0, 1]")
        if not isinstance(params.get("trials"), int) or params["trials"] < 1:
            errors.append("percolation.trials must be a positive integer")
        radii = params.get("radii")
        if not radii or any(not isinstance(r, int) or r < 1 for r in radii):
            errors.append("percolation.radii must be positive integers")
    if kind == "greedy":
        if not isinstance(params.get("replications"), int) or params["replications"] < 1:
            errors.append("greedy.replications must be a positive integer")
        if params.get("law") not in ("constant", "exponential", "uniform"):
            errors.append("greedy.law must be constant, exponential or uniform")
    if kind == "capacity":
        lams = params.get("lambdas", [])
        if not lams or any(not isinstance(v, (int, float)) or v <= 0 for v in lams):
            errors.append("capacity.lambdas must be positive numbers")

    ts = base_ts
    if "sequence" in data:
        try:
            ts = TemperedSequence.from_config(data["sequence"])
        except ArgumentError as exc:
            errors.append(f"sequence: {exc}")

    caps = Caps()
    if "caps" in data:
        try:
            caps = Caps(**data["caps"])
        except TypeError as exc:
            errors.append(f"caps: {exc}")

    if errors:
        raise ConfigError(errors)

    # pre-flight on the gamma series (first terms and asymptotic class)
    if kind != "capacity":
        warnings += _preflight(g, phi, ts, pname, n_star)

    return ExperimentConfig(
        kind=kind, graph=graph, hub=hub, phi=phi, n_star=n_star, family=family,
        preset=pname, g=g, ts=ts, caps=caps, params=params, seed=seed, x=x, tol=float(tol),
        output=data.get("output"), format=fmt, threads=threads, warnings=warnings,
    )


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return validate_config(fh.read())


def default_config() -> ExperimentConfig:
    return validate_config(DEFAULT_CONFIG_TEXT)
