"""Repulsion checks on finite windows and a generator of repulsive hub graphs.

A window is *repulsive* for a profile ``phi`` and threshold ``n_star`` when
every pair of distinct vertices whose degrees both exceed ``n_star`` sits at
distance at least ``phi(min degree)`` (family ``minus``) or
``phi(max degree)`` (family ``plus``).  Pairs in different components are
treated as satisfying the condition.

Only finite windows are certified: on a truncated ball a shortcut outside
the window could make two hubs closer than the window metric says.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ArgumentError, GenerationError
from .graph import GraphWindow, bfs_distances
from .phi import PhiFunction, at_least

FAMILY_NAMES = ("minus", "plus")


def _required(phi: PhiFunction, a: int, b: int, family: str):
    if family not in FAMILY_NAMES:
        raise ArgumentError(f"family must be 'minus' or 'plus', got {family!r}")
    return phi(min(a, b) if family == "minus" else max(a, b))


class Violation(NamedTuple):
    x: int
    y: int
    distance: int
    required: float


@dataclass(frozen=True)
class RepulsionReport:
    family: str
    n_star: int
    witnesses: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.witnesses

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def high_degree_vertices(w: GraphWindow, n_star: int) -> list[int]:
    return [v for v in range(w.vertex_count) if w.ambient_degree[v] > n_star]


def _check_n_star(phi: PhiFunction, n_star: int) -> None:
    if n_star < 1:
        raise ArgumentError("n_star must be >= 1")
    if n_star + 1 < phi.domain_min:
        raise ArgumentError(
            f"phi is undefined at n_star + 1 = {n_star + 1} (domain starts at {phi.domain_min})"
        )


def check_repulsion(w: GraphWindow, phi: PhiFunction, n_star: int, family: str) -> RepulsionReport:
    _check_n_star(phi, n_star)
    hubs = high_degree_vertices(w, n_star)
    deg = w.ambient_degree
    bad = []
    for i, x in enumerate(hubs):
        rest = hubs[i + 1 :]
        if not rest:
            break
        dist = bfs_distances(w, x)
        for y in rest:
            d = dist[y]
            if d < 0:
                continue
            need = _required(phi, deg[x], deg[y], family)
            if not at_least(d, need):
                bad.append(Violation(x, y, d, need))
    return RepulsionReport(family, n_star, tuple(bad))


@dataclass(frozen=True)
class Classification:
    v_star: frozenset[int]
    v_star_c: frozenset[int]
    kernels: dict[int, frozenset[int]] = field(hash=False)


def classify_vertices(w: GraphWindow, phi: PhiFunction, n_star: int) -> Classification:
    """Split vertices by ``n(x) <= n_star`` and compute the repulsion kernels.

    ``kernels[x]`` is the open ball ``{y : dist(y, x) < phi(n(x))}`` for every
    high-degree ``x``.
    """
    _check_n_star(phi, n_star)
    hubs = high_degree_vertices(w, n_star)
    kernels = {}
    for x in hubs:
        radius_value = phi(w.ambient_degree[x])
        dist = bfs_distances(w, x)
        kernels[x] = frozenset(
            v for v, d in enumerate(dist) if d >= 0 and not at_least(d, radius_value)
        )
    c = frozenset(hubs)
    return Classification(frozenset(range(w.vertex_count)) - c, c, kernels)


# ---------------------------------------------------------------------------
# hub family generator
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HubFamilySpec:
    """A spine path with hubs; each hub gets pendant leaves up to its degree."""

    spine_length: int
    hubs: tuple[tuple[int, int], ...]
    phi: PhiFunction
    n_star: int = 2
    family: str = "minus"

    def __post_init__(self):
        object.__setattr__(self, "hubs", tuple((int(p), int(d)) for p, d in self.hubs))

    @classmethod
    def from_config(cls, cfg: dict, phi: PhiFunction) -> "HubFamilySpec":
        known = {"spine_length", "hubs", "n_star", "family"}
        extra = set(cfg) - known
        if extra:
            raise ArgumentError(f"unknown hub keys: {sorted(extra)}")
        return cls(
            spine_length=int(cfg["spine_length"]),
            hubs=tuple(tuple(h) for h in cfg.get("hubs", ())),
            phi=phi,
            n_star=int(cfg.get("n_star", 2)),
            family=cfg.get("family", "minus"),
        )


def generate_hub_graph(spec: HubFamilySpec) -> GraphWindow:
    """Build the spine-and-hubs window and certify its spacing.

    Spine vertex at position ``p`` has id ``p``; leaves follow in hub order.
    The origin is the spine endpoint 0.
    """
    L = spec.spine_length
    if L < 1:
        raise GenerationError("spine_length must be positive")
    if spec.family not in FAMILY_NAMES:
        raise GenerationError(f"unknown family {spec.family!r}")
    positions = [p for p, _ in spec.hubs]
    if len(set(positions)) != len(positions):
        raise GenerationError("two hubs share a spine position")
    for p, d in spec.hubs:
        if not 1 <= p <= L - 2:
            raise GenerationError(f"hub position {p} is not an interior spine vertex")
        if d < 3:
            raise GenerationError(f"hub at {p} has degree {d} < 3")
    if spec.family == "plus":
        for (p0, d0), (p1, d1) in zip(spec.hubs, spec.hubs[1:]):
            if d1 <= d0:
                raise GenerationError(
                    f"plus family needs increasing hub degrees: ({p0},{d0}) then ({p1},{d1})",
                    pair=(p0, p1),
                )
    for i, (p0, d0) in enumerate(spec.hubs):
        for p1, d1 in spec.hubs[i + 1 :]:
            if min(d0, d1) <= spec.n_star:
                continue
            need = _required(spec.phi, d0, d1, spec.family)
            if not at_least(abs(p1 - p0), need):
                raise GenerationError(
                    f"hubs at {p0} (degree {d0}) and {p1} (degree {d1}) are "
                    f"{abs(p1 - p0)} apart; phi requires {need}",
                    pair=(p0, p1),
                )
    edges = [(i, i + 1) for i in range(L - 1)]
    nxt = L
    for p, d in spec.hubs:
        for _ in range(d - 2):
            edges.append((p, nxt))
            nxt += 1
    return GraphWindow.from_edges(nxt, edges, origin=0)


def default_phi() -> PhiFunction:
    """``max(t^2 - 16, t/2)``: the default profile of the reference hub window."""
    return PhiFunction.power(2, shift=-16, floor=0.5)


def default_hub_spec() -> HubFamilySpec:
    return HubFamilySpec(
        spine_length=160,
        hubs=((10, 5), (30, 6), (70, 7), (130, 8)),
        phi=default_phi(),
        n_star=2,
        family="plus",
    )


def default_hub_window() -> GraphWindow:
    return generate_hub_graph(default_hub_spec())


def random_hub_spec(rng, phi: PhiFunction, family: str = "minus", spine=(12, 30),
                    degrees=(3, 6), max_hubs: int = 3, n_star: int = 2) -> HubFamilySpec:
    """Draw a valid hub spec by rejection: spacing is re-drawn until it fits.

    ``rng`` is a :class:`numpy.random.Generator`.
    """
    for _ in range(1000):
        L = int(rng.integers(spine[0], spine[1] + 1))
        k = int(rng.integers(0, max_hubs + 1))
        if k > L - 2:
            continue
        pos = sorted(int(p) for p in rng.choice(range(1, L - 1), size=k, replace=False))
        degs = [int(d) for d in rng.integers(degrees[0], degrees[1] + 1, size=k)]
        if family == "plus":
            degs = sorted(degs)
            if len(set(degs)) != len(degs):
                continue
        spec = HubFamilySpec(L, tuple(zip(pos, degs)), phi, n_star, family)
        try:
            generate_hub_graph(spec)
        except GenerationError:
            continue
        return spec
    raise GenerationError("could not draw a valid hub spec")
