"""Finite graph windows, the BFS metric, animals, paths and walks.

A :class:`GraphWindow` is an immutable finite simple graph.  Each vertex also
carries an *ambient* degree: when the window is a truncated ball of some
infinite graph, boundary vertices keep their true degree even though only
part of their neighbourhood is present.  Every counting bound in this package
is stated in terms of ambient degrees, so the two are stored separately.

A vertex whose ambient degree exceeds its in-window degree is *incomplete*.
Operations that would need the missing neighbours raise
:class:`~repgraph.errors.WindowTooSmallError` instead of silently returning
truncated answers.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path as FsPath
from typing import Iterable, Mapping, Sequence

from .errors import ArgumentError, DisconnectedError, WindowTooSmallError

UNREACHABLE = math.inf


@dataclass(frozen=True)
class GraphWindow:
    adjacency: tuple[tuple[int, ...], ...]
    ambient_degree: tuple[int, ...]
    origin: int | None = None
    labels: tuple | None = field(default=None, compare=False, repr=False)
    _label_index: dict = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.adjacency)
        if len(self.ambient_degree) != n:
            raise ArgumentError("ambient_degree must have one entry per vertex")
        for v, nbrs in enumerate(self.adjacency):
            if any(b <= a for a, b in zip(nbrs, nbrs[1:])):
                raise ArgumentError(f"neighbours of {v} must be sorted and distinct")
            for u in nbrs:
                if u == v:
                    raise ArgumentError(f"self-loop at {v}")
                if not 0 <= u < n:
                    raise ArgumentError(f"neighbour {u} of {v} out of range")
            if self.ambient_degree[v] < len(nbrs):
                raise ArgumentError(
                    f"ambient degree of {v} is below its in-window degree"
                )
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not _sorted_contains(self.adjacency[u], v):
                    raise ArgumentError(f"asymmetric adjacency {v}->{u}")
        if self.origin is not None and not 0 <= self.origin < n:
            raise ArgumentError("origin out of range")
        if self.labels is not None:
            if len(self.labels) != n:
                raise ArgumentError("labels must have one entry per vertex")
            object.__setattr__(
                self, "_label_index", {lab: i for i, lab in enumerate(self.labels)}
            )
        # Hash once: windows are used as cache keys by several modules.
        object.__setattr__(self, "_hash", hash((self.adjacency, self.ambient_degree)))

    def __hash__(self):
        return self._hash

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        ambient_degree: Mapping[int, int] | Sequence[int] | None = None,
        origin: int | None = None,
        labels: Sequence | None = None,
    ) -> "GraphWindow":
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ArgumentError(f"self-loop at {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ArgumentError(f"edge ({u}, {v}) out of range")
            if v in nbrs[u]:
                raise ArgumentError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        degrees = [len(s) for s in nbrs]
        if ambient_degree is not None:
            items = (
                ambient_degree.items()
                if isinstance(ambient_degree, Mapping)
                else enumerate(ambient_degree)
            )
            for v, d in items:
                degrees[v] = int(d)
        return cls(
            tuple(tuple(sorted(s)) for s in nbrs),
            tuple(degrees),
            origin,
            tuple(labels) if labels is not None else None,
        )

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adjacency[x]

    def degree(self, x: int) -> int:
        """Ambient degree n(x)."""
        return self.ambient_degree[x]

    def window_degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def is_complete(self, x: int) -> bool:
        return self.ambient_degree[x] == len(self.adjacency[x])

    @property
    def is_standalone(self) -> bool:
        return all(self.is_complete(v) for v in range(self.vertex_count))

    @property
    def max_degree(self) -> int:
        return max(self.ambient_degree, default=0)

    def index(self, label) -> int:
        """Vertex id carrying ``label`` (e.g. a lattice coordinate)."""
        if self._label_index is None:
            raise ArgumentError("window has no labels")
        try:
            return self._label_index[label]
        except KeyError:
            raise ArgumentError(f"no vertex labelled {label!r}") from None

    def check_vertex(self, x: int) -> None:
        if not isinstance(x, int) or not 0 <= x < self.vertex_count:
            raise ArgumentError(f"invalid vertex id {x!r}")


def _sorted_contains(seq: tuple[int, ...], v: int) -> bool:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo < len(seq) and seq[lo] == v


# ---------------------------------------------------------------------------
# metric
# ---------------------------------------------------------------------------


def bfs_distances(w: GraphWindow, x: int, radius: int | None = None) -> list[int]:
    """Distances from ``x``; ``-1`` marks vertices not reached (or beyond ``radius``)."""
    w.check_vertex(x)
    dist = [-1] * w.vertex_count
    dist[x] = 0
    queue = deque([x])
    adj = w.adjacency
    while queue:
        v = queue.popleft()
        d = dist[v]
        if radius is not None and d >= radius:
            continue
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = d + 1
                queue.append(u)
    return dist


def path_distance(w: GraphWindow, x: int, y: int) -> int | float:
    """Shortest-path length, or :data:`UNREACHABLE` across components."""
    w.check_vertex(y)
    if x == y:
        w.check_vertex(x)
        return 0
    d = bfs_distances(w, x)[y]
    return UNREACHABLE if d < 0 else d


def require_exact_ball(w: GraphWindow, x: int, radius: int) -> list[int]:
    """Check that the window contains the true ball of ``radius`` around ``x``.

    That holds iff every vertex at distance ``< radius`` is complete.  Returns
    the BFS distances (limited to ``radius``) for reuse.
    """
    dist = bfs_distances(w, x, radius)
    for v, d in enumerate(dist):
        if 0 <= d < radius and not w.is_complete(v):
            raise WindowTooSmallError(x, radius, v)
    return dist


def ball_sphere(w: GraphWindow, x: int, N: int) -> tuple[frozenset[int], frozenset[int]]:
    if N < 0:
        raise ArgumentError("radius must be non-negative")
    dist = require_exact_ball(w, x, N)
    ball = frozenset(v for v, d in enumerate(dist) if 0 <= d <= N)
    sphere = frozenset(v for v, d in enumerate(dist) if d == N)
    return ball, sphere


# ---------------------------------------------------------------------------
# animals and paths
# ---------------------------------------------------------------------------


def _components(vertices: frozenset[int], adj) -> list[frozenset[int]]:
    left = set(vertices)
    comps = []
    while left:
        start = min(left)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u in left and u not in seen:
                    seen.add(u)
                    stack.append(u)
        left -= seen
        comps.append(frozenset(seen))
    return comps


@dataclass(frozen=True)
class Animal:
    """A finite connected vertex set with the edges it induces in ``window``."""

    window: GraphWindow = field(repr=False)
    vertices: frozenset[int]

    def __post_init__(self):
        vs = frozenset(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ArgumentError("an animal needs at least one vertex")
        for v in vs:
            self.window.check_vertex(v)
        comps = _components(vs, self.window.adjacency)
        if len(comps) > 1:
            raise DisconnectedError((comps[0], vs - comps[0]))

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def sorted_vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))

    @property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        vs = self.vertices
        return {v: tuple(u for u in self.window.adjacency[v] if u in vs) for v in vs}

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vs = self.vertices
        return tuple(
            (u, v)
            for u in sorted(vs)
            for v in self.window.adjacency[u]
            if u < v and v in vs
        )

    def degree(self, x: int) -> int:
        """Ambient degree of a member vertex."""
        return self.window.ambient_degree[x]

    @property
    def max_degree(self) -> int:
        return max(self.window.ambient_degree[v] for v in self.vertices)


def induced_animal(w: GraphWindow, vs: Iterable[int]) -> Animal:
    return Animal(w, frozenset(vs))


@dataclass(frozen=True)
class Path:
    """A walk ``x_0, ..., x_n``; ``length`` is the number of steps."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_simple(self) -> bool:
        # Self-avoiding: every vertex distinct (see the counting convention).
        return len(set(self.vertices)) == len(self.vertices)

    def departures(self) -> Counter:
        """Multiset of ordered departures ``(u, v)``: the walk leaves u toward v."""
        return Counter(zip(self.vertices, self.vertices[1:]))

    def leave_counts(self) -> Counter:
        return Counter(self.vertices[:-1])

    def traversals(self) -> Counter:
        return Counter(frozenset(e) for e in zip(self.vertices, self.vertices[1:]))

    @property
    def is_theta(self) -> bool:
        """Each ordered departure occurs at most once."""
        return all(c == 1 for c in self.departures().values())


def check_walk(w: GraphWindow, path: Path) -> None:
    for v in path.vertices:
        w.check_vertex(v)
    for a, b in zip(path.vertices, path.vertices[1:]):
        if not _sorted_contains(w.adjacency[a], b):
            raise ArgumentError(f"{a} and {b} are not adjacent")


def euler_double_cover(a: Animal, x: int) -> Path:
    """Closed walk from ``x`` using every edge of ``a`` once in each direction.

    Every edge is replaced by two opposite arcs; the resulting directed graph is
    balanced and connected, so Hierholzer's algorithm yields an Euler circuit.
    Doubling with arcs (not parallel undirected edges) guarantees each ordered
    departure is used exactly once.
    """
    if x not in a.vertices:
        raise ArgumentError(f"vertex {x} is not in the animal")
    out = a.adjacency
    ptr = dict.fromkeys(out, 0)
    stack = [x]
    circuit = []
    while stack:
        v = stack[-1]
        i = ptr[v]
        if i < len(out[v]):
            ptr[v] = i + 1
            stack.append(out[v][i])
        else:
            circuit.append(stack.pop())
    circuit.reverse()
    return Path(tuple(circuit))


# ---------------------------------------------------------------------------
# standard windows
# ---------------------------------------------------------------------------


def path_graph(n: int) -> GraphWindow:
    return GraphWindow.from_edges(n, [(i, i + 1) for i in range(n - 1)], origin=0)


def cycle_graph(n: int) -> GraphWindow:
    if n < 3:
        raise ArgumentError("a simple cycle needs at least 3 vertices")
    return GraphWindow.from_edges(n, [(i, (i + 1) % n) for i in range(n)], origin=0)


def star_graph(leaves: int) -> GraphWindow:
    """K_{1,leaves} with the centre as vertex 0."""
    return GraphWindow.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)], origin=0)


def complete_graph(n: int) -> GraphWindow:
    return GraphWindow.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)], origin=0
    )


def grid_window(rows: int, cols: int) -> GraphWindow:
    """Standalone ``rows x cols`` grid; vertex ``(r, c)`` has id ``r * cols + c``."""
    labels = [(r, c) for r in range(rows) for c in range(cols)]
    edges = []
    for r, c in labels:
        v = r * cols + c
        if c + 1 < cols:
            edges.append((v, v + 1))
        if r + 1 < rows:
            edges.append((v, v + cols))
    return GraphWindow.from_edges(rows * cols, edges, origin=0, labels=labels)


def lattice_ball(radius: int, dim: int = 2) -> GraphWindow:
    """Ball of graph radius ``radius`` around the origin of Z^dim.

    Ambient degree is ``2 * dim`` everywhere, so the outer sphere is truncated.
    """
    rng = range(-radius, radius + 1)
    labels = [p for p in product(rng, repeat=dim) if sum(map(abs, p)) <= radius]
    index = {p: i for i, p in enumerate(labels)}
    edges = []
    for p, i in index.items():
        for k in range(dim):
            q = p[:k] + (p[k] + 1,) + p[k + 1 :]
            j = index.get(q)
            if j is not None:
                edges.append((i, j))
    return GraphWindow.from_edges(
        len(labels),
        edges,
        ambient_degree=[2 * dim] * len(labels),
        origin=index[(0,) * dim],
        labels=labels,
    )


def line_window(radius: int) -> GraphWindow:
    """Ball of radius ``radius`` in Z (ambient degree 2 everywhere)."""
    return lattice_ball(radius, dim=1)


def half_line(length: int) -> GraphWindow:
    """Vertices 0..length of the half-line N; the far end is truncated."""
    n = length + 1
    amb = [2] * n
    amb[0] = 1
    return GraphWindow.from_edges(
        n, [(i, i + 1) for i in range(length)], ambient_degree=amb, origin=0
    )


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_graph(w: GraphWindow) -> str:
    """Canonical text form: ``V E``, sorted edges, then overridden degrees."""
    edges = w.edges()
    lines = [f"{w.vertex_count} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    overrides = [v for v in range(w.vertex_count) if not w.is_complete(v)]
    if overrides:
        lines.append("DEGREES")
        lines.extend(f"{v} {w.ambient_degree[v]}" for v in overrides)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> GraphWindow:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise ArgumentError("first line must be 'V E'")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1 : m + 1]]
    except ValueError as exc:
        raise ArgumentError(f"malformed graph file: {exc}") from None
    if len(edges) != m:
        raise ArgumentError(f"expected {m} edge lines, found {len(edges)}")
    rest = rows[m + 1 :]
    degrees = {}
    if rest:
        if rest[0] != ["DEGREES"]:
            raise ArgumentError("unexpected content after edge list")
        for row in rest[1:]:
            if len(row) != 2:
                raise ArgumentError(f"malformed DEGREES line {' '.join(row)!r}")
            degrees[int(row[0])] = int(row[1])
    return GraphWindow.from_edges(n, edges, ambient_degree=degrees or None)


def read_graph(path) -> GraphWindow:
    return parse_graph(FsPath(path).read_text())


def write_graph(w: GraphWindow, path) -> None:
    FsPath(path).write_text(format_graph(w))
