"""Lambda-admissible sets, lambda-capacity and the backbone decomposition.

A vertex set of an animal is *lambda-admissible* when any two of its members
are at internal distance at least ``lambda`` (distances measured inside the
animal).  The lambda-capacity ``C(A; lambda)`` is the largest size of such a
set; it equals the maximum independent set of the conflict graph joining
pairs at internal distance ``< lambda``, solved here by bitmask
branch-and-bound.

The backbone decomposition splits a BFS spanning tree along a diameter path
into pendant subtrees hanging from backbone vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import ArgumentError, CapacityCapError
from .graph import Animal, GraphWindow, path_graph
from .phi import at_least

DEFAULT_CAP = 24


@dataclass(frozen=True)
class AdmissibleSet:
    vertices: frozenset[int]
    lam: float
    animal: Animal

    def validate(self) -> bool:
        vs = sorted(self.vertices)
        for i, x in enumerate(vs):
            dist = _animal_bfs(self.animal, x)
            for y in vs[i + 1 :]:
                if not at_least(dist[y], self.lam):
                    return False
        return True


@dataclass(frozen=True)
class CapacityResult:
    value: int
    witness: AdmissibleSet

    @property
    def outside_definition(self) -> bool:
        """True for ``lambda <= 1``, where admissibility is defined only formally."""
        return self.witness.lam <= 1


def _animal_bfs(a: Animal, x: int) -> dict[int, int]:
    adj = a.adjacency
    dist = {x: 0}
    q = deque([x])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def animal_metric(a: Animal, x: int, y: int) -> int:
    """Shortest-path length between ``x`` and ``y`` using only edges of ``a``."""
    if x not in a.vertices or y not in a.vertices:
        raise ArgumentError(f"vertices {x}, {y} must both belong to the animal")
    return _animal_bfs(a, x)[y]


def animal_distance_matrix(a: Animal) -> list[list[int]]:
    """Internal distances indexed by rank in ``a.sorted_vertices``."""
    vs = a.sorted_vertices
    out = []
    for x in vs:
        d = _animal_bfs(a, x)
        out.append([d[y] for y in vs])
    return out


# ---------------------------------------------------------------------------
# maximum independent set
# ---------------------------------------------------------------------------


def _mis(n: int, nbr: tuple[int, ...]) -> tuple[int, int]:
    """Maximum independent set of a graph given by neighbour bitmasks.

    Returns ``(size, mask)``.  Vertices of degree <= 1 among the candidates
    are taken greedily (some maximum set contains them); otherwise we branch
    on a vertex of maximum degree.
    """
    best = [0, 0]

    def rec(cand: int, chosen: int, size: int) -> None:
        while cand:
            # forced picks: a candidate with at most one candidate neighbour
            forced = -1
            c = cand
            while c:
                low = c & -c
                v = low.bit_length() - 1
                if (nbr[v] & cand).bit_count() <= 1:
                    forced = v
                    break
                c ^= low
            if forced < 0:
                break
            chosen |= 1 << forced
            size += 1
            cand &= ~(nbr[forced] | (1 << forced))
        if size + cand.bit_count() <= best[0]:
            return
        if not cand:
            best[0], best[1] = size, chosen
            return
        c = cand
        v_best, d_best = -1, -1
        while c:
            low = c & -c
            v = low.bit_length() - 1
            d = (nbr[v] & cand).bit_count()
            if d > d_best:
                v_best, d_best = v, d
            c ^= low
        bit = 1 << v_best
        rec(cand & ~(nbr[v_best] | bit), chosen | bit, size + 1)
        rec(cand & ~bit, chosen, size)

    rec((1 << n) - 1, 0, 0)
    return best[0], best[1]


@lru_cache(maxsize=1 << 18)
def _capacity_from_key(n: int, dist_key: tuple[int, ...], lam: float) -> tuple[int, int]:
    nbr = [0] * n
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if not at_least(dist_key[k], lam):
                nbr[i] |= 1 << j
                nbr[j] |= 1 << i
            k += 1
    return _mis(n, tuple(nbr))


def _dist_key(dm: list[list[int]]) -> tuple[int, ...]:
    n = len(dm)
    return tuple(dm[i][j] for i in range(n) for j in range(i + 1, n))


def capacity_exact(a: Animal, lam: float, cap: int | None = DEFAULT_CAP,
                   distances: list[list[int]] | None = None) -> CapacityResult:
    """Exact lambda-capacity with a witness set.

    ``cap`` bounds the animal order (``None`` disables the check).  Results
    are cached on the internal distance pattern, so translated copies of the
    same shape are solved once.
    """
    if not lam > 0:
        raise ArgumentError("lambda must be positive")
    n = a.order
    if cap is not None and n > cap:
        raise CapacityCapError(
            f"animal of order {n} exceeds the exact-solver cap {cap}; "
            "use capacity_greedy for a lower bound"
        )
    dm = distances if distances is not None else animal_distance_matrix(a)
    size, mask = _capacity_from_key(n, _dist_key(dm), float(lam))
    vs = a.sorted_vertices
    chosen = frozenset(vs[i] for i in range(n) if mask >> i & 1)
    return CapacityResult(size, AdmissibleSet(chosen, lam, a))


def capacity_greedy(a: Animal, lam: float) -> CapacityResult:
    """Lower bound: scan vertices in id order, keep those far from all kept ones."""
    dm = animal_distance_matrix(a)
    vs = a.sorted_vertices
    kept: list[int] = []
    for i in range(len(vs)):
        if all(at_least(dm[i][j], lam) for j in kept):
            kept.append(i)
    return CapacityResult(len(kept), AdmissibleSet(frozenset(vs[i] for i in kept), lam, a))


# ---------------------------------------------------------------------------
# backbone decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subtree:
    root: int          # backbone vertex the subtree hangs from
    attach: int        # subtree vertex adjacent to the root
    vertices: frozenset[int]
    height: int        # tree distance from ``root`` to the farthest subtree vertex

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class BackboneDecomposition:
    animal: Animal
    spanning_tree: tuple[tuple[int, int], ...]
    backbone: tuple[int, ...]
    subtrees: tuple[Subtree, ...]
    split_edges: tuple[tuple[int, int], ...]

    @property
    def diameter(self) -> int:
        return len(self.backbone) - 1

    @property
    def n0(self) -> int:
        return len(self.backbone)

    def position(self, v: int) -> int:
        return self.backbone.index(v)

    def check(self) -> list[str]:
        """Structural invariants; returns a list of violated ones (empty if fine).

        The depth invariant ``height <= min(i, D - i)`` for a subtree rooted
        at backbone position ``i`` is what the diameter choice guarantees; it
        also keeps both backbone endpoints free of subtrees.
        """
        problems = []
        total = self.n0 + sum(s.size for s in self.subtrees)
        if total != self.animal.order:
            problems.append(f"sizes sum to {total}, animal has {self.animal.order}")
        D = self.diameter
        ends = {self.backbone[0], self.backbone[-1]}
        for s in self.subtrees:
            i = self.position(s.root)
            if s.height > min(i, D - i):
                problems.append(f"subtree at {s.root} has height {s.height} > min({i}, {D - i})")
            if s.root in ends:
                problems.append(f"backbone endpoint {s.root} carries a subtree")
        if len(self.spanning_tree) != self.animal.order - 1:
            problems.append("spanning tree has the wrong number of edges")
        return problems

    @property
    def sizes_within_backbone(self) -> bool:
        """Whether every subtree is no larger than the backbone (not guaranteed)."""
        return all(s.size <= self.n0 for s in self.subtrees)


def bfs_spanning_tree(a: Animal, root: int | None = None) -> tuple[tuple[int, int], ...]:
    adj = a.adjacency
    r = min(a.vertices) if root is None else root
    seen = {r}
    q = deque([r])
    edges = []
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                edges.append((min(u, v), max(u, v)))
                q.append(u)
    return tuple(sorted(edges))


def _tree_adj(vertices, edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    return adj


def _tree_bfs(adj, x) -> tuple[dict[int, int], dict[int, int]]:
    dist = {x: 0}
    parent = {x: -1}
    q = deque([x])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                parent[u] = v
                q.append(u)
    return dist, parent


def backbone_decompose(a: Animal, tree: tuple[tuple[int, int], ...] | None = None) -> BackboneDecomposition:
    """Split a spanning tree of ``a`` along a diameter path.

    The tree defaults to the BFS tree from the lowest-id vertex.  The
    diameter length comes from a double sweep; among endpoint pairs at that
    distance the lexicographically smallest ``(u, v)`` with ``u < v`` is used.
    """
    edges = bfs_spanning_tree(a) if tree is None else tuple(sorted((min(e), max(e)) for e in tree))
    adj = _tree_adj(a.vertices, edges)
    start = min(a.vertices)
    d0, _ = _tree_bfs(adj, start)
    far = min(v for v in d0 if d0[v] == max(d0.values()))
    d1, _ = _tree_bfs(adj, far)
    D = max(d1.values())
    pair = None
    for u in sorted(a.vertices):
        du, _ = _tree_bfs(adj, u)
        hits = [v for v, d in du.items() if d == D and v > u]
        if hits:
            pair = (u, min(hits))
            break
    if pair is None:  # single vertex
        pair = (start, start)
    u, v = pair
    _, parent = _tree_bfs(adj, u)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    backbone = tuple(reversed(path))
    on_backbone = set(backbone)

    subtrees = []
    split = []
    for r in backbone:
        for c in adj[r]:
            if c in on_backbone:
                continue
            comp = {c: 1}
            q = deque([c])
            while q:
                y = q.popleft()
                for z in adj[y]:
                    if z not in comp and z != r:
                        comp[z] = comp[y] + 1
                        q.append(z)
            subtrees.append(Subtree(r, c, frozenset(comp), max(comp.values())))
            split.append((min(r, c), max(r, c)))
    return BackboneDecomposition(a, edges, backbone, tuple(subtrees), tuple(split))


def format_decomposition(dec: BackboneDecomposition) -> str:
    lines = [f"backbone {' '.join(map(str, dec.backbone))} (diameter {dec.diameter})"]
    for s in dec.subtrees:
        lines.append(f"  subtree at {s.root} via {s.attach}: size {s.size}, height {s.height}")
        lines.append("    " + " ".join(map(str, sorted(s.vertices))))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bound verification
# ---------------------------------------------------------------------------


def is_path_animal(a: Animal) -> bool:
    adj = a.adjacency
    return len(a.edges) == a.order - 1 and max(len(n) for n in adj.values()) <= 2


def tree_animal(a: Animal, tree_edges) -> Animal:
    """The animal's vertex set with only the given spanning edges (standalone)."""
    vs = a.sorted_vertices
    rank = {v: i for i, v in enumerate(vs)}
    w = GraphWindow.from_edges(len(vs), [(rank[x], rank[y]) for x, y in tree_edges])
    return Animal(w, frozenset(range(len(vs))))


def random_spanning_tree(a: Animal, rng) -> tuple[tuple[int, int], ...]:
    """Kruskal on a uniformly shuffled edge list (``rng``: numpy Generator)."""
    edges = list(a.edges)
    order = rng.permutation(len(edges))
    parent = {v: v for v in a.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    out = []
    for k in order:
        x, y = edges[k]
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
            out.append((x, y))
    return tuple(sorted(out))


@dataclass(frozen=True)
class CapacityVerdict:
    order: int
    lam: float
    capacity: int
    bound_15: float
    passed_15: bool
    path_length: int | None = None
    bound_14: float | None = None
    passed_14: bool | None = None
    spanning_capacities: tuple[int, ...] = ()
    passed_span: bool = True
    outside_definition: bool = False

    @property
    def passed(self) -> bool:
        return self.passed_15 and self.passed_14 is not False and self.passed_span


def capacity_bound_15(order: int, lam: float) -> float:
    return max(1.0, 2.0 * order / lam)


def verify_capacity_bounds(a: Animal, lam: float, spanning_trees=(), cap: int | None = DEFAULT_CAP,
                           distances=None) -> CapacityVerdict:
    """Check the capacity against ``max(1, 2N/lambda)``, the path bound and spanning trees.

    The path bound ``1 + length/lambda`` is checked when ``a`` is itself a
    path.  Every tree in ``spanning_trees`` (edge lists) must have capacity
    at least that of ``a``.
    """
    res = capacity_exact(a, lam, cap=cap, distances=distances)
    N = a.order
    b15 = capacity_bound_15(N, lam)
    ok15 = res.value <= b15 + 1e-12
    length = b14 = ok14 = None
    if is_path_animal(a):
        length = N - 1
        b14 = 1.0 + length / lam
        ok14 = res.value <= b14 + 1e-12
    caps = []
    for t in spanning_trees:
        caps.append(capacity_exact(tree_animal(a, t), lam, cap=cap).value)
    ok_span = all(c >= res.value for c in caps)
    return CapacityVerdict(N, lam, res.value, b15, ok15, length, b14, ok14,
                           tuple(caps), ok_span, lam <= 1)


@dataclass(frozen=True)
class OptimalityWitness:
    animal: Animal
    lam: float
    capacity: int
    threshold: float

    @property
    def holds(self) -> bool:
        return self.capacity > self.threshold


def optimality_witness(length: int, epsilon: float) -> OptimalityWitness:
    """Path of the given length with ``lambda = length``: capacity 2 beats ``2(L+1)/L - eps``.

    Shows that the factor 2 in ``max(1, 2N/lambda)`` cannot be lowered by
    ``epsilon``.  Requires ``2/length < epsilon`` so that the threshold is
    below 2.
    """
    if length < 1:
        raise ArgumentError("length must be positive")
    threshold = 2.0 * (length + 1) / length - epsilon
    if not threshold < 2:
        raise ArgumentError(
            f"epsilon={epsilon} is too small for length {length}: need 2/length < epsilon"
        )
    w = path_graph(length + 1)
    a = Animal(w, frozenset(range(length + 1)))
    res = capacity_exact(a, float(length), cap=None)
    out = OptimalityWitness(a, float(length), res.value, threshold)
    if not out.holds:
        raise AssertionError(f"capacity {res.value} does not exceed {threshold}")
    return out

