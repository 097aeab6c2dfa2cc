"""Exact enumeration of self-avoiding paths, departure-distinct walks and animals.

Three families of objects rooted at a vertex ``x`` are counted:

* simple paths of length N (all vertices distinct),
* *theta walks* of length N: walks that leave any vertex toward any given
  neighbour at most once,
* animals of order N: connected vertex sets of size N containing ``x``
  (site animals, induced edges).

Each enumerator computes a *profile*: counts for every length/order up to
``n_max`` in a single depth-first pass, together with the maximal log-degree
weight used by the path and walk counting bounds.  Counts are Python
integers, so they never overflow.

Animals use Redelmeier's rooted extension scheme, which produces every
connected set containing the root exactly once without a hash set.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import ArgumentError, EnumerationCapError
from .graph import GraphWindow, Path, require_exact_ball

NEG_INF = -math.inf
LOG_GUARD = 1e-9


@dataclass(frozen=True)
class Caps:
    """Hard limits that keep exponential enumerations at desk scale."""

    max_animal_order: int = 16
    max_walk_length: int = 12
    max_path_length: int = 32
    node_budget: int = 50_000_000

    def check(self, kind: str, N: int) -> None:
        limit = {
            "animals": self.max_animal_order,
            "walks": self.max_walk_length,
            "paths": self.max_path_length,
        }[kind]
        if N > limit:
            raise EnumerationCapError(f"{kind} of size {N} exceed the cap {limit}")

    def allows(self, kind: str, N: int) -> bool:
        try:
            self.check(kind, N)
        except EnumerationCapError:
            return False
        return True


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class CountResult:
    N: int
    count: int
    bound_12: float | None = None
    bound_13: float | None = None
    wall_time: float = field(default=0.0, compare=False)

    @property
    def log_count(self) -> float:
        return math.log(self.count) if self.count > 0 else NEG_INF


@dataclass
class Profile:
    """Counts (and maximal log weights) indexed by length or order ``0..n_max``."""

    counts: list[int]
    best: list[float]
    nodes: int = 0


class _Budget:
    __slots__ = ("left", "total")

    def __init__(self, total: int):
        self.left = total
        self.total = total

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise EnumerationCapError(f"enumeration exceeded the node budget {self.total}")


def _log_degrees(w: GraphWindow) -> list[float]:
    return [math.log(d) if d > 0 else NEG_INF for d in w.ambient_degree]


def _nlogn_degrees(w: GraphWindow) -> list[float]:
    return [d * math.log(d) if d > 0 else 0.0 for d in w.ambient_degree]


def _merge(into: Profile, other: Profile) -> None:
    for i, c in enumerate(other.counts):
        into.counts[i] += c
    for i, b in enumerate(other.best):
        if b > into.best[i]:
            into.best[i] = b
    into.nodes += other.nodes


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("THREADS", "1") or 1)
    return max(1, int(threads))


# ---------------------------------------------------------------------------
# simple paths
# ---------------------------------------------------------------------------


def _path_dfs(w, start_path, n_max, budget, sink=None, sink_len=None) -> Profile:
    adj = w.adjacency
    logdeg = _log_degrees(w)
    counts = [0] * (n_max + 1)
    best = [NEG_INF] * (n_max + 1)
    visited = bytearray(w.vertex_count)
    for v in start_path:
        visited[v] = 1
    path = list(start_path)
    acc0 = sum(logdeg[v] for v in start_path)
    d0 = len(start_path) - 1
    counts[d0] = 1
    best[d0] = acc0
    nodes = 0

    def rec(v, depth, acc):
        nonlocal nodes
        d = depth + 1
        for u in adj[v]:
            if visited[u]:
                continue
            a = acc + logdeg[u]
            counts[d] += 1
            if a > best[d]:
                best[d] = a
            nodes += 1
            if sink is not None and d == sink_len:
                path.append(u)
                sink(tuple(path))
                path.pop()
            if d < n_max:
                visited[u] = 1
                path.append(u)
                rec(u, d, a)
                path.pop()
                visited[u] = 0
        if nodes > 4096:
            budget.spend(nodes)
            nodes = 0

    if d0 < n_max:
        rec(path[-1], d0, acc0)
    budget.spend(nodes)
    return Profile(counts, best)


def _path_branch(args):
    w, x, u, n_max, budget = args
    return _path_dfs(w, (x, u), n_max, _Budget(budget))


def path_profile(w: GraphWindow, x: int, n_max: int, *, caps: Caps = DEFAULT_CAPS,
                 threads: int | None = None, sink=None, sink_len=None) -> Profile:
    """Counts of simple paths of every length ``0..n_max`` from ``x``.

    ``best[N]`` is the maximum over those paths of the sum of ``log n(y)``
    over the path's vertices (``-inf`` when there are none).
    """
    caps.check("paths", n_max)
    require_exact_ball(w, x, n_max)
    threads = resolve_threads(threads)
    if threads > 1 and sink is None and n_max >= 2 and w.adjacency[x]:
        prof = Profile([0] * (n_max + 1), [NEG_INF] * (n_max + 1))
        prof.counts[0] = 1
        prof.best[0] = _log_degrees(w)[x]
        tasks = [(w, x, u, n_max, caps.node_budget) for u in w.adjacency[x]]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_path_branch, tasks):
                _merge(prof, part)
        return prof
    return _path_dfs(w, (x,), n_max, _Budget(caps.node_budget), sink, sink_len)


def count_simple_paths(w: GraphWindow, x: int, N: int, stream: Callable | None = None, *,
                       caps: Caps = DEFAULT_CAPS, threads: int | None = None) -> CountResult:
    """Exact number of self-avoiding paths of length ``N`` starting at ``x``.

    ``stream``, when given, receives every path once as a tuple of vertex ids.
    The result also carries the log-degree path bound (``bound_13``).
    """
    if N < 1:
        raise ArgumentError("path length must be positive")
    t0 = time.perf_counter()
    prof = path_profile(w, x, N, caps=caps, threads=threads, sink=stream, sink_len=N)
    return CountResult(N, prof.counts[N], bound_13=prof.best[N],
                       wall_time=time.perf_counter() - t0)


def iter_simple_paths(w: GraphWindow, x: int, N: int) -> Iterator[Path]:
    out: list = []
    count_simple_paths(w, x, N, out.append, caps=Caps(max_path_length=max(N, 1)))
    return (Path(p) for p in out)


def bound_13(w: GraphWindow, x: int, N: int, *, caps: Caps = DEFAULT_CAPS) -> float:
    """``max over simple paths of sum_{y on path} log n(y)``; exp of it bounds the count."""
    return path_profile(w, x, N, caps=caps).best[N]


def path_log_weight(w: GraphWindow, path: Path | Sequence[int]) -> float:
    vs = path.vertices if isinstance(path, Path) else path
    return sum(math.log(w.ambient_degree[v]) for v in set(vs))


# ---------------------------------------------------------------------------
# theta walks
# ---------------------------------------------------------------------------


def _walk_dfs(w, start_walk, n_max, budget, sink=None, sink_len=None) -> Profile:
    adj = w.adjacency
    V = w.vertex_count
    nlogn = _nlogn_degrees(w)
    counts = [0] * (n_max + 1)
    best = [NEG_INF] * (n_max + 1)
    seen = [0] * V
    used: set[int] = set()
    for v in start_walk:
        seen[v] += 1
    for a, b in zip(start_walk, start_walk[1:]):
        used.add(a * V + b)
    walk = list(start_walk)
    acc0 = sum(nlogn[v] for v in set(start_walk))
    d0 = len(start_walk) - 1
    counts[d0] = 1
    best[d0] = acc0
    nodes = 0

    def rec(v, depth, acc):
        nonlocal nodes
        d = depth + 1
        base = v * V
        for u in adj[v]:
            key = base + u
            if key in used:
                continue
            a = acc if seen[u] else acc + nlogn[u]
            counts[d] += 1
            if a > best[d]:
                best[d] = a
            nodes += 1
            if sink is not None and d == sink_len:
                walk.append(u)
                sink(tuple(walk))
                walk.pop()
            if d < n_max:
                used.add(key)
                seen[u] += 1
                walk.append(u)
                rec(u, d, a)
                walk.pop()
                seen[u] -= 1
                used.discard(key)
        if nodes > 4096:
            budget.spend(nodes)
            nodes = 0

    if d0 < n_max:
        rec(walk[-1], d0, acc0)
    budget.spend(nodes)
    return Profile(counts, best)


def _walk_branch(args):
    w, x, u, n_max, budget = args
    return _walk_dfs(w, (x, u), n_max, _Budget(budget))


def walk_profile(w: GraphWindow, x: int, n_max: int, *, caps: Caps = DEFAULT_CAPS,
                 threads: int | None = None, sink=None, sink_len=None) -> Profile:
    """Counts of theta walks of every length ``0..n_max`` from ``x``.

    ``best[N]`` is the maximum of ``sum n(y) log n(y)`` over the distinct
    vertices of a theta walk of length N.
    """
    caps.check("walks", n_max)
    require_exact_ball(w, x, n_max)
    threads = resolve_threads(threads)
    if threads > 1 and sink is None and n_max >= 2 and w.adjacency[x]:
        prof = Profile([0] * (n_max + 1), [NEG_INF] * (n_max + 1))
        prof.counts[0] = 1
        prof.best[0] = _nlogn_degrees(w)[x]
        tasks = [(w, x, u, n_max, caps.node_budget) for u in w.adjacency[x]]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_walk_branch, tasks):
                _merge(prof, part)
        return prof
    return _walk_dfs(w, (x,), n_max, _Budget(caps.node_budget), sink, sink_len)


def count_theta_paths(w: GraphWindow, x: int, N: int, stream: Callable | None = None, *,
                      caps: Caps = DEFAULT_CAPS, threads: int | None = None) -> CountResult:
    if N < 1:
        raise ArgumentError("walk length must be positive")
    t0 = time.perf_counter()
    prof = walk_profile(w, x, N, caps=caps, threads=threads, sink=stream, sink_len=N)
    return CountResult(N, prof.counts[N], bound_12=prof.best[N],
                       wall_time=time.perf_counter() - t0)


def bound_12(w: GraphWindow, x: int, N: int, *, caps: Caps = DEFAULT_CAPS) -> float:
    """``max over theta walks of sum_{y visited} n(y) log n(y)``."""
    return walk_profile(w, x, N, caps=caps).best[N]


def walk_log_weight(w: GraphWindow, walk: Path | Sequence[int]) -> float:
    vs = walk.vertices if isinstance(walk, Path) else walk
    return sum(d * math.log(d) for d in (w.ambient_degree[v] for v in set(vs)))


# ---------------------------------------------------------------------------
# animals
# ---------------------------------------------------------------------------


def _redelmeier_count(w, root, n_max, budget, forbidden=(), on_order=None, order=None,
                      start=None) -> list[int]:
    """Count connected sets containing ``root`` by size (Redelmeier).

    ``forbidden`` vertices are never added.  ``on_order`` is called with the
    current vertex list whenever a set of size ``order`` is formed.  ``start``
    resumes from a given (current, untried, seen) state for parallel branches.
    """
    adj = w.adjacency
    counts = [0] * (n_max + 1)
    if start is None:
        seen = bytearray(w.vertex_count)
        for v in forbidden:
            seen[v] = 1
        seen[root] = 1
        current: list[int] = []
        untried = [root]
    else:
        current, untried, seen = start
        current = list(current)
        seen = bytearray(seen)
    nodes = 0

    def rec(untried):
        nonlocal nodes
        size = len(current) + 1
        while untried:
            v = untried.pop()
            current.append(v)
            counts[size] += 1
            nodes += 1
            if size == order and on_order is not None:
                on_order(current)
            if size < n_max:
                new = [u for u in adj[v] if not seen[u]]
                for u in new:
                    seen[u] = 1
                rec(untried + new)
                for u in new:
                    seen[u] = 0
            current.pop()
        if nodes > 4096:
            budget.spend(nodes)
            nodes = 0

    rec(list(untried))
    budget.spend(nodes)
    return counts


def _animal_branch(args):
    w, n_max, state, budget = args
    return _redelmeier_count(w, None, n_max, _Budget(budget), start=state)


def animal_profile(w: GraphWindow, x: int, n_max: int, *, caps: Caps = DEFAULT_CAPS,
                   threads: int | None = None) -> list[int]:
    """``counts[k]`` = number of animals of order ``k`` containing ``x`` (k <= n_max)."""
    caps.check("animals", n_max)
    if n_max < 1:
        raise ArgumentError("animal order must be positive")
    require_exact_ball(w, x, n_max - 1)
    threads = resolve_threads(threads)
    nbrs = list(w.adjacency[x])
    if threads > 1 and n_max >= 3 and nbrs:
        # Second-level branches of the Redelmeier tree: root x is placed, then
        # neighbour nbrs[i] is popped with nbrs[:i] still untried.
        seen = bytearray(w.vertex_count)
        seen[x] = 1
        for u in nbrs:
            seen[u] = 1
        counts = [0] * (n_max + 1)
        counts[1] = 1
        tasks = []
        for i in range(len(nbrs) - 1, -1, -1):
            v = nbrs[i]
            rest = nbrs[:i]
            new = [u for u in w.adjacency[v] if not seen[u]]
            s = bytearray(seen)
            for u in new:
                s[u] = 1
            # The branch state places v, then explores untried = rest + new.
            tasks.append((w, n_max, ([x, v], rest + new, bytes(s)), caps.node_budget))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_animal_branch, tasks):
                for k, c in enumerate(part):
                    counts[k] += c
        # each task counted its own extensions from size 3 upward; add the
        # size-2 sets themselves
        counts[2] += len(nbrs)
        return counts
    return _redelmeier_count(w, x, n_max, _Budget(caps.node_budget))


def count_animals(w: GraphWindow, x: int, N: int, stream: Callable | None = None, *,
                  caps: Caps = DEFAULT_CAPS, threads: int | None = None) -> CountResult:
    """Exact number of connected vertex sets of size ``N`` containing ``x``.

    ``stream`` receives each animal once as a sorted tuple of vertex ids.
    """
    t0 = time.perf_counter()
    if stream is None:
        counts = animal_profile(w, x, N, caps=caps, threads=threads)
    else:
        caps.check("animals", N)
        if N < 1:
            raise ArgumentError("animal order must be positive")
        require_exact_ball(w, x, N - 1)
        counts = _redelmeier_count(w, x, N, _Budget(caps.node_budget),
                                   on_order=lambda cur: stream(tuple(sorted(cur))), order=N)
    return CountResult(N, counts[N], wall_time=time.perf_counter() - t0)


def for_each_animal(w: GraphWindow, x: int, N: int, fn: Callable[[list[int]], None], *,
                    caps: Caps = DEFAULT_CAPS) -> int:
    """Call ``fn`` with the (unsorted, reused) vertex list of every animal of order N.

    Returns the number of animals.  ``fn`` must copy the list if it keeps it.
    """
    caps.check("animals", N)
    if N < 1:
        raise ArgumentError("animal order must be positive")
    require_exact_ball(w, x, N - 1)
    return _redelmeier_count(w, x, N, _Budget(caps.node_budget), on_order=fn, order=N)[N]


def iter_animals(w: GraphWindow, x: int, N: int, *, caps: Caps = DEFAULT_CAPS) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for_each_animal(w, x, N, lambda cur: out.append(tuple(sorted(cur))), caps=caps)
    return out


def enumerate_connected_sets(w: GraphWindow, max_size: int, fn: Callable[[list[int]], None],
                             *, min_size: int = 1, caps: Caps = DEFAULT_CAPS) -> int:
    """Visit every connected vertex set of the window with ``min_size..max_size`` vertices.

    Each set is generated once, rooted at its smallest vertex.  Requires a
    standalone window (all degrees complete).  Returns the number visited.
    """
    if not w.is_standalone:
        raise ArgumentError("connected-set enumeration needs a standalone window")
    budget = _Budget(caps.node_budget)
    total = 0
    for r in range(w.vertex_count):
        def visit(cur, _fn=fn):
            if len(cur) >= min_size:
                _fn(cur)

        counts = _redelmeier_general(w, r, max_size, budget, visit)
        total += sum(counts[min_size:])
    return total


def _redelmeier_general(w, root, n_max, budget, visit) -> list[int]:
    # Variant reporting every size, with vertices below ``root`` forbidden.
    adj = w.adjacency
    counts = [0] * (n_max + 1)
    seen = bytearray(w.vertex_count)
    for v in range(root + 1):
        seen[v] = 1
    current: list[int] = []
    nodes = 0

    def rec(untried):
        nonlocal nodes
        size = len(current) + 1
        while untried:
            v = untried.pop()
            current.append(v)
            counts[size] += 1
            nodes += 1
            visit(current)
            if size < n_max:
                new = [u for u in adj[v] if not seen[u]]
                for u in new:
                    seen[u] = 1
                rec(untried + new)
                for u in new:
                    seen[u] = 0
            current.pop()
        if nodes > 4096:
            budget.spend(nodes)
            nodes = 0

    rec([root])
    budget.spend(nodes)
    return counts


# ---------------------------------------------------------------------------
# bound checks
# ---------------------------------------------------------------------------


def within_log_bound(count: int, bound: float, guard: float = LOG_GUARD) -> bool:
    """``count <= exp(bound)`` checked as ``log(count) <= bound + guard``."""
    if count == 0:
        return True
    return math.log(count) <= bound + guard


class ExponentialVerdict(NamedTuple):
    N: int
    count: int
    q: float
    passed: bool


def verify_exponential_bound(counts: Iterable[CountResult], q: float,
                             Ns: Iterable[int] | None = None) -> list[ExponentialVerdict]:
    """Exact test of ``count <= q**N`` for the selected orders."""
    if not q > 1:
        raise ArgumentError("q must exceed 1")
    by_n = {c.N: c for c in counts}
    wanted = sorted(by_n) if Ns is None else list(Ns)
    qf = Fraction(q)
    out = []
    for N in wanted:
        c = by_n.get(N)
        if c is None:
            raise ArgumentError(f"no count available for N={N}")
        out.append(ExponentialVerdict(N, c.count, q, c.count <= qf ** N))
    return out
