"""Generalised Randic index of animals and its maximum over ``A_N(x)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..enumeration import DEFAULT_CAPS, Caps, for_each_animal
from ..graph import Animal, GraphWindow


def randic_index(a: Animal, theta: float, intrinsic: bool = False) -> float:
    """``sum over induced edges <x,y> of (n(x) n(y))**theta``.

    Degrees are ambient by default; ``intrinsic=True`` uses degrees inside
    the animal (the molecular-graph convention).
    """
    if intrinsic:
        d = {v: len(nb) for v, nb in a.adjacency.items()}
    else:
        d = a.window.ambient_degree
    return sum((d[x] * d[y]) ** theta for x, y in a.edges)


@dataclass(frozen=True)
class RandicMax:
    N: int
    theta: float
    value: float
    witness: tuple[int, ...]

    def within(self, gamma: float) -> bool:
        """``value <= exp(gamma * N)``, compared in log space."""
        if self.value <= 0:
            return True
        return math.log(self.value) <= gamma * self.N + 1e-9


def randic_max(w: GraphWindow, x: int, N: int, theta: float, *, caps: Caps = DEFAULT_CAPS,
               intrinsic: bool = False) -> RandicMax:
    """Exact maximum of the index over animals of order N containing ``x``."""
    adj = w.adjacency
    amb = w.ambient_degree
    pair = {}
    best = [-math.inf, ()]
    inside = bytearray(w.vertex_count)

    def weight(u, v, du, dv):
        key = (du, dv)
        val = pair.get(key)
        if val is None:
            val = pair[key] = (du * dv) ** theta
        return val

    def visit(cur):
        for v in cur:
            inside[v] = 1
        total = 0.0
        if intrinsic:
            deg = {v: sum(1 for u in adj[v] if inside[u]) for v in cur}
            for v in cur:
                for u in adj[v]:
                    if u > v and inside[u]:
                        total += weight(u, v, deg[u], deg[v])
        else:
            for v in cur:
                for u in adj[v]:
                    if u > v and inside[u]:
                        total += weight(u, v, amb[u], amb[v])
        for v in cur:
            inside[v] = 0
        if total > best[0]:
            best[0], best[1] = total, tuple(sorted(cur))

    for_each_animal(w, x, N, visit, caps=caps)
    return RandicMax(N, theta, best[0], best[1])
