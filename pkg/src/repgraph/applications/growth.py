"""Exponential growth of spheres and balls around a vertex."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ArgumentError
from ..graph import GraphWindow, require_exact_ball


@dataclass(frozen=True)
class GrowthCheck:
    N: int
    sphere: int
    ball: int
    log_qN: float
    log_ball_bound: float     # log(B_x q^N)
    passed_sphere: bool
    passed_ball: bool

    @property
    def passed(self) -> bool:
        return self.passed_sphere and self.passed_ball


def ball_growth_check(w: GraphWindow, x: int, q: float, N_range) -> list[GrowthCheck]:
    """``|S_N(x)| <= q^N`` and ``|B_N(x)| <= B_x q^N`` with ``B_x = |B_{N0}|/q^{N0}``.

    ``N0`` is the first radius of ``N_range``; comparisons are done in log
    space with a ``1e-9`` guard.
    """
    if not q > 1:
        raise ArgumentError("q must exceed 1")
    Ns = sorted(set(int(n) for n in N_range))
    if not Ns or Ns[0] < 1:
        raise ArgumentError("radii must be positive")
    dist = require_exact_ball(w, x, Ns[-1])
    lq = math.log(q)
    out = []
    log_bx = None
    for N in Ns:
        sphere = sum(1 for d in dist if d == N)
        ball = sum(1 for d in dist if 0 <= d <= N)
        if log_bx is None:
            log_bx = math.log(ball) - N * lq
        log_bb = log_bx + N * lq
        ok_s = sphere == 0 or math.log(sphere) <= N * lq + 1e-9
        ok_b = math.log(ball) <= log_bb + 1e-9
        out.append(GrowthCheck(N, sphere, ball, N * lq, log_bb, ok_s, ok_b))
    return out
