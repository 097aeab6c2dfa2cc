"""Greedy animals: the maximal total vertex weight over ``A_N(x)``.

``S_N(x) = max over animals A of order N containing x of sum_{y in A} Y_y``.
The exact score is computed from an *incidence table*: one 0/1 row per
animal over the vertices it may contain.  Vertices shared by every animal
are summed once and dropped from the table, which for animals rooted at
the end of a long spine shrinks the table to a few dozen columns.  One
table serves any number of weight replications through a matrix product.

The growth experiment compares the frequency of ``S_{N_k}(x) >= Y N_k``
with the Chernoff envelope ``exp(-t N_k (Y - gamma C))``, where the mean
weight at ``y`` is ``v_y = C n(y) log n(y)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ..enumeration import DEFAULT_CAPS, Caps, for_each_animal
from ..errors import ArgumentError, EnumerationCapError, ExperimentRefused, ModelError
from ..graph import GraphWindow, require_exact_ball
from ..rng import uniforms

LAWS = ("constant", "exponential", "uniform")
TABLE_ENTRY_LIMIT = 50_000_000

# -log(1 - s)/s = 2: the exponential law's Chernoff cut in units of the rate
_EXP_CUT = brentq(lambda s: -math.log1p(-s) / s - 2.0, 1e-9, 1 - 1e-12)


def nlogn(n: int) -> float:
    return n * math.log(n) if n > 1 else 0.0


@dataclass(frozen=True)
class WeightModel:
    """Independent vertex weights ``Y_x``.

    Laws: ``constant`` (value), ``exponential`` (rate), ``uniform`` on
    ``[0, bound]``.  With ``scaled=True`` the law at ``x`` is rescaled to
    mean ``C n(x) log n(x)``; otherwise the base parameters apply at every
    vertex.  When ``degrees`` are given the mean condition
    ``v_x <= C n(x) log n(x)`` is validated at construction.
    """

    law: str
    value: float = 1.0
    rate: float = 1.0
    bound: float = 1.0
    C: float = 1.0
    scaled: bool = False
    degrees: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.law not in LAWS:
            raise ModelError(f"unknown weight law {self.law!r}")
        if self.rate <= 0 or self.bound < 0 or self.value < 0 or self.C <= 0:
            raise ModelError("weight parameters must be positive")
        if self.degrees is not None:
            self.check_means(self.degrees)

    @classmethod
    def from_config(cls, cfg: dict, degrees=None) -> "WeightModel":
        cfg = dict(cfg)
        law = cfg.pop("law")
        try:
            return cls(law, degrees=degrees, **cfg)
        except TypeError as exc:
            raise ModelError(f"bad weight model parameters: {exc}") from None

    def to_config(self) -> dict:
        out = {"law": self.law, "C": self.C, "scaled": self.scaled}
        out.update({"constant": {"value": self.value}, "exponential": {"rate": self.rate},
                    "uniform": {"bound": self.bound}}[self.law])
        return out

    def base_mean(self) -> float:
        return {"constant": self.value, "exponential": 1.0 / self.rate,
                "uniform": self.bound / 2}[self.law]

    def mean(self, n: int) -> float:
        return self.C * nlogn(n) if self.scaled else self.base_mean()

    def check_means(self, degrees) -> None:
        bad = sorted({n for n in degrees if self.mean(n) > self.C * nlogn(n) * (1 + 1e-12)})
        if bad:
            n = bad[0]
            raise ModelError(
                f"mean weight {self.mean(n):g} at degree {n} exceeds C n log n = {self.C * nlogn(n):g}"
            )

    def log_mgf(self, n: int, t: float) -> float:
        """``w_x(t) = log E exp(t Y_x)`` (``inf`` outside the analytic interval)."""
        v = self.mean(n)
        if v == 0 or t == 0:
            return 0.0
        if self.law == "constant":
            return t * v
        if self.law == "exponential":
            s = t * v
            return -math.log1p(-s) if s < 1 else math.inf
        b = 2 * v
        s = t * b
        return s + math.log(-math.expm1(-s) / s)

    def chernoff_t(self, n: int) -> float:
        """Largest ``t`` with ``w_x(t)/t <= 2 v_x`` (``inf`` if it holds for all t)."""
        v = self.mean(n)
        if v == 0 or self.law in ("constant", "uniform"):
            return math.inf
        return _EXP_CUT / v

    def sample(self, u: np.ndarray, degrees: np.ndarray) -> np.ndarray:
        """Inverse-CDF transform of uniforms ``u`` (last axis = vertices)."""
        if self.scaled:
            v = self.C * np.array([nlogn(int(n)) for n in degrees])
        else:
            v = np.full(len(degrees), self.base_mean())
        if self.law == "constant":
            return np.broadcast_to(v, u.shape).copy()
        if self.law == "exponential":
            return -np.log1p(-u) * v
        return u * (2 * v)


# ---------------------------------------------------------------------------
# exact and heuristic scores
# ---------------------------------------------------------------------------


@dataclass
class AnimalIncidence:
    N: int
    common: np.ndarray        # vertex ids in every animal
    columns: np.ndarray       # remaining vertex ids
    table: np.ndarray         # (animals, columns) uint8
    count: int

    def scores(self, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Best total weight and maximising row for each replication.

        ``weights`` has shape ``(reps, n_vertices)`` indexed by vertex id.
        """
        w2 = np.atleast_2d(weights)
        base = w2[:, self.common].sum(axis=1) if len(self.common) else np.zeros(len(w2))
        if len(self.columns) == 0:
            return base, np.zeros(len(w2), dtype=int)
        tot = self.table.astype(np.float64) @ w2[:, self.columns].T
        rows = tot.argmax(axis=0)
        return base + tot[rows, np.arange(len(w2))], rows

    def animal(self, row: int) -> tuple[int, ...]:
        extra = self.columns[self.table[row].astype(bool)]
        return tuple(sorted(int(v) for v in np.concatenate([self.common, extra])))


def animal_incidence(w: GraphWindow, x: int, N: int, *, caps: Caps = DEFAULT_CAPS) -> AnimalIncidence:
    animals: list[tuple[int, ...]] = []
    for_each_animal(w, x, N, lambda cur: animals.append(tuple(cur)), caps=caps)
    used = sorted({v for a in animals for v in a})
    inter = set(animals[0]).intersection(*animals[1:]) if animals else set()
    common = np.array(sorted(inter), dtype=int)
    cols = [v for v in used if v not in inter]
    if len(animals) * max(len(cols), 1) > TABLE_ENTRY_LIMIT:
        raise EnumerationCapError(
            f"incidence table {len(animals)} x {len(cols)} exceeds {TABLE_ENTRY_LIMIT} entries"
        )
    pos = {v: i for i, v in enumerate(cols)}
    table = np.zeros((len(animals), len(cols)), dtype=np.uint8)
    for r, a in enumerate(animals):
        for v in a:
            i = pos.get(v)
            if i is not None:
                table[r, i] = 1
    return AnimalIncidence(N, common, np.array(cols, dtype=int), table, len(animals))


@dataclass(frozen=True)
class GreedyResult:
    N: int
    value: float
    witness: tuple[int, ...]
    exact: bool

    @property
    def label(self) -> str:
        return "exact" if self.exact else "lower bound"


def greedy_score(w: GraphWindow, x: int, N: int, weights, exact: bool = True, *,
                 restarts: int = 16, rng: np.random.Generator | None = None,
                 caps: Caps = DEFAULT_CAPS) -> GreedyResult:
    """``S_N(x)`` with a maximising animal.

    ``weights`` is indexed by vertex id and must cover ``B_{N-1}(x)``.  The
    heuristic mode grows animals from ``x`` by adding the heaviest boundary
    vertex, with random choices between the two heaviest on restarts after
    the first; its value is a lower bound.
    """
    if N < 1:
        raise ArgumentError("N must be positive")
    wts = np.asarray(weights, dtype=float)
    if exact:
        inc = animal_incidence(w, x, N, caps=caps)
        vals, rows = inc.scores(wts[None, :])
        return GreedyResult(N, float(vals[0]), inc.animal(int(rows[0])), True)
    require_exact_ball(w, x, N - 1)
    rng = rng if rng is not None else np.random.default_rng(0)
    best_val, best_set = -math.inf, ()
    for rep in range(max(1, restarts)):
        chosen = {x}
        total = float(wts[x])
        frontier = set(w.adjacency[x])
        while len(chosen) < N and frontier:
            ranked = sorted(frontier, key=lambda v: (-wts[v], v))
            pick = ranked[0]
            if rep > 0 and len(ranked) > 1 and rng.random() < 0.5:
                pick = ranked[1]
            chosen.add(pick)
            total += float(wts[pick])
            frontier.discard(pick)
            frontier.update(u for u in w.adjacency[pick] if u not in chosen)
        if len(chosen) == N and total > best_val:
            best_val, best_set = total, tuple(sorted(chosen))
    return GreedyResult(N, best_val, best_set, False)


# ---------------------------------------------------------------------------
# growth experiment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthRow:
    N: int
    animals: int
    mean_ratio: float        # average of S_N / N over replications
    max_ratio: float
    exceedances: int
    replications: int
    chernoff_t: float
    envelope: float          # exp(-t N (Y - gamma C))

    @property
    def frequency(self) -> float:
        return self.exceedances / self.replications

    def within(self, slack: float = 10.0) -> bool:
        return self.frequency <= slack * self.envelope


@dataclass(frozen=True)
class GrowthReport:
    x: int
    Y: float
    gamma: float
    C: float
    rows: tuple[GrowthRow, ...]


def greedy_growth_experiment(w: GraphWindow, x: int, Ns, model: WeightModel, replications: int,
                             Y: float, gamma: float | None, *, seed: int = 0,
                             t_max: float = 1.0, caps: Caps = DEFAULT_CAPS,
                             chunk: int = 2048) -> GrowthReport:
    """Empirical law of ``S_{N_k}(x)/N_k`` and exceedance counts of level ``Y``.

    Replication ``r`` draws the weights of ``B_{N-1}(x)`` (largest N) from
    the ``weights`` stream, trial ``r``, vertices in increasing id order.
    """
    if gamma is None or not math.isfinite(gamma):
        raise ExperimentRefused("gamma is not finite (divergent or uncertified series)")
    if not Y > gamma * model.C:
        raise ExperimentRefused(f"level Y={Y} must exceed gamma*C={gamma * model.C:g}")
    Ns = sorted(set(int(n) for n in Ns))
    if not Ns:
        raise ArgumentError("no radii given")
    dist = require_exact_ball(w, x, Ns[-1] - 1)
    verts = np.array([v for v, d in enumerate(dist) if 0 <= d <= Ns[-1] - 1], dtype=int)
    degs = np.array([w.ambient_degree[v] for v in verts])
    model.check_means(degs.tolist())
    t = min([model.chernoff_t(int(n)) for n in degs] + [t_max])
    incs = [animal_incidence(w, x, N, caps=caps) for N in Ns]
    sums = [0.0] * len(Ns)
    maxes = [-math.inf] * len(Ns)
    exceed = [0] * len(Ns)
    for start in range(0, replications, chunk):
        reps = range(start, min(start + chunk, replications))
        u = np.stack([uniforms(seed, "weights", r, len(verts)) for r in reps])
        full = np.zeros((len(reps), w.vertex_count))
        full[:, verts] = model.sample(u, degs)
        for i, (N, inc) in enumerate(zip(Ns, incs)):
            s, _ = inc.scores(full)
            ratio = s / N
            sums[i] += float(ratio.sum())
            maxes[i] = max(maxes[i], float(ratio.max()))
            exceed[i] += int((s >= Y * N).sum())
    rows = tuple(
        GrowthRow(N, inc.count, sums[i] / replications, maxes[i], exceed[i], replications, t,
                  math.exp(-t * N * (Y - gamma * model.C)))
        for i, (N, inc) in enumerate(zip(Ns, incs))
    )
    return GrowthReport(x, Y, gamma, model.C, rows)
