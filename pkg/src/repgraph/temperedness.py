"""Degree averages over animals, good animals, the gamma series and ball sequences.

For a weight function ``g`` and an animal ``A`` the average
``G(A; g) = mean of g(n(x)) over x in A`` is controlled on *good* animals
(``|A| >= phi(n_A)/2``) by

    gamma(g, phi) = 2 * sum_k g(t_{k+1}) / phi(t_k)

for a strictly increasing sequence ``t_k``.  :func:`gamma_series` evaluates
this series and certifies its tail from the asymptotic shape of ``g``,
``phi`` and the sequence rule; it never declares convergence from small
terms alone.

:func:`qpn_sequence` builds the radii ``N_k`` around a vertex at which all
animals are good.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple

from .enumeration import DEFAULT_CAPS, Caps, for_each_animal
from .errors import ArgumentError, CoverageError
from .graph import Animal, GraphWindow, bfs_distances
from .phi import Magnitude, PhiFunction, phi_inverse
from .repulsion import FAMILY_NAMES

WEIGHT_FAMILIES = ("log", "tlogt", "power", "table")


# ---------------------------------------------------------------------------
# weight functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """``log t``, ``t log t``, ``t**(theta + 1)`` or a non-decreasing table ``g(1), g(2), ...``."""

    family: str
    theta: float = 0.0
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.family not in WEIGHT_FAMILIES:
            raise ArgumentError(f"unknown weight family {self.family!r}")
        if self.family == "table":
            if not self.table:
                raise ArgumentError("table weight needs values")
            if any(b < a for a, b in zip(self.table, self.table[1:])):
                raise ArgumentError("weight table must be non-decreasing")
        if self.family == "power" and self.theta + 1 < 0:
            raise ArgumentError("t**(theta+1) must be non-decreasing: theta >= -1")

    @classmethod
    def log(cls) -> "WeightFunction":
        return cls("log")

    @classmethod
    def tlogt(cls) -> "WeightFunction":
        return cls("tlogt")

    @classmethod
    def power(cls, theta: float) -> "WeightFunction":
        return cls("power", theta=float(theta))

    @classmethod
    def from_table(cls, values) -> "WeightFunction":
        return cls("table", table=tuple(float(v) for v in values))

    @classmethod
    def parse(cls, name: str) -> "WeightFunction":
        """``log``, ``tlogt`` (or ``t*log t``) and ``power(theta)``."""
        key = name.replace(" ", "").lower()
        if key in ("log", "logt"):
            return cls.log()
        if key in ("tlogt", "t*logt", "t*log(t)", "tlog"):
            return cls.tlogt()
        m = re.fullmatch(r"power\(([-+0-9.eE/]+)\)", key)
        if m:
            return cls.power(_parse_number(m.group(1)))
        raise ArgumentError(f"unknown weight function {name!r}")

    def __call__(self, t: float) -> float:
        if t < 1:
            raise ArgumentError("weights are defined for t >= 1")
        if self.family == "log":
            return math.log(t)
        if self.family == "tlogt":
            return t * math.log(t)
        if self.family == "power":
            return float(t) ** (self.theta + 1)
        if int(t) != t or t > len(self.table):
            raise ArgumentError(f"weight table has no value at {t}")
        return self.table[int(t) - 1]

    def log_at(self, m: Magnitude) -> float:
        """``log g(t)`` for a possibly huge ``t`` (``-inf`` where ``g(t) = 0``)."""
        if self.family == "log":
            return -math.inf if m.log <= 0 else m.loglog
        if self.family == "tlogt":
            return -math.inf if m.log <= 0 else m.log + m.loglog
        if self.family == "power":
            return (self.theta + 1) * m.log
        v = self(m.value)
        return math.log(v) if v > 0 else -math.inf

    @property
    def growth(self) -> tuple[float, float, float] | None:
        """Signature ``(a, b, c)``: ``log g ~ a*u + b*log u + c*log log u`` with ``u = log t``."""
        if self.family == "log":
            return (0.0, 1.0, 0.0)
        if self.family == "tlogt":
            return (1.0, 1.0, 0.0)
        if self.family == "power":
            return (self.theta + 1, 0.0, 0.0)
        return None

    def describe(self) -> str:
        if self.family == "log":
            return "log t"
        if self.family == "tlogt":
            return "t log t"
        if self.family == "power":
            return f"t^{self.theta + 1:g}"
        return f"table{list(self.table)}"


def _parse_number(s: str) -> float:
    if "/" in s:
        a, b = s.split("/")
        return float(a) / float(b)
    return float(s)


# ---------------------------------------------------------------------------
# tempered sequences
# ---------------------------------------------------------------------------


SEQUENCE_RULES = ("tower", "geometric", "explicit")


@dataclass(frozen=True)
class TemperedSequence:
    """Strictly increasing ``t_1 < t_2 < ...``.

    Rules: ``tower`` ``t_k = a**(b**k)``; ``geometric`` ``t_k = c * r**(k-1)``;
    ``explicit`` uses ``prefix`` only (finite).  ``prefix`` overrides the
    first terms of a closed-form rule and ``anchor`` overrides ``t_1``.
    Values may be real; they are handled through :class:`Magnitude`.
    """

    rule: str = "tower"
    a: float = math.e
    b: float = math.e
    c: float = 1.0
    r: float = 2.0
    prefix: tuple[float, ...] = ()
    anchor: float | None = None

    def __post_init__(self):
        if self.rule not in SEQUENCE_RULES:
            raise ArgumentError(f"unknown sequence rule {self.rule!r}")
        if self.rule == "tower" and not (self.a > 1 and self.b > 1):
            raise ArgumentError("tower rule needs a > 1 and b > 1")
        if self.rule == "geometric" and not (self.c > 0 and self.r > 1):
            raise ArgumentError("geometric rule needs c > 0 and r > 1")
        if self.rule == "explicit" and len(self.prefix) < 2:
            raise ArgumentError("explicit sequence needs at least two terms")
        check = max(len(self.prefix), 1) + 2
        if self.length is not None:
            check = self.length
        logs = [self.magnitude(k).log for k in range(1, check + 1)]
        for k in range(1, len(logs)):
            if not logs[k] > logs[k - 1]:
                raise ArgumentError(f"sequence not strictly increasing at k={k}")

    @classmethod
    def tower(cls, a: float = math.e, b: float = math.e, anchor: float | None = None) -> "TemperedSequence":
        return cls("tower", a=a, b=b, anchor=anchor)

    @classmethod
    def geometric(cls, c: float = 1.0, r: float = 2.0, anchor: float | None = None) -> "TemperedSequence":
        return cls("geometric", c=c, r=r, anchor=anchor)

    @classmethod
    def explicit(cls, values) -> "TemperedSequence":
        return cls("explicit", prefix=tuple(values))

    @classmethod
    def from_config(cls, cfg: dict) -> "TemperedSequence":
        cfg = dict(cfg)
        rule = cfg.pop("rule", "tower")
        if "values" in cfg:
            cfg["prefix"] = tuple(cfg.pop("values"))
        if "prefix" in cfg:
            cfg["prefix"] = tuple(cfg["prefix"])
        try:
            return cls(rule, **cfg)
        except TypeError as exc:
            raise ArgumentError(f"bad sequence parameters: {exc}") from None

    def to_config(self) -> dict:
        out: dict = {"rule": self.rule}
        if self.rule == "tower":
            out.update(a=self.a, b=self.b)
        elif self.rule == "geometric":
            out.update(c=self.c, r=self.r)
        if self.prefix:
            out["prefix"] = list(self.prefix)
        if self.anchor is not None:
            out["anchor"] = self.anchor
        return out

    @property
    def length(self) -> int | None:
        return len(self.prefix) if self.rule == "explicit" else None

    def closed_form(self, k: int) -> bool:
        """Whether ``t_k`` comes from the tail rule (not from prefix or anchor)."""
        if k <= len(self.prefix):
            return False
        if k == 1 and self.anchor is not None:
            return False
        return self.rule != "explicit"

    def magnitude(self, k: int) -> Magnitude:
        if k < 1:
            raise ArgumentError("sequence index starts at 1")
        if k <= len(self.prefix):
            return Magnitude.of(self.prefix[k - 1])
        if k == 1 and self.anchor is not None:
            return Magnitude.of(self.anchor)
        if self.rule == "explicit":
            raise CoverageError(f"explicit sequence has only {len(self.prefix)} terms")
        if self.rule == "tower":
            return Magnitude.from_loglog(k * math.log(self.b) + math.log(math.log(self.a)))
        if float(self.c).is_integer() and float(self.r).is_integer():
            return Magnitude.of(int(self.c) * int(self.r) ** (k - 1))
        return Magnitude.from_log(math.log(self.c) + (k - 1) * math.log(self.r))

    def value(self, k: int) -> float:
        return self.magnitude(k).value

    def values(self, K: int) -> list[float]:
        return [self.value(k) for k in range(1, K + 1)]

    def describe(self) -> str:
        if self.rule == "tower":
            core = f"{self.a:g}^({self.b:g}^k)"
        elif self.rule == "geometric":
            core = f"{self.c:g}*{self.r:g}^(k-1)"
        else:
            core = f"{list(self.prefix)}"
        if self.anchor is not None:
            core += f", t_1={self.anchor:g}"
        return core


# ---------------------------------------------------------------------------
# animal averages
# ---------------------------------------------------------------------------


def g_average(a: Animal, g: WeightFunction) -> float:
    deg = a.window.ambient_degree
    return sum(g(deg[v]) for v in a.vertices) / a.order


def max_g_average(w: GraphWindow, x: int, N: int, g: WeightFunction, *,
                  caps: Caps = DEFAULT_CAPS) -> tuple[float, tuple[int, ...]]:
    """Maximum of ``G(A; g)`` over animals of order N containing ``x``, with a maximiser."""
    gv = [g(d) if d >= 1 else 0.0 for d in w.ambient_degree]
    best = [-math.inf, ()]

    def visit(cur):
        s = sum(gv[v] for v in cur)
        if s > best[0]:
            best[0], best[1] = s, tuple(sorted(cur))

    for_each_animal(w, x, N, visit, caps=caps)
    return best[0] / N, best[1]


class GoodVerdict(NamedTuple):
    good: bool
    margin: float


def is_good_animal(a: Animal, phi: PhiFunction) -> GoodVerdict:
    """``|V(A)| >= phi(n_A)/2`` with ``n_A`` the largest ambient degree; margin is the difference."""
    n_a = max(a.window.ambient_degree[v] for v in a.vertices)
    margin = a.order - phi(n_a) / 2
    return GoodVerdict(margin >= 0, margin)


@dataclass(frozen=True)
class ShellCounts:
    counts: tuple[int, ...]   # m_1 .. m_l
    below: int                # vertices with n(x) <= t_1

    @property
    def total(self) -> int:
        return self.below + sum(self.counts)


def shell_counts(a: Animal, ts: TemperedSequence) -> ShellCounts:
    """``m_k = #{x in A : t_k < n(x) <= t_{k+1}}`` for ``k = 1..l``, ``l`` minimal with ``n_A <= t_{l+1}``."""
    degs = [a.window.ambient_degree[v] for v in a.vertices]
    n_a = max(degs)
    bounds = [ts.value(1)]
    while bounds[-1] < n_a:
        k = len(bounds) + 1
        if ts.length is not None and k > ts.length:
            raise CoverageError(f"sequence ends at {bounds[-1]} below n_A = {n_a}")
        bounds.append(ts.value(k))
    counts = [0] * (len(bounds) - 1)
    below = 0
    for d in degs:
        if d <= bounds[0]:
            below += 1
            continue
        for k in range(len(counts)):
            if bounds[k] < d <= bounds[k + 1]:
                counts[k] += 1
                break
    return ShellCounts(tuple(counts), below)


def shell_weight_bound(a: Animal, g: WeightFunction, ts: TemperedSequence) -> float:
    """``(1/|A|) * sum_k g(t_{k+1}) m_k``: the shell-wise majorant of ``G(A; g)``.

    Vertices with ``n(x) <= t_1`` do not enter this sum.
    """
    sc = shell_counts(a, ts)
    total = sum(math.exp(g.log_at(ts.magnitude(k + 2))) * m for k, m in enumerate(sc.counts) if m)
    return total / a.order


# ---------------------------------------------------------------------------
# gamma series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaSeries:
    """``gamma = 2 * sum_k g(t_{k+1})/phi(t_k)`` with a certified enclosure.

    ``partial_sums`` are the undoubled sums ``S_1, S_2, ...``.  When
    ``converged``, the true value lies in ``[gamma - tail_bound,
    gamma + tail_bound]`` and ``tail_bound < tol``.
    """

    partial_sums: tuple[float, ...]
    tail_bound: float
    gamma: float | None
    converged: bool
    status: str
    tol: float
    message: str = ""
    ratio_limit: float | None = None

    @property
    def q(self) -> float | None:
        return None if self.gamma is None else math.exp(self.gamma)

    @property
    def gamma_upper(self) -> float | None:
        return None if self.gamma is None else self.gamma + self.tail_bound

    @property
    def terms(self) -> int:
        return len(self.partial_sums)


def _log_term(g: WeightFunction, phi: PhiFunction, ts: TemperedSequence, k: int) -> float:
    return g.log_at(ts.magnitude(k + 1)) - phi.log_at(ts.magnitude(k))


def classify_series(g: WeightFunction, phi: PhiFunction, ts: TemperedSequence) -> tuple[str, float | None]:
    """Asymptotic class of the series from closed-form signatures.

    Returns ``(kind, ratio_limit)`` with kind one of ``ratio`` (limit ratio
    below 1), ``integral`` (exact p-series shape), ``divergent``, ``finite``
    (explicit sequence) or ``undetermined``.
    """
    if ts.rule == "explicit":
        return "finite", None
    gs, ps = g.growth, phi.growth
    if gs is None or ps is None:
        return "undetermined", None
    ga, gb, gc = gs
    pa, pb, pc = ps
    tol = 1e-12
    if ts.rule == "tower":
        lb = math.log(ts.b)
        lead = ga * ts.b - pa
        if lead < -tol:
            return "ratio", 0.0
        if lead > tol:
            return "divergent", math.inf
        second = (gb - pb) * lb
        if second < -tol:
            return "ratio", math.exp(second)
        if second > tol:
            return "divergent", math.exp(second)
        s = pc - gc
        if s > 1 + tol:
            exact = g.family == "log" and phi.family == "loglog"
            return ("integral" if exact else "undetermined"), 1.0
        return "divergent", 1.0
    lr = math.log(ts.r)
    lead = (ga - pa) * lr
    if lead < -tol:
        return "ratio", math.exp(lead)
    if lead > tol:
        return "divergent", math.exp(lead)
    # polynomial / logarithmic decay in k: Bertrand's criterion
    p = pb - gb
    s = pc - gc
    if p > 1 + tol or (abs(p - 1) <= tol and s > 1 + tol):
        return "undetermined", 1.0
    return "divergent", 1.0


def gamma_series(g: WeightFunction, phi: PhiFunction, ts: TemperedSequence,
                 tol: float = 1e-9, max_terms: int = 2_000_000) -> GammaSeries:
    """Evaluate ``gamma(g, phi)`` along ``ts`` with a certified tail.

    * ``integral``: log weight, loglog profile and tower sequence give terms
      ``b / (upsilon * (k log b + log log a)^(1+eps))``; the tail after K lies
      between the integrals from K+1 and from K.
    * ``ratio``: once the observed term ratios stay below
      ``r = (1 + limit)/2``, the tail after K is at most ``a_{K+1}/(1 - r)``.
    * ``finite``: explicit sequences are summed as given (not a certificate).
    """
    if not tol > 0:
        raise ArgumentError("tol must be positive")
    kind, rho = classify_series(g, phi, ts)
    if kind == "divergent":
        sums, s = [], 0.0
        for k in range(1, 6):
            try:
                lt = _log_term(g, phi, ts, k)
            except (ArgumentError, OverflowError):
                break
            s += math.exp(lt) if lt < 700 else math.inf
            sums.append(s)
        return GammaSeries(tuple(sums), math.inf, None, False, "divergent", tol,
                           "terms do not decay summably (limit ratio "
                           f"{'inf' if rho == math.inf else f'{rho:.4g}'})", rho)
    if kind == "finite":
        s, sums = 0.0, []
        for k in range(1, ts.length):
            s += math.exp(_log_term(g, phi, ts, k))
            sums.append(s)
        return GammaSeries(tuple(sums), math.inf, 2 * s, False, "finite", tol,
                           "explicit sequence: finite sum, no tail certificate", None)
    if kind == "undetermined":
        s, sums = 0.0, []
        for k in range(1, 21):
            s += math.exp(_log_term(g, phi, ts, k))
            sums.append(s)
        return GammaSeries(tuple(sums), math.inf, None, False, "undetermined", tol,
                           "no certified tail for this combination", rho)
    if kind == "integral":
        return _gamma_integral(g, phi, ts, tol, max_terms)
    return _gamma_ratio(g, phi, ts, tol, max_terms, rho)


def _gamma_integral(g, phi, ts, tol, max_terms) -> GammaSeries:
    c = math.log(ts.b)
    d = math.log(math.log(ts.a))
    eps = phi.epsilon
    const = ts.b / phi.upsilon

    def tail_integral(K: float) -> float:
        return const / (c * eps * (c * K + d) ** eps)

    # the closed form must apply beyond the first index we sum over
    k0 = 1
    while not (ts.closed_form(k0) and ts.closed_form(k0 + 1) and c * k0 + d > 0):
        k0 += 1
    sums: list[float] = []
    s = 0.0
    K = 0
    target = max(64, k0)
    while True:
        while K < target:
            K += 1
            s += math.exp(_log_term(g, phi, ts, K))
            sums.append(s)
        lo, hi = tail_integral(K + 1), tail_integral(K)
        half = hi - lo
        if half < tol or K >= max_terms:
            break
        target = min(2 * K, max_terms)
    gamma = 2 * (s + 0.5 * (lo + hi))
    ok = half < tol
    return GammaSeries(tuple(sums), half, gamma, ok, "integral", tol,
                       f"integral comparison after {K} terms", 1.0)


def _gamma_ratio(g, phi, ts, tol, max_terms, rho) -> GammaSeries:
    r = (1 + rho) / 2
    lookahead = 8
    logs: list[float] = []
    sums: list[float] = []
    s = 0.0
    good_from = None  # first k with ratio a_{j+1}/a_j <= r for all j >= k observed
    log_r = math.log(r) if r > 0 else -math.inf
    k = 0
    while k < max_terms:
        k += 1
        lt = _log_term(g, phi, ts, k)
        if math.isnan(lt):
            break
        logs.append(lt)
        s += math.exp(lt) if lt > -745 else 0.0
        sums.append(s)
        if k >= 2:
            prev = logs[-2]
            ok = lt == -math.inf or (prev > -math.inf and lt - prev <= log_r + 1e-15)
            if ok:
                if good_from is None:
                    good_from = k - 1
            else:
                good_from = None
        # certify the tail after K = k - lookahead
        if good_from is not None and k - good_from >= lookahead:
            K = k - lookahead
            if K >= good_from:
                a_next = math.exp(logs[K]) if logs[K] > -745 else 0.0  # a_{K+1}
                tail = a_next / (1 - r)
                if tail < tol:
                    s_K = sums[K - 1]
                    return GammaSeries(tuple(sums[:K]), tail, 2 * s_K + tail, True, "ratio", tol,
                                       f"ratio bound r={r:.4g} from k={good_from}", rho)
        if lt == -math.inf and good_from is not None:
            # all further terms vanish in floating point; stop with what we have
            K = k
            return GammaSeries(tuple(sums), 0.0, 2 * s, True, "ratio", tol,
                               "terms vanished below floating-point range", rho)
    return GammaSeries(tuple(sums), math.inf, 2 * s, False, "ratio", tol,
                       "tail not certified within the term budget", rho)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Preset:
    name: str
    g: WeightFunction
    phi: PhiFunction
    ts: TemperedSequence


def preset(name: str) -> Preset:
    """``paths-default``, ``animals-default`` or ``randic(theta)``.

    All use ``phi = log t (log log t)^2`` and ``t_k = exp(e^k)``.
    """
    key = name.replace(" ", "")
    phi = PhiFunction.loglog(1.0, 1.0)
    ts = TemperedSequence.tower()
    if key == "paths-default":
        g = WeightFunction.log()
    elif key == "animals-default":
        g = WeightFunction.tlogt()
    else:
        m = re.fullmatch(r"randic\(([-+0-9.eE/]+)\)", key)
        if not m:
            raise ArgumentError(f"unknown preset {name!r}")
        g = WeightFunction.power(_parse_number(m.group(1)))
    return Preset(key, g, phi, ts)


def preset_weight(name: str) -> WeightFunction:
    return preset(name).g


# ---------------------------------------------------------------------------
# ball sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QpnStep:
    k: int
    pivot: int            # x_k
    next_vertex: int      # x_{k+1}
    N: int                # rho(x, x_{k+1}) - 1
    max_degree: int       # over B_N(x)
    phi_inverse: int      # phi^{-1}(2N + 1)

    @property
    def holds(self) -> bool:
        return self.max_degree <= self.phi_inverse


@dataclass(frozen=True)
class QpnResult:
    family: str
    x: int
    steps: tuple[QpnStep, ...] = ()
    exhausted: bool = True
    reason: str = ""
    N_x: int | None = None
    case: str | None = None
    checked_up_to: int | None = None
    plus_failures: tuple[int, ...] = ()

    @property
    def Ns(self) -> tuple[int, ...]:
        return tuple(s.N for s in self.steps)

    @property
    def passed(self) -> bool:
        return all(s.holds for s in self.steps) and not self.plus_failures


def _complete_radius(w: GraphWindow, dist: list[int]) -> float:
    """Vertices at distance <= this value are all present in the window."""
    r = math.inf
    for v, d in enumerate(dist):
        if d >= 0 and not w.is_complete(v) and d < r:
            r = d
    return r


def _closest(w, dist, pred, limit):
    """Closest vertex satisfying ``pred``; ties by larger degree then lower id.

    Returns ``(vertex, distance)``, or ``None`` when no certified candidate
    exists within ``limit``.
    """
    best = None
    for v, d in enumerate(dist):
        if d < 0 or d > limit or not pred(v):
            continue
        key = (d, -w.ambient_degree[v], v)
        if best is None or key < best:
            best = key
    return None if best is None else (best[2], best[0])


def _ball_max_degree(w, dist, N) -> int:
    return max(w.ambient_degree[v] for v, d in enumerate(dist) if 0 <= d <= N)


def qpn_sequence(w: GraphWindow, x: int, phi: PhiFunction, n_star: int, family: str,
                 max_steps: int | None = None) -> QpnResult:
    """Radii around ``x`` at which every ball has small maximal degree.

    ``minus``: ``x_1`` is the closest vertex of degree above ``max(n(x), n_star)``
    and ``x_{j+1}`` the closest with degree above ``n(x_j)``; ``N_j =
    rho(x, x_{j+1}) - 1``.  Each ``N_j`` is checked against
    ``max_{B_N} n <= phi^{-1}(2N + 1)``.  The sequence stops, flagged
    exhausted, when the next vertex cannot be certified inside the window.

    ``plus``: computes the threshold ``N_x`` by the two-case construction
    and checks ``max_{B_N} n <= phi^{-1}(2N)`` for every ``N >= N_x`` whose
    ball lies in the window (up to the eccentricity of ``x`` on a
    standalone component, beyond which balls stop growing).
    """
    if family not in FAMILY_NAMES:
        raise ArgumentError(f"family must be 'minus' or 'plus', got {family!r}")
    w.check_vertex(x)
    deg = w.ambient_degree
    dist = bfs_distances(w, x)
    limit = _complete_radius(w, dist)
    if family == "minus":
        return _qpn_minus(w, x, phi, n_star, dist, limit, max_steps)
    return _qpn_plus(w, x, phi, n_star, dist, limit, deg)


def _qpn_minus(w, x, phi, n_star, dist, limit, max_steps) -> QpnResult:
    deg = w.ambient_degree
    first = _closest(w, dist, lambda v: deg[v] > n_star and deg[v] > deg[x], limit)
    if first is None:
        return QpnResult("minus", x, (), True, "no vertex of larger degree in the certified window")
    pivot = first[0]
    steps = []
    while max_steps is None or len(steps) < max_steps:
        nxt = _closest(w, dist, lambda v, p=deg[pivot]: deg[v] > p, limit)
        if nxt is None:
            return QpnResult("minus", x, tuple(steps), True,
                             f"no vertex of degree above {deg[pivot]} in the certified window")
        v, d = nxt
        N = d - 1
        steps.append(QpnStep(len(steps) + 1, pivot, v, N, _ball_max_degree(w, dist, N),
                             phi_inverse(phi, 2 * N + 1)))
        pivot = v
    return QpnResult("minus", x, tuple(steps), False, "step limit reached")


def _qpn_plus(w, x, phi, n_star, dist, limit, deg) -> QpnResult:
    tilde = _closest(w, dist, lambda v: deg[v] > n_star, limit)
    reach = max(d for d in dist if d >= 0)
    standalone = limit == math.inf
    if tilde is None:
        case, reason = "none", "no high-degree vertex in the certified window"
        N_x = math.floor(phi(n_star) / 2) + 1
    else:
        t, rho_t = tilde
        if rho_t > phi(deg[t]) / 2:
            case, reason = "i", f"nearest high-degree vertex {t} lies beyond phi(n)/2"
            N_x = math.floor(phi(n_star) / 2) + 1
        else:
            x1 = _closest(w, dist, lambda v: deg[v] > deg[t], limit)
            if x1 is None:
                return QpnResult("plus", x, (), True, f"no vertex of degree above {deg[t]} "
                                 "in the certified window", None, "ii")
            case, reason = "ii", f"nearest high-degree vertex {t}; next larger degree at {x1[0]}"
            N_x = x1[1]
    top = reach if standalone else int(limit)
    failures = []
    for N in range(max(N_x, 1), top + 1):
        if _ball_max_degree(w, dist, N) > phi_inverse(phi, 2 * N):
            failures.append(N)
    return QpnResult("plus", x, (), not standalone, reason, N_x, case, top, tuple(failures))
