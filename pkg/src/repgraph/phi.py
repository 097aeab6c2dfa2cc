"""Repulsion profiles: strictly increasing functions on the positive integers.

Profiles are evaluated exactly (Python integers) whenever the closed form
allows it, otherwise in floating point.  Comparing an integer distance with a
floating profile value uses a half-ulp guard so that a value which is
mathematically an integer but rounded slightly upward does not reject an
exact tie.  Ties count as satisfying the repulsion inequality.

Very large arguments (tempered sequences such as ``exp(e^k)``) are handled in
log space through :class:`Magnitude`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .errors import ArgumentError

FAMILIES = ("loglog", "power", "affine", "table")


@dataclass(frozen=True)
class Magnitude:
    """A positive number known through ``log t`` and ``log log t``.

    ``value`` is the number itself when representable (``math.inf`` otherwise).
    ``loglog`` is ``None`` when ``t <= 1``.
    """

    value: float | int
    log: float
    loglog: float | None

    @classmethod
    def of(cls, t: float | int) -> "Magnitude":
        if t <= 0:
            raise ArgumentError("magnitude of a non-positive number")
        u = math.log(t)
        return cls(t, u, math.log(u) if u > 0 else None)

    @classmethod
    def from_loglog(cls, ll: float) -> "Magnitude":
        u = math.exp(ll) if ll < 709 else math.inf
        t = math.exp(u) if u < 709 else math.inf
        return cls(t, u, ll)

    @classmethod
    def from_log(cls, u: float) -> "Magnitude":
        t = math.exp(u) if u < 709 else math.inf
        return cls(t, u, math.log(u) if u > 0 else None)


def at_least(distance: float | int, value: float | int) -> bool:
    """``distance >= value`` with a half-ulp allowance on floating ``value``."""
    if isinstance(value, float) and math.isfinite(value):
        return distance >= value - 0.5 * math.ulp(value)
    return distance >= value


def _integral(x) -> bool:
    return isinstance(x, int) or (isinstance(x, float) and x.is_integer())


@dataclass(frozen=True)
class PhiFunction:
    """A strictly increasing map from positive integers to ``(0, inf)``.

    Families:

    ``loglog``   ``upsilon * log t * (log log t)**(1 + epsilon)``, defined for t >= 3
    ``power``    ``max(coef * t**exponent + shift, floor * t)``
    ``affine``   the ``power`` family with exponent 1
    ``table``    explicit values ``phi(1), phi(2), ...``

    For ``power``/``affine`` the domain starts at the first integer where the
    value is positive; a positive ``floor`` keeps small arguments positive
    while preserving strict monotonicity.
    """

    family: str
    upsilon: float = 1.0
    epsilon: float = 1.0
    coef: float = 1.0
    exponent: float = 1.0
    shift: float = 0.0
    floor: float | None = None
    table: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ArgumentError(f"unknown phi family {self.family!r}")
        if self.family == "loglog":
            if self.upsilon <= 0 or self.epsilon < 0:
                raise ArgumentError("loglog phi needs upsilon > 0 and epsilon >= 0")
        elif self.family in ("power", "affine"):
            if self.coef <= 0 or self.exponent <= 0:
                raise ArgumentError("power phi needs coef > 0 and exponent > 0")
            if self.floor is not None and self.floor < 0:
                raise ArgumentError("floor must be non-negative")
            if self.family == "affine" and self.exponent != 1:
                raise ArgumentError("affine phi has exponent 1")
        else:
            vals = self.table
            if not vals:
                raise ArgumentError("table phi needs at least one value")
            if vals[0] <= 0:
                raise ArgumentError("phi values must be positive")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ArgumentError("phi not strictly increasing")
        object.__setattr__(self, "_dmin", self._find_domain_min())

    # constructors -------------------------------------------------------

    @classmethod
    def loglog(cls, upsilon: float = 1.0, epsilon: float = 1.0) -> "PhiFunction":
        return cls("loglog", upsilon=upsilon, epsilon=epsilon)

    @classmethod
    def power(cls, exponent: float, coef: float = 1, shift: float = 0,
              floor: float | None = None) -> "PhiFunction":
        return cls("power", coef=coef, exponent=exponent, shift=shift, floor=floor)

    @classmethod
    def affine(cls, slope: float, intercept: float = 0, floor: float | None = None) -> "PhiFunction":
        return cls("affine", coef=slope, exponent=1, shift=intercept, floor=floor)

    @classmethod
    def from_table(cls, values) -> "PhiFunction":
        return cls("table", table=tuple(values))

    @classmethod
    def from_config(cls, cfg: dict[str, Any]) -> "PhiFunction":
        cfg = dict(cfg)
        fam = cfg.pop("family", None)
        params = cfg.pop("params", None)
        if params is not None:
            cfg.update(params)
        try:
            if fam == "loglog":
                return cls.loglog(**cfg)
            if fam == "power":
                return cls.power(**cfg)
            if fam == "affine":
                return cls.affine(**cfg)
            if fam == "table":
                return cls.from_table(cfg.pop("values"))
        except TypeError as exc:
            raise ArgumentError(f"bad parameters for phi family {fam!r}: {exc}") from None
        except KeyError:
            raise ArgumentError("table phi needs 'values'") from None
        raise ArgumentError(f"unknown phi family {fam!r}")

    def to_config(self) -> dict[str, Any]:
        if self.family == "loglog":
            return {"family": "loglog", "upsilon": self.upsilon, "epsilon": self.epsilon}
        if self.family == "table":
            return {"family": "table", "values": list(self.table)}
        out = {"family": self.family}
        if self.family == "affine":
            out.update(slope=self.coef, intercept=self.shift)
        else:
            out.update(exponent=self.exponent, coef=self.coef, shift=self.shift)
        if self.floor is not None:
            out["floor"] = self.floor
        return out

    # evaluation ---------------------------------------------------------

    @property
    def domain_min(self) -> int:
        return self._dmin

    def _find_domain_min(self) -> int:
        if self.family == "loglog":
            return 3
        if self.family == "table":
            return 1
        t = 1
        while self._raw(t) <= 0:
            t += 1
            if t > 10**6:
                raise ArgumentError("power phi never becomes positive")
        return t

    def _raw(self, t):
        if self.family == "loglog":
            u = math.log(t)
            return self.upsilon * u * math.log(u) ** (1 + self.epsilon)
        if self.family == "table":
            return self.table[t - 1]
        if _integral(t) and _integral(self.exponent) and _integral(self.coef) and _integral(self.shift):
            v = int(self.coef) * int(t) ** int(self.exponent) + int(self.shift)
        else:
            v = self.coef * float(t) ** self.exponent + self.shift
        if self.floor is not None:
            fl = self.floor * t
            if fl > v:
                v = fl
        return v

    def __call__(self, t: int | float):
        if t < self._dmin:
            raise ArgumentError(f"phi({t}) is outside the domain (t >= {self._dmin})")
        if self.family == "table":
            if not _integral(t) or t > len(self.table):
                raise ArgumentError(f"phi table has no value at {t}")
            return self.table[int(t) - 1]
        return self._raw(t)

    def log_at(self, m: Magnitude) -> float:
        """``log phi(t)`` for a possibly huge argument."""
        if self.family == "loglog":
            if m.loglog is None or m.loglog <= 0:
                raise ArgumentError("loglog phi needs t > e")
            return math.log(self.upsilon) + m.loglog + (1 + self.epsilon) * math.log(m.loglog)
        if self.family == "table" or (math.isfinite(m.value) and m.log < 600):
            return math.log(self(m.value))
        out = math.log(self.coef) + self.exponent * m.log
        if self.floor:
            out = max(out, math.log(self.floor) + m.log)
        return out

    @property
    def growth(self) -> tuple[float, float, float] | None:
        """Asymptotic signature ``(a, b, c)`` with ``log phi ~ a*u + b*log u + c*log log u``.

        ``u = log t``.  ``None`` for tables (no tail).
        """
        if self.family == "loglog":
            return (0.0, 1.0, 1.0 + self.epsilon)
        if self.family == "table":
            return None
        return (float(self.exponent), 0.0, 0.0)

    def describe(self) -> str:
        if self.family == "loglog":
            return f"{self.upsilon:g}*log t*(log log t)^{1 + self.epsilon:g}"
        if self.family == "table":
            return f"table{list(self.table)}"
        core = f"{self.coef:g}*t^{self.exponent:g}"
        if self.shift:
            core += f"{self.shift:+g}"
        if self.floor is not None:
            core = f"max({core}, {self.floor:g}*t)"
        return core


def phi_inverse(phi: PhiFunction, y: float) -> int:
    """Largest integer ``n`` with ``phi(n) <= y``; 0 when no such n exists."""
    if not y > 0:
        raise ArgumentError("phi_inverse needs y > 0")
    lo = phi.domain_min
    if phi(lo) > y:
        return 0
    limit = len(phi.table) if phi.family == "table" else None
    step = 1
    hi = lo + step
    while True:
        if limit is not None and hi > limit:
            if phi(limit) <= y:
                raise ArgumentError(f"y={y} exceeds the range of the phi table")
            hi = limit
            break
        if phi(hi) > y:
            break
        lo = hi
        step *= 2
        hi = lo + step
    # invariant: phi(lo) <= y < phi(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if phi(mid) <= y:
            lo = mid
        else:
            hi = mid
    return lo
