"""Pipeline reports and their csv / json-lines / human renderings.

Emission is deterministic: field order is fixed, floats are written with
``repr`` precision, and timings are kept out of every format so identical
runs give byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

from ..errors import ArgumentError

FORMATS = ("csv", "json-lines", "human")

# what each verdict label asserts
CHECKS = {
    "repulsion": "hubs above n_star are at distance >= phi(m) of each other",
    "ball-degree": "max degree on B_N(x) <= phi^{-1}(2N + 1) at N = N_k",
    "ball-degree-plus": "max degree on B_N(x) <= phi^{-1}(2N) for all N >= N_x",
    "gamma-series": "gamma(g, phi) converges with a certified tail",
    "path-growth": "|Sigma_N(x)| <= q^N with q = exp(gamma(log t))",
    "walk-growth": "|Theta_N(x)| <= q^N with q = exp(gamma(t log t))",
    "path-log-bound": "log|Sigma_N(x)| <= max over paths of sum log n(y)",
    "walk-log-bound": "log|Theta_N(x)| <= max over walks of sum n(y) log n(y)",
    "paths-in-walks": "|Sigma_N(x)| <= |Theta_N(x)|",
    "animal-growth": "|A_N(x)| <= q^N with q = exp(gamma(t log t))",
    "good-animals": "every animal of order N_k is good: |A| >= phi(n_A)/2",
    "degree-average": "max over A_N(x) of G(A; g) <= gamma",
    "sphere-growth": "|S_N(x)| <= q^N",
    "ball-growth": "|B_N(x)| <= B_x q^N",
    "capacity-bound": "C(A; lambda) <= max(1, 2N/lambda)",
    "path-capacity-bound": "C(path; lambda) <= 1 + length/lambda",
    "spanning-capacity": "C(A; lambda) <= C(T; lambda) for spanning trees T",
    "capacity-optimality": "C(path of length L; L) = 2 > 2(L + 1)/L - epsilon",
    "randic-growth": "max over A_N(x) of R^theta(A) <= exp(gamma N)",
    "reach-envelope": "P(reach N) <= min(1, p^N |Sigma_N(x)|) + 3 stderr",
    "greedy-exceedance": "P(S_N >= Y N) <= 10 * exp(-t N (Y - gamma C))",
}


def _plain(obj: Any) -> Any:
    """JSON-shaped copy (tuples become lists) so reports round-trip exactly."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return obj
    try:
        return float(obj)
    except (TypeError, ValueError):
        return str(obj)


@dataclass
class Verdict:
    step: str
    check: str
    N: int | None
    value: Any
    bound: Any
    passed: bool
    detail: str = ""


@dataclass
class StepResult:
    name: str
    status: str = "ok"                # ok | fail | error | skipped
    data: dict[str, Any] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    error: str | None = None

    def add(self, check: str, N, value, bound, passed: bool, detail: str = "") -> Verdict:
        v = Verdict(self.name, check, N, _plain(value), _plain(bound), bool(passed), detail)
        self.verdicts.append(v)
        if not passed and self.status == "ok":
            self.status = "fail"
        return v

    def put(self, key: str, value: Any) -> None:
        self.data[key] = _plain(value)


@dataclass
class Report:
    version: str
    seed: int | None
    config: dict[str, Any]
    steps: list[StepResult] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def verdicts(self) -> list[Verdict]:
        return [v for s in self.steps for v in s.verdicts]

    @property
    def overall(self) -> bool:
        if any(s.status == "error" for s in self.steps):
            return False
        return all(v.passed for v in self.verdicts)

    def step(self, name: str) -> StepResult:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)


def _fmt(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _csv(r: Report) -> str:
    buf = io.StringIO()
    kind = r.config.get("kind", "")
    buf.write(f"# repgraph {r.version} seed={_fmt(r.seed)} kind={kind} "
              f"overall={'pass' if r.overall else 'fail'}\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["step", "check", "N", "value", "bound", "verdict", "detail"])
    for v in r.verdicts:
        wr.writerow([v.step, v.check, _fmt(v.N), _fmt(v.value), _fmt(v.bound),
                     "pass" if v.passed else "fail", v.detail])
    return buf.getvalue()


def _jsonl(r: Report) -> str:
    lines = [json.dumps({"record": "report", "version": r.version, "seed": r.seed,
                         "overall": r.overall, "config": r.config})]
    for s in r.steps:
        lines.append(json.dumps({"record": "step", "name": s.name, "status": s.status,
                                 "error": s.error, "data": s.data}))
        for v in s.verdicts:
            lines.append(json.dumps({"record": "verdict", "step": v.step, "check": v.check,
                                     "N": v.N, "value": v.value, "bound": v.bound,
                                     "passed": v.passed, "detail": v.detail}))
    return "\n".join(lines) + "\n"


def _human(r: Report) -> str:
    out = [f"repgraph {r.version}  seed={_fmt(r.seed)}  kind={r.config.get('kind', '')}",
           f"overall: {'PASS' if r.overall else 'FAIL'}", ""]
    for s in r.steps:
        out.append(f"[{s.name}] {s.status}" + (f": {s.error}" if s.error else ""))
        for k, v in s.data.items():
            text = json.dumps(v) if isinstance(v, (dict, list)) else _fmt(v)
            if len(text) > 120:
                text = text[:117] + "..."
            out.append(f"    {k} = {text}")
        for v in s.verdicts:
            n = "" if v.N is None else f" N={v.N}"
            out.append(f"    {'ok  ' if v.passed else 'FAIL'} {v.check}{n}: value={_fmt(v.value)}"
                       f" bound={_fmt(v.bound)}" + (f" ({v.detail})" if v.detail else ""))
    used = sorted({v.check for v in r.verdicts})
    if used:
        out += ["", "checks:"]
        out += [f"    {c}: {CHECKS.get(c, '')}" for c in used]
    return "\n".join(out) + "\n"


def emit_report(r: Report, fmt: str = "csv") -> bytes:
    if fmt == "csv":
        return _csv(r).encode()
    if fmt == "json-lines":
        return _jsonl(r).encode()
    if fmt == "human":
        return _human(r).encode()
    raise ArgumentError(f"unknown report format {fmt!r}; choose from {', '.join(FORMATS)}")


def parse_report(data: bytes | str) -> Report:
    """Inverse of the json-lines emitter."""
    text = data.decode() if isinstance(data, bytes) else data
    rep: Report | None = None
    for line in text.splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        kind = rec.pop("record")
        if kind == "report":
            rep = Report(rec["version"], rec["seed"], rec["config"])
        elif kind == "step":
            rep.steps.append(StepResult(rec["name"], rec["status"], rec["data"], [], rec["error"]))
        elif kind == "verdict":
            rep.steps[-1].verdicts.append(Verdict(**rec))
        else:
            raise ArgumentError(f"unknown record type {kind!r}")
    if rep is None:
        raise ArgumentError("no report record found")
    return rep
