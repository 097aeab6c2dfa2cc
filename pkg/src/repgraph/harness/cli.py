"""Command-line interface: ``repgraph <subcommand> [options]``.

Every subcommand reads the same configuration file (``--config``; the
built-in default hub experiment when omitted).  ``--seed``, ``--threads``
and ``--format`` override the file.  The exit code is 0 iff every verdict
passes.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path as FsPath
from typing import Any

from ..capacity import (
    backbone_decompose,
    capacity_bound_15,
    capacity_exact,
    format_decomposition,
)
from ..enumeration import (
    animal_profile,
    count_animals,
    count_simple_paths,
    path_profile,
    resolve_threads,
    walk_profile,
)
from ..errors import ConfigError, RepgraphError
from ..graph import Animal, format_graph
from ..temperedness import gamma_series
from .config import DEFAULT_CONFIG_TEXT, FORMATS, _parse_text, validate_config
from .pipeline import build_window, run_pipeline
from .report import emit_report

REPORT_COLUMNS = """\
report columns (csv): step, check, N, value, bound, verdict, detail.
The first line is a comment carrying the tool version, seed, kind and overall verdict.
"""

ENUMERATE_COLUMNS = """\
columns: N, count, log_count, bound12, bound13, qN_verdict
  bound12 / bound13: log-degree bounds for walks / simple paths (blank when over the caps)
  qN_verdict: count <= q^N with q = exp(gamma) of the configured preset (blank if gamma is not certified)
"""

CAPACITY_COLUMNS = """\
columns: N, lambda, capacity, bound_15, verdict
  bound_15 = max(1, 2N/lambda); with --vertices one row per lambda for that animal,
  otherwise the largest capacity over every connected set of each order.
"""


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def _raw_config(args) -> dict[str, Any]:
    if args.config:
        raw = _parse_text(FsPath(args.config).read_text(encoding="utf-8"))
    else:
        raw = _parse_text(DEFAULT_CONFIG_TEXT)
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.threads is not None:
        raw["threads"] = args.threads
    if args.format is not None:
        raw["format"] = args.format
    return raw


def _config(args, kind: str | None = None):
    raw = _raw_config(args)
    if kind is not None:
        raw["kind"] = kind
    cfg = validate_config(raw)
    for w in cfg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return cfg


def _write(args, cfg, data: bytes) -> None:
    target = args.out or (cfg.output if cfg is not None else None)
    if target:
        FsPath(target).write_bytes(data)
    else:
        sys.stdout.write(data.decode())
        sys.stdout.flush()


def _emit(args, cfg, report) -> int:
    _write(args, cfg, emit_report(report, cfg.format))
    return 0 if report.overall else 1


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return "inf" if v == math.inf else ("-inf" if v == -math.inf else repr(v))
    return str(v)


def _csv(header: list[str], rows: list[list], comment: str) -> bytes:
    lines = [comment, ",".join(header)]
    lines += [",".join(_fmt(v) for v in r) for r in rows]
    return ("\n".join(lines) + "\n").encode()


def _header(cfg) -> str:
    from .. import __version__
    return f"# repgraph {__version__} seed={_fmt(cfg.seed)} kind={cfg.kind}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    cfg = _config(args)
    w = build_window(cfg)
    _write(args, cfg, format_graph(w).encode())
    return 0


def cmd_steps(steps):
    def run(args) -> int:
        cfg = _config(args)
        return _emit(args, cfg, run_pipeline(cfg, steps))
    return run


def cmd_gamma(args) -> int:
    raw = _raw_config(args)
    if args.preset:
        raw["preset"] = args.preset
    cfg = validate_config(raw)
    for w in cfg.warnings:
        print(f"warning: {w}", file=sys.stderr)
    gs = gamma_series(cfg.g, cfg.phi, cfg.ts, tol=cfg.tol)
    lines = [f"g = {cfg.g.describe()}",
             f"phi = {cfg.phi.describe()}",
             f"t_k = {cfg.ts.describe()}",
             f"status = {gs.status}",
             f"gamma = {_fmt(gs.gamma)}",
             f"q = {_fmt(gs.q)}",
             f"tail_bound = {_fmt(gs.tail_bound)}",
             f"terms = {gs.terms}",
             "partial_sums = " + " ".join(_fmt(2 * s) for s in gs.partial_sums[:10])]
    if gs.message:
        lines.append(f"note = {gs.message}")
    _write(args, cfg, ("\n".join(lines) + "\n").encode())
    return 0 if gs.converged else 1


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    w = build_window(cfg)
    x = args.x if args.x is not None else (cfg.x if cfg.x is not None else (w.origin or 0))
    threads = resolve_threads(cfg.threads)
    gs = gamma_series(cfg.g, cfg.phi, cfg.ts, tol=cfg.tol)
    q = gs.q if gs.converged else None
    n_max = args.max_n
    caps = cfg.caps
    bound13 = bound12 = None
    if args.what == "paths":
        prof = path_profile(w, x, n_max, caps=caps, threads=threads)
        counts, bound13 = prof.counts, prof.best
    elif args.what == "walks":
        prof = walk_profile(w, x, n_max, caps=caps, threads=threads)
        counts, bound12 = prof.counts, prof.best
    else:
        counts = animal_profile(w, x, n_max, caps=caps, threads=threads)
    if args.what == "paths" and caps.allows("walks", n_max):
        bound12 = walk_profile(w, x, n_max, caps=caps, threads=threads).best
    if args.what == "walks" and caps.allows("paths", n_max):
        bound13 = path_profile(w, x, n_max, caps=caps, threads=threads).best
    rows = []
    ok = True
    for N in range(1, n_max + 1):
        c = counts[N]
        verdict = None
        if q is not None:
            passed = c == 0 or math.log(c) <= N * math.log(q) + 1e-12
            ok &= passed
            verdict = "pass" if passed else "fail"
        rows.append([N, c, math.log(c) if c else -math.inf,
                     bound12[N] if bound12 else None, bound13[N] if bound13 else None, verdict])
    if args.stream:
        _stream(args, w, x, n_max, caps)
    _write(args, cfg, _csv(["N", "count", "log_count", "bound12", "bound13", "qN_verdict"], rows,
                           _header(cfg) + f" what={args.what} x={x}"))
    return 0 if ok else 1


def _stream(args, w, x, N, caps) -> None:
    with open(args.stream, "w", encoding="utf-8") as fh:
        if args.what == "animals":
            count_animals(w, x, N, lambda a: fh.write(" ".join(map(str, a)) + "\n"), caps=caps)
        elif args.what == "paths":
            count_simple_paths(w, x, N, lambda p: fh.write(" ".join(map(str, p)) + "\n"), caps=caps)
        else:
            raise RepgraphError("streaming is available for paths and animals")


def cmd_capacity(args) -> int:
    cfg = _config(args, "capacity")
    lams = args.lam or [float(v) for v in cfg.params["lambdas"]]
    if not args.vertices:
        return _emit(args, cfg, run_pipeline(cfg))
    w = build_window(cfg)
    vs = [int(v) for v in args.vertices.replace(",", " ").split()]
    a = Animal(w, frozenset(vs))
    rows = []
    ok = True
    for lam in lams:
        c = capacity_exact(a, lam).value
        b = capacity_bound_15(a.order, lam)
        passed = c <= b + 1e-12
        ok &= passed
        rows.append([a.order, lam, c, b, "pass" if passed else "fail"])
    out = _csv(["N", "lambda", "capacity", "bound_15", "verdict"], rows, _header(cfg))
    if args.decompose:
        out += format_decomposition(backbone_decompose(a)).encode()
    _write(args, cfg, out)
    return 0 if ok else 1


def cmd_kind(kind):
    def run(args) -> int:
        cfg = _config(args, kind)
        return _emit(args, cfg, run_pipeline(cfg))
    return run


def cmd_pipeline(args) -> int:
    cfg = _config(args)
    return _emit(args, cfg, run_pipeline(cfg))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment TOML file (default: built-in hub experiment)")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--threads", type=int, help="worker processes (default: THREADS env var, else 1)")
    common.add_argument("--format", choices=FORMATS, help="report format")
    common.add_argument("--out", help="output file (default: config output, else stdout)")

    p = argparse.ArgumentParser(prog="repgraph", description="Repulsive graphs: enumeration, "
                                "capacity, temperedness and bound verification.")
    sub = p.add_subparsers(dest="command", required=True)
    raw = argparse.RawDescriptionHelpFormatter

    s = sub.add_parser("generate", parents=[common], help="write the configured window as graph text")
    s.set_defaults(func=cmd_generate)
    s = sub.add_parser("check", parents=[common], help="repulsion check", epilog=REPORT_COLUMNS,
                       formatter_class=raw)
    s.set_defaults(func=cmd_steps(("generate", "check")))
    s = sub.add_parser("sequence", parents=[common], help="radii N_k with small ball degrees",
                       epilog=REPORT_COLUMNS, formatter_class=raw)
    s.set_defaults(func=cmd_steps(("generate", "sequence")))
    s = sub.add_parser("gamma", parents=[common], help="gamma(g, phi) with partial sums and tail bound")
    s.add_argument("--preset", help="paths-default | animals-default | randic(theta)")
    s.set_defaults(func=cmd_gamma)
    s = sub.add_parser("enumerate", parents=[common], help="exact counts with log bounds",
                       epilog=ENUMERATE_COLUMNS, formatter_class=raw)
    s.add_argument("--what", choices=("paths", "walks", "animals"), default="paths")
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--x", type=int, help="start vertex")
    s.add_argument("--stream", help="write each path/animal of order max-n to this file")
    s.set_defaults(func=cmd_enumerate)
    s = sub.add_parser("capacity", parents=[common], help="lambda-capacity of animals",
                       epilog=CAPACITY_COLUMNS + "\n" + REPORT_COLUMNS, formatter_class=raw)
    s.add_argument("--vertices", help="animal as vertex ids, e.g. '0,1,2'")
    s.add_argument("--lambda", dest="lam", type=float, action="append", help="repeatable")
    s.add_argument("--decompose", action="store_true", help="append the backbone decomposition")
    s.set_defaults(func=cmd_capacity)
    for kind, text in (("percolate", "reach probabilities against the path envelope"),
                       ("randic", "maximal Randic index against exp(gamma N)"),
                       ("greedy", "greedy animal exceedances against the Chernoff envelope")):
        s = sub.add_parser(kind, parents=[common], help=text, epilog=REPORT_COLUMNS,
                           formatter_class=raw)
        s.set_defaults(func=cmd_kind("percolation" if kind == "percolate" else kind))
    s = sub.add_parser("pipeline", parents=[common], help="run the configured experiment",
                       epilog=REPORT_COLUMNS, formatter_class=raw)
    s.set_defaults(func=cmd_pipeline)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for e in exc.errors:
            print(f"config error: {e}", file=sys.stderr)
        return 2
    except (RepgraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
