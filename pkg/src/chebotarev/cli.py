"""Command-line interface: ``chebotarev <command> ...`` or ``python -m chebotarev``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import arith, audit, bounds, zeros
from .errors import (
    BudgetExceeded,
    ChebotarevError,
    DomainError,
    NotFound,
    ParseError,
    PrecisionError,
    UnsupportedFormat,
)
from .numerics import Interval, cf_rationalize

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_NOT_FOUND, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4, 5

DEFAULTS = {
    "precision": 128,
    "format": "text",
    "cache_dir": None,
    "zeros": None,
    "threads": 1,
    "sieve_budget": arith.DEFAULT_BUDGET,
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    precision_bits: int
    output_format: str
    cache_dir: Path | None
    zeros_path: Path | None
    threads: int
    sieve_budget: int

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("precision must be at least 64 bits")
        if self.output_format not in ("csv", "json", "text"):
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.threads < 1:
            raise UsageError("threads must be positive")
        if self.sieve_budget < 1:
            raise UsageError("sieve budget must be positive")


def read_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in DEFAULTS:
            raise UsageError(f"{path}:{n}: expected one of {sorted(DEFAULTS)} as 'key = value'")
        out[key] = val.strip()
    return out


def _config(ns) -> Config:
    merged = dict(DEFAULTS)
    if getattr(ns, "config", None):
        merged.update(read_config(ns.config))
    for k in DEFAULTS:
        v = getattr(ns, k, None)
        if v is not None:
            merged[k] = v
    try:
        return Config(
            precision_bits=int(merged["precision"]),
            output_format=str(merged["format"]),
            cache_dir=Path(merged["cache_dir"]) if merged["cache_dir"] else None,
            zeros_path=Path(merged["zeros"]) if merged["zeros"] else None,
            threads=int(merged["threads"]),
            sieve_budget=int(Fraction(str(merged["sieve_budget"]))),
        )
    except ValueError as exc:
        raise UsageError(f"bad configuration value: {exc}") from exc


# ---------------------------------------------------------------- output


def _lo(v: Interval) -> str:
    return format(v.lo, ".17Dg")


def _hi(v: Interval) -> str:
    return format(v.hi, ".17Ug")


def emit(kind: str, meta: dict, rows: list[dict], fmt: str) -> str:
    """Render one document; every machine format carries ``schema``."""
    if fmt == "json":
        doc = {"schema": SCHEMA, "kind": kind, **meta, "rows": rows}
        return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(f"# schema={SCHEMA}\n# kind={kind}\n")
        for k in sorted(meta):
            buf.write(f"# {k}={meta[k]}\n")
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    lines = [f"{kind}"] + [f"  {k}: {meta[k]}" for k in sorted(meta)]
    if rows:
        cols = list(rows[0])
        width = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
        lines.append("  ".join(c.ljust(width[c]) for c in cols).rstrip())
        for r in rows:
            lines.append("  ".join(str(r[c]).ljust(width[c]) for c in cols).rstrip())
    return "\n".join(lines) + "\n"


def parse_csv_document(text: str) -> tuple[dict, list[dict]]:
    """Inverse of ``emit(..., "csv")``: (meta including schema and kind, rows)."""
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition("=")
            meta[k] = v
        else:
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body) + "\n"))) if body else []
    return meta, rows


# ---------------------------------------------------------------- commands


def _frac(s: str, name: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name}: not a number: {s!r}") from exc


def _int_x(s: str) -> int:
    v = _frac(s, "x")
    if v.denominator != 1:
        raise UsageError(f"--x must be an integer, got {s}")
    return int(v)


def _x_list(s: str) -> list[int]:
    return [_int_x(t) for t in s.split(",") if t.strip()]


def _report_rows(rep: bounds.BoundReport) -> list[dict]:
    return rep.as_rows()


def cmd_bound(ns, cfg: Config) -> str:
    prec = cfg.precision_bits
    try:
        p = bounds.FieldParams(n_L=ns.nl, n_K=ns.nk, ln_dL=_frac(ns.lndl, "lndl"),
                               class_ratio=_frac(ns.ratio, "ratio"))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    x = _frac(ns.x, "x")
    ez = None
    if ns.chi0 is not None or ns.beta0 is not None:
        if ns.chi0 is None or ns.beta0 is None:
            raise UsageError("--beta0 and --chi0 go together")
        ez = bounds.ExceptionalZero(_frac(ns.beta0, "beta0"), ns.chi0)
    th = ns.theorem
    if th == "pi-grh":
        rep = bounds.pi_grh_bound(x, p, prec)
    elif th == "pi-grh-precise":
        rep = bounds.pi_grh_abel_bound(x, p, prec)
    elif th == "pi-oesterle":
        rep = bounds.pi_oesterle_bound(x, p, prec)
    elif th == "psi-grh":
        rep = bounds.psi_grh_bound(x, p, ns.precise, prec)
    elif th == "pi-uncond":
        rep = bounds.pi_uncond_bound(x, p, ez, ns.force, prec)
    elif th == "psi-uncond":
        rep = bounds.psi_uncond_bound(x, p, ez, ns.variant, ns.force, prec)
    else:
        if ns.T is None:
            raise UsageError("--T is required for explicit-formula")
        rep = bounds.explicit_formula_error(x, _frac(ns.T, "T"), p, prec)
    meta = {"theorem": rep.name, "precision": prec, "flags": "; ".join(rep.flags),
            **{k: rep.parameters[k] for k in sorted(rep.parameters)}}
    return emit("bound", meta, _report_rows(rep), cfg.output_format)


def cmd_audit(ns, cfg: Config) -> str:
    prec = ns.precision if ns.precision is not None else max(cfg.precision_bits, audit.LADDER[0])
    if prec < 64:
        raise UsageError("precision must be at least 64 bits")
    ids = [i for chunk in (ns.id or []) for i in chunk.split(",") if i]
    items = audit.select(ids) if ids else audit.catalog()
    reps = audit.run_audit(items, prec, escalate=not ns.no_escalate, threads=cfg.threads)
    rows = [dict(audit._row(r), precision=r.precision) for r in reps]
    counts = {s: sum(r.status == s for r in reps) for s in audit.STATUSES}
    meta = {"items": len(reps), **{f"n_{k.replace('-', '_')}": v for k, v in counts.items()}}
    return emit("audit", meta, rows, cfg.output_format)


def _setup(ns) -> arith.GaloisSetup:
    try:
        return arith.GaloisSetup.parse(ns.family, getattr(ns, "cls", None))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cache(cfg: Config):
    return arith.CountCache(cfg.cache_dir) if cfg.cache_dir else None


def cmd_count(ns, cfg: Config) -> str:
    s = _setup(ns)
    cache = _cache(cfg)
    rows = []
    for x in _x_list(ns.x):
        r = arith.count_up_to(x, s, threads=cfg.threads, budget=cfg.sieve_budget, cache=cache)
        rows.append({"x": r.x, "pi_c": r.pi_c, "theta_c": repr(r.theta_c),
                     "psi_c": repr(r.psi_c), "ramified": r.ramified_seen})
    meta = {"family": s.family_id, "class": s.class_id}
    return emit("count", meta, rows, cfg.output_format)


def cmd_compare(ns, cfg: Config) -> str:
    s = _setup(ns)
    cache = _cache(cfg)
    rows = []
    for x in _x_list(ns.x):
        counts = arith.count_up_to(x, s, threads=cfg.threads, budget=cfg.sieve_budget, cache=cache)
        c = arith.compare_to_bound(x, s, ns.mode, cfg.precision_bits, counts=counts)
        rows.append({"x": c.x, "pi_c": c.pi_c, "expected_lo": _lo(c.expected),
                     "expected_hi": _hi(c.expected), "lhs_lo": _lo(c.lhs), "lhs_hi": _hi(c.lhs),
                     "rhs_lo": _lo(c.rhs), "rhs_hi": _hi(c.rhs),
                     "holds": str(c.holds).lower(), "margin": repr(c.margin)})
    if ns.emit_plot_data:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "lhs", "rhs"])
        for r in rows:
            w.writerow([r["x"], r["lhs_hi"], r["rhs_lo"]])
        Path(ns.emit_plot_data).write_text(buf.getvalue(), encoding="utf-8")
    meta = {"family": s.family_id, "class": s.class_id, "mode": ns.mode,
            "precision": cfg.precision_bits}
    return emit("compare", meta, rows, cfg.output_format)


def _table(cfg: Config) -> zeros.ZeroTable:
    return zeros.load_zeros(cfg.zeros_path)


def cmd_zeros(ns, cfg: Config) -> str:
    table = _table(cfg)
    meta = {"source": table.source_label, "ordinates": len(table),
            "complete_to": repr(table.coverage)}
    if ns.zcmd == "nchi":
        ts = [_frac(t, "t") for t in ns.t.split(",")]
        c = bounds.CharacterParams()
        rows = []
        for t in ts:
            n = zeros.count_zeros_pair(float(t), table)
            b = bounds.nchi_bound(t, c, cfg.precision_bits)
            rows.append({"t": str(t), "n_t": zeros.count_zeros_window(float(t), table),
                         "n_pair": n, "bound_lo": _lo(b), "holds": str(n <= b.lo).lower()})
        return emit("zeros-nchi", meta, rows, cfg.output_format)
    if ns.zcmd == "explicit":
        x, T = float(_frac(ns.x, "x")), float(_frac(ns.T, "T"))
        r = zeros.check_explicit_formula(x, T, table, prec=cfg.precision_bits,
                                         threads=cfg.threads)
        rows = [{"x": repr(r.x), "T": repr(r.T), "psi": repr(r.psi_direct),
                 "s_sum": repr(r.s_sum), "residual": repr(r.residual),
                 "bound_lo": _lo(r.bound), "bound_hi": _hi(r.bound),
                 "ratio": repr(r.ratio), "holds": str(r.holds).lower()}]
        return emit("zeros-explicit", meta, rows, cfg.output_format)
    p = bounds.FieldParams.rationals()
    rep = zeros.check_zero_free_region(table, p)
    rows = [{"gamma": repr(g), "reason": why} for g, why in rep.violations]
    meta.update(checked=rep.checked, violations=len(rep.violations),
                min_margin=repr(rep.min_margin), min_ordinate=repr(rep.min_ordinate))
    return emit("zeros-region", meta, rows, cfg.output_format)


def cmd_rationalize(ns, cfg: Config) -> str:
    try:
        expr = audit.parse_expr(ns.expr)
    except ParseError as exc:
        raise UsageError(str(exc)) from exc
    prec = cfg.precision_bits
    exact = expr.exact()
    value = exact if exact is not None else expr.evaluate(prec)
    for p in (prec, 2 * prec, 4 * prec):
        try:
            q = cf_rationalize(value, ns.order, ns.direction)
            break
        except PrecisionError:
            if exact is not None:
                raise
            value = expr.evaluate(2 * p)
    else:
        raise PrecisionError("continued fraction undetermined at 4x precision")
    enc = Interval(value, prec=prec) if exact is not None else value
    rows = [{"expr": str(expr), "value_lo": _lo(enc), "value_hi": _hi(enc),
             "order": ns.order, "direction": ns.direction, "result": str(q)}]
    return emit("rationalize", {"precision": prec}, rows, cfg.output_format)


# ---------------------------------------------------------------- parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _global_options(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--precision", type=int, default=d, help="working precision in bits (128)")
    p.add_argument("--format", choices=("csv", "json", "text"), default=d, help="output (text)")
    p.add_argument("--config", default=d, help="key = value configuration file")
    p.add_argument("--cache-dir", dest="cache_dir", default=d, help="directory for count cache")
    p.add_argument("--zeros", default=d, help="zeros file (bundled zeta table)")
    p.add_argument("--threads", type=int, default=d, help="worker threads (1)")
    p.add_argument("--sieve-budget", dest="sieve_budget", default=d,
                   help=f"sieve memory budget in bytes ({arith.DEFAULT_BUDGET})")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="chebotarev", description="Explicit Chebotarev bounds and their checks.")
    _global_options(top, suppress=False)
    common = _Parser(add_help=False)
    _global_options(common, suppress=True)
    sub = top.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    b = sub.add_parser("bound", parents=[common], help="evaluate a bound term by term")
    b.add_argument("--theorem", required=True,
                   choices=("pi-grh", "pi-grh-precise", "pi-uncond", "pi-oesterle",
                            "psi-grh", "psi-uncond", "explicit-formula"))
    b.add_argument("--nl", type=int, default=1, help="[L:Q]")
    b.add_argument("--nk", type=int, default=1, help="[K:Q]")
    b.add_argument("--lndl", default="0", help="ln|d_L|")
    b.add_argument("--ratio", default="1", help="|C|/|G|, decimal or p/q")
    b.add_argument("--x", required=True)
    b.add_argument("--T")
    b.add_argument("--beta0")
    b.add_argument("--chi0", type=int, choices=(-1, 1))
    b.add_argument("--force", action="store_true", help="evaluate below the validity threshold")
    b.add_argument("--precise", action="store_true", help="psi-grh: lower-order form")
    b.add_argument("--variant", default="statement", choices=tuple(bounds.UNCOND_K))

    a = sub.add_parser("audit", parents=[common], help="interval audit of the constants")
    a.add_argument("--id", action="append", help="item id (repeatable or comma separated)")
    a.add_argument("--no-escalate", action="store_true", help="no 512/1024-bit retries")

    for name in ("count", "compare"):
        c = sub.add_parser(name, parents=[common],
                           help="prime counts by Frobenius class" if name == "count"
                           else "empirical deviation against a bound")
        c.add_argument("--family", default="q", help="q, quad:D or cyclo:M")
        c.add_argument("--class", dest="cls", help="comma separated class elements")
        c.add_argument("--x", required=True, help="integer or comma separated list")
        if name == "compare":
            c.add_argument("--mode", default="grh", choices=("grh", "grh-precise", "oesterle"))
            c.add_argument("--emit-plot-data", help="write x,lhs,rhs columns to this file")

    z = sub.add_parser("zeros", parents=[common], help="checks against a zeros table")
    zs = z.add_subparsers(dest="zcmd", required=True, parser_class=_Parser)
    n = zs.add_parser("nchi", parents=[common], help="zeros with |gamma - t| <= 1")
    n.add_argument("--t", required=True, help="height or comma separated list")
    ex = zs.add_parser("explicit", parents=[common], help="explicit formula residual")
    ex.add_argument("--x", required=True)
    ex.add_argument("--T", required=True)
    zs.add_parser("region", parents=[common], help="zero-free region scan")

    r = sub.add_parser("rationalize", parents=[common], help="continued-fraction bound")
    r.add_argument("--expr", required=True)
    r.add_argument("--order", type=int, default=3)
    r.add_argument("--direction", default="upper", choices=("upper", "lower"))
    return top


COMMANDS = {"bound": cmd_bound, "audit": cmd_audit, "count": cmd_count,
            "compare": cmd_compare, "zeros": cmd_zeros, "rationalize": cmd_rationalize}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = _config(ns)
        if cfg.zeros_path is not None and not cfg.zeros_path.is_file():
            raise FileNotFoundError(f"zeros file not found: {cfg.zeros_path}")
        if ns.cmd == "audit":
            ns.precision = getattr(ns, "precision", None)
        out.write(COMMANDS[ns.cmd](ns, cfg))
        return EXIT_OK
    except UsageError as exc:
        err.write(f"chebotarev: error: {exc}\n")
        return EXIT_USAGE
    except NotFound as exc:
        err.write(f"chebotarev: not found: {exc}\n")
        return EXIT_NOT_FOUND
    except (DomainError, PrecisionError, BudgetExceeded) as exc:
        err.write(f"chebotarev: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN
    except (OSError, ParseError) as exc:
        err.write(f"chebotarev: I/O: {exc}\n")
        return EXIT_IO
    except (UnsupportedFormat, ChebotarevError) as exc:
        err.write(f"chebotarev: {exc}\n")
        return EXIT_USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
