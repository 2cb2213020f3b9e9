"""Command-line front end.

    yvroots generate 3 --format text
    yvroots verify --up-to 10 --all
    yvroots census --up-to 25 --format csv
    yvroots plot 2 --range -3 3 --samples 7
    yvroots plot-w 1 --range -1 1 --samples 3

Exit status: 0 all checks passed, 1 I/O or cache problem, 2 an arithmetic
invariant broke (inexact recurrence division), 3 a theorem check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable

from .exactpoly import NotDivisible, eval_at, format_poly, to_canonical
from .painleve import CommonRootDetected, pole_census, rational_solution, verify_p2
from .rootcensus import (
    NotSquarefree,
    census,
    predicted_counts,
    refine,
    verify_count_theorems,
    verify_interlacing,
)
from .yvgen import (
    CacheError,
    RecurrenceDivisionFailure,
    RecursionDivisionFailure,
    YVCache,
    coprimality_report,
    generate,
    lowest_coeff_by_recursion,
    sign_at_zero_predicted,
    verify_structure,
    verify_wronskian_identities,
)

log = logging.getLogger("yvroots")

EXIT_OK, EXIT_IO, EXIT_ARITH, EXIT_THEOREM = 0, 1, 2, 3
DEFAULT_UP_TO = 25
CHECKS = ("structure", "identities", "census", "interlace", "p2")


def default_cache_path() -> Path:
    env = os.environ.get("YV_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "yvroots" / "cache.json"


@dataclass
class RunConfig:
    command: str
    indices: list[int]
    cache_path: Path
    format: str
    checks: tuple[str, ...] = ()
    width: Fraction | None = None
    sample_range: tuple[Fraction, Fraction] | None = None
    sample_count: int = 0
    exact: bool = True
    digits: int = 12
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.indices:
            raise ValueError("empty index range")
        if self.command in ("plot", "plot-w"):
            if self.sample_count < 2:
                raise ValueError("--samples must be at least 2")
            a, b = self.sample_range
            if not a < b:
                raise ValueError("--range needs A < B")


# ---------------------------------------------------------------------------
# output helpers


def _emit_table(rows: list[dict], columns: list[str], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=columns, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in columns})
    else:
        cells = [[str(c) for c in columns]] + [[_cell(r.get(k)) for k in columns] for r in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
        for row in cells:
            out.write("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _decimal(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(digits + 40, 60)
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits)).normalize()) if d else "0"


# ---------------------------------------------------------------------------
# commands


def cmd_generate(cfg: RunConfig, cache: YVCache, out) -> int:
    polys = {n: generate(n, cache) for n in cfg.indices}
    single = len(cfg.indices) == 1
    if cfg.format == "text":
        for n, p in polys.items():
            out.write(format_poly(p) + "\n" if single else f"Q_{n} = {format_poly(p)}\n")
    elif cfg.format == "csv":
        out.write("n,coefficients\n")
        for n, p in polys.items():
            out.write(f"{n},{' '.join(to_canonical(p))}\n")
    else:
        doc = to_canonical(polys[cfg.indices[0]]) if single else {str(n): to_canonical(p) for n, p in polys.items()}
        out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def _check_structure(n: int, cache: YVCache, cfg: RunConfig) -> tuple[bool, dict]:
    rep = verify_structure(n, cache)
    x_rec = lowest_coeff_by_recursion(n)
    predicted = sign_at_zero_predicted(n)
    detail = rep.to_json()
    detail.update(lowest_coeff_recursion=str(x_rec), sign_predicted=predicted)
    ok = rep.ok and rep.lowest_coeff == x_rec and rep.sign_at_zero == predicted
    ok = ok and ((rep.sign_at_zero == 0) == (n % 3 == 1))
    return ok, detail


def _check_identities(n: int, cache: YVCache, cfg: RunConfig) -> tuple[bool, dict] | None:
    if n < 1:
        return None
    w = verify_wronskian_identities(n, cache)
    c = coprimality_report(n, cache)
    detail = {
        "wronskian": list(w),
        "squarefree": c[0],
        "coprime_consecutive": c[1],
        "coprime_skip": c[2],
    }
    return all(w) and all(c), detail


def _check_census(n: int, cache: YVCache, cfg: RunConfig) -> tuple[bool, dict]:
    rc = census(n, cache)
    flags = verify_count_theorems(n, cache)
    total, negative, positive = predicted_counts(n)
    detail = rc.to_json()
    if cfg.width is not None and rc.total:
        p = generate(n, cache)
        detail["min"] = refine(p, rc.min_root, cfg.width).to_json()
        detail["max"] = refine(p, rc.max_root, cfg.width).to_json()
    detail["predicted"] = {"total": total, "negative": negative, "positive": positive}
    return all(flags), detail


def _check_interlace(n: int, cache: YVCache, cfg: RunConfig) -> tuple[bool, dict] | None:
    if n < 1:
        return None
    alt, ext = verify_interlacing(n, cache)
    return alt and ext, {"alternates": alt, "extremes": ext}


def _check_p2(n: int, cache: YVCache, cfg: RunConfig) -> tuple[bool, dict]:
    return verify_p2(n, cache), {"alpha": n}


CHECK_FUNCS: dict[str, Callable] = {
    "structure": _check_structure,
    "identities": _check_identities,
    "census": _check_census,
    "interlace": _check_interlace,
    "p2": _check_p2,
}


def cmd_verify(cfg: RunConfig, cache: YVCache, out) -> int:
    results = []
    nmax = max(cfg.indices)
    extra = 1 if any(c in cfg.checks for c in ("identities", "interlace")) else 0
    generate(max(nmax + extra, 0), cache)
    for n in cfg.indices:
        for name in cfg.checks:
            if n < 0 and name != "p2":
                continue
            res = CHECK_FUNCS[name](n, cache, cfg)
            if res is None:
                continue
            ok, detail = res
            results.append({"n": n, "check": name, "pass": bool(ok), "detail": detail})
            log.debug("n=%d %s %s", n, name, "pass" if ok else "FAIL")
    all_pass = all(r["pass"] for r in results)
    if cfg.format == "json":
        json.dump({"all_pass": all_pass, "results": results}, out, indent=1)
        out.write("\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "check", "pass", "detail"])
        for r in results:
            w.writerow([r["n"], r["check"], "pass" if r["pass"] else "FAIL", json.dumps(r["detail"], sort_keys=True)])
    else:
        for r in results:
            out.write(f"n={r['n']:<3} {r['check']:<10} {'PASS' if r['pass'] else 'FAIL'}  {_summary(r)}\n")
        out.write(("all checks passed" if all_pass else "SOME CHECKS FAILED") + f" ({len(results)} checks)\n")
    return EXIT_OK if all_pass else EXIT_THEOREM


def _summary(r: dict) -> str:
    d = r["detail"]
    name = r["check"]
    if name == "census":
        p = d["predicted"]
        return (f"total={d['total']} negative={d['negative']} positive={d['positive']} zero={d['zero']}"
                f" (predicted {p['total']}/{p['negative']}/{p['positive']})")
    if name == "structure":
        return f"deg={d['degree']} {d['z3_structure']} x_n={d['lowest_coeff']} sign(Q(0))={d['sign_at_zero']}"
    if name == "identities":
        return f"wronskian={d['wronskian']} squarefree={d['squarefree']} coprime={d['coprime_consecutive']},{d['coprime_skip']}"
    if name == "interlace":
        return f"alternates={d['alternates']} extremes={d['extremes']}"
    return ""


CENSUS_COLUMNS = ["n", "total", "negative", "positive", "zero",
                  "pred_total", "pred_negative", "pred_positive", "match"]


def cmd_census_table(cfg: RunConfig, cache: YVCache, out) -> int:
    rows = []
    for n in cfg.indices:
        rc = census(n, cache)
        total, negative, positive = predicted_counts(n)
        rows.append({
            "n": n, "total": rc.total, "negative": rc.negative, "positive": rc.positive,
            "zero": rc.has_zero_root, "pred_total": total, "pred_negative": negative,
            "pred_positive": positive,
            "match": (rc.total, rc.negative, rc.positive) == (total, negative, positive),
        })
    if cfg.extra.get("poles") is not None:
        pc = pole_census(cfg.extra["poles"], cache)
        if cfg.format == "json":
            json.dump({"census": rows, "poles": pc.to_json()}, out, indent=1)
            out.write("\n")
            return EXIT_OK if all(r["match"] for r in rows) else EXIT_THEOREM
    _emit_table(rows, CENSUS_COLUMNS, cfg.format, out)
    if cfg.extra.get("poles") is not None and cfg.format != "json":
        d = pc.to_json()
        out.write(f"w_{pc.n}: {d['total']} real poles ({d['negative']} negative, {d['positive']} positive); "
                  f"residue +1: {d['residue_plus']}; residue -1: {d['residue_minus']}\n")
    return EXIT_OK if all(r["match"] for r in rows) else EXIT_THEOREM


def _sample_points(cfg: RunConfig) -> Iterable[Fraction]:
    a, b = cfg.sample_range
    k = cfg.sample_count
    for i in range(k):
        yield a + (b - a) * i / (k - 1)


def cmd_plot_data(cfg: RunConfig, cache: YVCache, out) -> int:
    n = cfg.indices[0]
    fmt = (lambda x: str(x)) if cfg.exact else (lambda x: _decimal(x, cfg.digits))
    w = csv.writer(out, lineterminator="\n")
    if cfg.command == "plot":
        p = generate(n, cache)
        w.writerow(["x", f"Q_{n}"])
        for x in _sample_points(cfg):
            w.writerow([fmt(x), fmt(eval_at(p, x))])
    else:
        sol = rational_solution(n, cache)
        w.writerow(["x", f"w_{n}"])
        for x in _sample_points(cfg):
            den = eval_at(sol.den, x)
            # empty cell marks a pole
            w.writerow([fmt(x), "" if den == 0 else fmt(eval_at(sol.num, x) / den)])
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "census": cmd_census_table,
    "plot": cmd_plot_data,
    "plot-w": cmd_plot_data,
}

DEFAULT_FORMATS = {"generate": "json", "verify": "text", "census": "text", "plot": "csv", "plot-w": "csv"}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", type=Path, default=None,
                        help="cache file (default: $YV_CACHE or ~/.cache/yvroots/cache.json)")
    common.add_argument("--no-cache", action="store_true", help="keep everything in memory")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="yvroots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_range(p, default_up_to):
        p.add_argument("n", nargs="?", type=int, help="single index")
        p.add_argument("--up-to", type=int, default=None, help=f"range from --from to N (default {default_up_to})")
        p.add_argument("--from", dest="start", type=int, default=0, help="first index of a range")

    g = sub.add_parser("generate", parents=[common], help="print Q_n coefficients")
    add_range(g, None)

    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    add_range(v, DEFAULT_UP_TO)
    v.add_argument("--all", action="store_true")
    for name in CHECKS:
        v.add_argument(f"--{name}", action="store_true")
    v.add_argument("--width", type=Fraction, default=None,
                   help="refine the reported min/max root intervals to this width")

    c = sub.add_parser("census", parents=[common], help="real-root count table")
    add_range(c, DEFAULT_UP_TO)
    c.add_argument("--poles", type=int, default=None, metavar="N", help="also print the pole census of w_N")

    for name, what in (("plot", "Q_n"), ("plot-w", "w_n")):
        p = sub.add_parser(name, parents=[common], help=f"CSV samples of {what}")
        p.add_argument("n", type=int)
        p.add_argument("--range", nargs=2, type=Fraction, metavar=("A", "B"), default=(Fraction(-5), Fraction(5)))
        p.add_argument("--samples", type=int, default=101)
        p.add_argument("--decimal", type=int, default=None, metavar="DIGITS",
                       help="rounded decimals instead of exact rationals")
    return parser


def _indices(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    if args.command == "generate" and args.up_to is None:
        raise ValueError("generate needs an index or --up-to")
    up_to = DEFAULT_UP_TO if args.up_to is None else args.up_to
    return list(range(args.start, up_to + 1))


def config_from_args(args) -> RunConfig:
    cache_path = args.cache if args.cache is not None else default_cache_path()
    fmt = args.format or DEFAULT_FORMATS[args.command]
    kw = {}
    if args.command == "verify":
        kw["checks"] = CHECKS if args.all or not any(getattr(args, c) for c in CHECKS) else tuple(
            c for c in CHECKS if getattr(args, c))
        kw["width"] = args.width
        indices = _indices(args)
    elif args.command == "census":
        indices = _indices(args)
        kw["extra"] = {"poles": args.poles}
    elif args.command in ("plot", "plot-w"):
        indices = [args.n]
        kw.update(sample_range=tuple(args.range), sample_count=args.samples,
                  exact=args.decimal is None, digits=args.decimal or 12)
    else:
        indices = _indices(args)
    if args.command != "plot-w" and args.command != "verify" and any(n < 0 for n in indices):
        raise ValueError("indices must be nonnegative")
    return RunConfig(command=args.command, indices=indices, cache_path=cache_path, format=fmt, **kw)


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        cache = YVCache() if args.no_cache else YVCache.load(cfg.cache_path)
    except (CacheError, OSError) as exc:
        log.error("cannot read cache %s: %s", cfg.cache_path, exc)
        return EXIT_IO
    buf = io.StringIO()
    try:
        status = COMMANDS[cfg.command](cfg, cache, buf)
    except (RecurrenceDivisionFailure, RecursionDivisionFailure, NotDivisible) as exc:
        log.error("arithmetic invariant violated: %s", exc)
        return EXIT_ARITH
    except (NotSquarefree, CommonRootDetected) as exc:
        log.error("theorem check failed: %s", exc)
        status = EXIT_THEOREM
    try:
        out.write(buf.getvalue())
        out.flush()
        if not args.no_cache and cache.dirty:
            cache.save(cfg.cache_path)
    except OSError as exc:
        log.error("I/O failure: %s", exc)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
