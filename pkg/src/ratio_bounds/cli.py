"""Command-line front end.

Every command writes rows with one schema: CSV with the header
:data:`CSV_HEADER`, or JSON Lines with the fields of :data:`JSON_FIELDS`.
Exit status is 2 when a validity or domain predicate fails and 1 when an
oracle value falls outside a bound.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import oracle
from .bounds import SIGMA, lg_logderiv_bounds
from .errors import DomainError, NoConvergence, RatioBoundsError, ValidityError
from .families import (
    family_names,
    get_family,
    largest_zero_upper_bound,
    mills_bounds,
    pcf_logderiv_bounds,
    ratio_enclosure,
    turan_check,
)

CSV_HEADER = ["family", "n", "alpha", "m", "nu", "x", "depth", "lower", "upper", "oracle", "contained", "provenance"]
JSON_FIELDS = ["family", "params", "x", "depth", "lower", "upper", "width", "oracle", "contained", "provenance"]
PARAM_NAMES = ("n", "alpha", "m", "nu")


def _domain_like(exc) -> bool:
    return isinstance(exc, RatioBoundsError) and not isinstance(exc, NoConvergence)


# --- formatting -------------------------------------------------------------


def fmt(v) -> str:
    """17 significant digits, enough for a binary64 round trip."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float, np.floating)):
        v = float(v)
        # JSON has no infinity; an open end is reported as null
        return "null" if not math.isfinite(v) else format(v, ".17g")
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(v)


def make_row(family, params, x, depth, lower, upper, oracle_value=None, contained=None, provenance=""):
    return {
        "family": family,
        "params": dict(params),
        "x": x,
        "depth": depth,
        "lower": lower,
        "upper": upper,
        "oracle": oracle_value,
        "contained": contained,
        "provenance": provenance,
    }


def render(rows, form: str) -> str:
    if form == "json":
        lines = []
        for r in rows:
            r = dict(r)
            lo, hi = r["lower"], r["upper"]
            r["width"] = None if lo is None or hi is None else hi - lo
            lines.append("{" + ", ".join(f'"{k}": {_json_value(r[k])}' for k in JSON_FIELDS) + "}")
        return "".join(line + "\n" for line in lines)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        p = r["params"]
        w.writerow(
            [r["family"]]
            + [fmt(p.get(k)) for k in PARAM_NAMES]
            + [fmt(r["x"]), fmt(r["depth"]), fmt(r["lower"]), fmt(r["upper"]), fmt(r["oracle"]),
               fmt(r["contained"]), r["provenance"]]
        )
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(rows, args) -> None:
    text = render(rows, args.format)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


# --- argument handling ---------------------------------------------------------


def x_values(args) -> list:
    if args.x_range is not None:
        start, stop, step = args.x_range
        if not step > 0 or stop < start:
            raise ValidityError("--x-range needs start <= stop and step > 0", "non-empty range")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    if not args.x:
        raise ValidityError("give --x or --x-range", "x present")
    return list(args.x)


def param_grid(family: str, args) -> list:
    """Cartesian product of the parameter values given for the family."""
    fam = get_family(family)
    lists = []
    for name in fam.params:
        vals = getattr(args, name, None)
        if not vals:
            raise ValidityError(f"{family}: --{name} is required", f"{name} present")
        lists.append([(name, v) for v in vals])
    return [dict(combo) for combo in itertools.product(*lists)]


def _oracle_ratio(family, params, x):
    return float(oracle.oracle_ratio(family, params, x).value)


# --- commands --------------------------------------------------------------------


def _ratio_rows(task):
    family, params, x, depth, rel_tol, with_oracle = task
    seq = ratio_enclosure(family, params, x, depth, rel_tol)
    o = _oracle_ratio(family, params, x) if with_oracle else None
    rows = []
    for k, enc in enumerate(seq.enclosures):
        c = enc.contains(o, SIGMA) if with_oracle else None
        rows.append(make_row(family, params, x, k, enc.lower, enc.upper, o, c, enc.provenance))
    return rows


def _run_tasks(fn, tasks, jobs):
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))  # map keeps input order
    return [fn(t) for t in tasks]


def cmd_ratio(args):
    tasks = [
        (args.family, p, x, args.depth, args.rel_tol, args.oracle)
        for p in param_grid(args.family, args)
        for x in x_values(args)
    ]
    rows = [r for chunk in _run_tasks(_ratio_rows, tasks, args.jobs) for r in chunk]
    emit(rows, args)
    return _status(rows)


def _sweep_rows(task):
    family, params, x, depth, rel_tol = task
    try:
        rows = _ratio_rows((family, params, x, depth, rel_tol, True))
        return [rows[-1]]
    except RatioBoundsError as exc:
        if not _domain_like(exc):
            raise
        pred = getattr(exc, "predicate", None) or str(exc)
        return [make_row(family, params, x, depth, None, None, None, None, f"not valid: {pred}")]


def cmd_sweep(args):
    tasks = [
        (args.family, p, x, args.depth, args.rel_tol)
        for p in param_grid(args.family, args)
        for x in x_values(args)
    ]
    rows = [r for chunk in _run_tasks(_sweep_rows, tasks, args.jobs) for r in chunk]
    emit(rows, args)
    return _status(rows)


def logderiv_bracket(family: str, params: dict, x: float):
    """Bracket for ``y_n'/y_n`` (``-U'/U`` for pcf-u)."""
    fam = get_family(family)
    params = fam.check_params(params)
    if family == "pcf-u":
        return pcf_logderiv_bounds(params["n"], x)
    if fam.solution_class is None or family in ("mills", "ierfc"):
        raise ValidityError(f"{family}: no logarithmic-derivative bracket", "family with a ratio system")
    ok, why = fam.domain(params, x)
    if not ok:
        raise ValidityError(f"{family}: {why}", why)
    n = fam.index(params)
    for k in (n, n + 1):
        ok, why = fam.pk1(params, k, x)
        if not ok:
            raise ValidityError(f"{family}: hypothesis fails at index {k:g} ({why})", why)
    return lg_logderiv_bounds(fam.system(params), n, x, fam.solution_class, fam.increasing)[1]


def cmd_logderiv(args):
    rows = []
    for p in param_grid(args.family, args):
        for x in x_values(args):
            b = logderiv_bracket(args.family, p, x)
            o = c = None
            if args.oracle:
                o = float(oracle.oracle_logderiv(args.family, p, x).value)
                if args.family == "pcf-u":
                    o = -o
                c = b.contains(o, SIGMA)
            rows.append(make_row(args.family, p, x, 0, b.lower, b.upper, o, c, "LG"))
    emit(rows, args)
    return _status(rows)


def cmd_mills(args):
    rows = []
    for x in x_values(args):
        seq = mills_bounds(x, max(args.depth, 1), args.rel_tol)
        o = float(oracle.oracle_mills(x).value) if args.oracle else None
        for k, enc in enumerate(seq.enclosures, start=1):
            c = enc.contains(o, SIGMA) if args.oracle else None
            rows.append(make_row("mills", {}, x, k, enc.lower, enc.upper, o, c, enc.provenance))
    emit(rows, args)
    return _status(rows)


def cmd_turan(args):
    rows = []
    for p in param_grid(args.family, args):
        report = turan_check(args.family, p, x_values(args))
        for s in report.samples:
            failed = [t for t, app, h in s.chain if app and not h]
            prov = report.quantity + ("; fails: " + " | ".join(failed) if failed else "; chain holds")
            rows.append(make_row(args.family, p, s.x, 0, s.lower, s.upper, s.oracle, s.verdict, prov))
    emit(rows, args)
    return _status(rows)


def cmd_zeros(args):
    family = args.family
    if family not in ("hermite", "laguerre"):
        raise ValidityError(f"zeros: family must be hermite or laguerre, got {family!r}", "family in {hermite, laguerre}")
    alphas = args.alpha if family == "laguerre" else [None]
    if family == "laguerre" and not alphas:
        raise ValidityError("laguerre: --alpha is required", "alpha present")
    if not args.n:
        raise ValidityError(f"{family}: --n is required", "n present")
    rows = []
    for n in args.n:
        for a in alphas:
            rep = largest_zero_upper_bound(family, int(n), a, args.level)
            z = float(oracle.oracle_largest_zero(family, int(n), a).value)
            c = z < rep.bound if rep.condition_satisfied else None
            prov = f"{rep.condition_text}: {'holds' if rep.condition_satisfied else 'fails'} (value {fmt(rep.condition_value)})"
            params = {"n": int(n)} if a is None else {"n": int(n), "alpha": a}
            rows.append(make_row(family, params, None, args.level, None, rep.bound, z, c, prov))
    emit(rows, args)
    return _status(rows)


# uniform sampling boxes for `validate`; points outside a validity region are redrawn
def _box(**ranges):
    def draw(rng):
        out = {}
        for name, (lo, hi, integer) in ranges.items():
            out[name] = float(rng.integers(lo, hi + 1)) if integer else float(rng.uniform(lo, hi))
        return out
    return draw


SAMPLERS = {
    "pcf-u": (_box(n=(0.5, 20.0, False)), (0.0, 20.0)),
    "pcf-u-reflected": (_box(n=(0.6, 20.0, False)), (0.0, 20.0)),
    "pcf-v": (_box(n=(0.5, 12.0, False)), (0.0, 10.0)),
    "hermite-imag": (_box(n=(1, 15, True)), (0.0, 10.0)),
    "oblate-q": (_box(m=(0.0, 4.0, False), n=(0.2, 10.0, False)), (0.0, 10.0)),
    "oblate-p": (_box(m=(0, 4, True), n=(1, 10, True)), (0.0, 10.0)),
    "laguerre-neg": (_box(nu=(0.0, 20.0, False), alpha=(0.01, 10.0, False)), (0.0, 20.0)),
    "bessel-i": (_box(n=(0.0, 30.0, False)), (0.01, 30.0)),
    "bessel-k": (_box(n=(1.5, 30.0, False)), (0.01, 30.0)),
    "hermite-real": (_box(n=(2, 30, True)), (0.0, 20.0)),
    "laguerre-real": (_box(n=(2, 20, True), alpha=(-0.9, 5.0, False)), (0.0, 100.0)),
    "mills": (_box(), (0.0, 20.0)),
    "ierfc": (_box(n=(1, 10, True)), (0.0, 10.0)),
}


def _offset_params(family, p):
    # oblate parameters are drawn as (m, n - m)
    if family in ("oblate-q", "oblate-p"):
        return {"n": p["m"] + p["n"], "m": p["m"]}
    return p


def sample_points(family: str, count: int, seed: int, depth: int = 0, max_tries: int = 50) -> list:
    """Deterministic draws ``(params, x, enclosure)`` inside a validity region."""
    draw, (x_lo, x_hi) = SAMPLERS[family]
    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > max_tries * count:
            raise DomainError(f"{family}: fewer than {count} sample points satisfy the validity region at depth {depth}")
        p = _offset_params(family, draw(rng))
        x = float(rng.uniform(x_lo, x_hi))
        try:
            seq = ratio_enclosure(family, p, x, depth)
        except RatioBoundsError as exc:
            if not _domain_like(exc):
                raise
            continue
        out.append((p, x, seq.final))
    return out


def _validate_row(task):
    family, params, x, depth, enc = task
    o = _oracle_ratio(family, params, x)
    return make_row(family, params, x, depth, enc.lower, enc.upper, o, enc.contains(o, SIGMA), enc.provenance)


def cmd_validate(args):
    if args.family not in SAMPLERS:
        raise ValidityError(f"validate: unknown family {args.family!r}", "family registered")
    pts = sample_points(args.family, args.samples, args.seed, args.depth)
    tasks = [(args.family, p, x, args.depth, enc) for p, x, enc in pts]
    rows = _run_tasks(_validate_row, tasks, args.jobs)
    good = sum(1 for r in rows if r["contained"])
    if args.output:
        write_atomic(args.output, render(rows, args.format))
    else:
        for r in rows:
            if not r["contained"]:
                sys.stdout.write(render([r], args.format))
    print(f"{good}/{len(rows)} contained")
    return 0 if good == len(rows) else 1


def _status(rows) -> int:
    return 1 if any(r["contained"] is False for r in rows) else 0


# --- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratio-bounds", description="Bounds for ratios of special functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True, params=True, xs=True):
        if family:
            p.add_argument("--family", required=True)
        if params:
            for name in PARAM_NAMES:
                p.add_argument(f"--{name}", type=float, nargs="+")
        if xs:
            p.add_argument("--x", type=float, nargs="+")
            p.add_argument("--x-range", type=float, nargs=3, metavar=("START", "STOP", "STEP"))
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output")

    p = sub.add_parser("ratio", help="enclosure sequence of a ratio")
    common(p)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-12)
    p.add_argument("--oracle", action="store_true", help="add oracle value and containment")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("logderiv", help="bracket for a logarithmic derivative")
    common(p)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_logderiv)

    p = sub.add_parser("mills", help="Mills ratio continued-fraction bounds")
    common(p, family=False, params=False)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--rel-tol", type=float, default=1e-12)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_mills)

    p = sub.add_parser("turan", help="Turán-type chain against the oracle")
    common(p)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("zeros", help="largest-zero bound with the oracle zero")
    common(p, xs=False)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("validate", help="random containment check inside the validity region")
    common(p, params=False, xs=False)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sweep", help="grid table with oracle comparison")
    common(p)
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-12)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except RatioBoundsError as exc:
        pred = getattr(exc, "predicate", None)
        extra = f" [requires: {pred}]" if pred and pred not in str(exc) else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return 2 if _domain_like(exc) else 1


if __name__ == "__main__":
    sys.exit(main())
