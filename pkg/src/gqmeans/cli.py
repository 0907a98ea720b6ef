"""
Command-line frontend.

Subcommands::

    gqmeans eval power a=2 1 7
    gqmeans eval generalized pair.json endpoints 2 4
    gqmeans moments two-atoms:0.25
    gqmeans diagonal pair.json endpoints 1.0 --fd
    gqmeans equality n15 pair1.json pair2.json endpoints
    gqmeans equality m pair_f.json pair_h.json
    gqmeans equality grid spec1.json spec2.json --domain 0.5 3
    gqmeans scan --grid 21 --out hits.csv
    gqmeans demo --json

Pair, measure and mean arguments are JSON file paths or inline JSON.
Measures also accept the shorthands ``endpoints``, ``lebesgue``,
``two-atoms:TAU``, ``truncated-uniform:TAU`` and ``uniform:LO,HI``.

Exit status: 0 on success, 1 when a certification fails, 2 on
configuration or domain errors.  Numbers are printed with 17 significant
digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import equality as eq
from . import expr as E
from .diagonal import diagonal_derivatives, finite_difference_check, implicit_series_oracle
from .errors import GQMeansError
from .generator import Interval, pair_from_json
from .mean import Gini, Power, Stolarsky, evaluate, spec_from_json
from .measure import (
    Measure, PiParams, endpoints, lebesgue, mn_measure, moments, pi_moments, uniform,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
DEFAULT_TOL = {"n15": 1e-9, "m": 1e-8, "grid": 1e-11, "scan": 1e-6, "demo": 1e-8}


class ConfigError(GQMeansError):
    """Malformed command-line input."""


# formatting -------------------------------------------------------------


def fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.17g}"


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else json.dumps(fmt(obj))
    return json.dumps(str(obj))


def write_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# argument decoding ------------------------------------------------------


def load_json(arg: str):
    """A path to a JSON file or an inline JSON document."""
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{arg}: {exc}") from None
    try:
        return json.loads(arg)
    except json.JSONDecodeError:
        raise ConfigError(f"{arg!r} is neither a JSON file nor inline JSON") from None


def parse_measure(arg: str) -> Measure:
    if arg == "endpoints":
        return endpoints()
    if arg == "lebesgue":
        return lebesgue()
    name, _, rest = arg.partition(":")
    try:
        if name in ("two-atoms", "truncated-uniform") and rest:
            return mn_measure(float(rest), name)
        if name == "uniform" and rest:
            lo, hi = (float(s) for s in rest.split(","))
            return uniform(lo, hi)
    except ValueError:
        raise ConfigError(f"bad measure shorthand {arg!r}") from None
    obj = load_json(arg)
    if isinstance(obj, str):
        return parse_measure(obj)
    return Measure.from_json(obj)


def parse_float(s: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise ConfigError(f"{s!r} is not a number") from None


def _keyvals(items) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {item!r}")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def parse_mean(tokens: list[str]):
    """Mean specification from the tokens between the subcommand and ``x y``."""
    if not tokens:
        raise ConfigError("missing mean specification")
    family, rest = tokens[0], tokens[1:]
    if family in ("power", "gini", "stolarsky"):
        kv = _keyvals(rest)
        try:
            if family == "power":
                return Power(float(kv["a"]))
            cls = Gini if family == "gini" else Stolarsky
            return cls(float(kv["a"]), float(kv["b"]))
        except KeyError as exc:
            raise ConfigError(f"{family} needs parameter {exc}") from None
    if family in ("generalized", "bajraktarevic"):
        if not rest:
            raise ConfigError(f"{family} needs a pair")
        obj = {"family": family, "pair": load_json(rest[0])}
        if family == "generalized":
            if len(rest) < 2:
                raise ConfigError("generalized needs a pair and a measure")
            obj["measure"] = parse_measure(rest[1]).to_json()
        return spec_from_json(obj)
    if family in ("quasiarithmetic", "cauchy"):
        obj = {"family": family, **_keyvals(rest)}
        return spec_from_json(obj)
    if rest:
        raise ConfigError(f"unexpected arguments {rest}")
    return spec_from_json(load_json(family))


# subcommands --------------------------------------------------------------


def cmd_eval(args) -> int:
    if len(args.tokens) < 3:
        raise ConfigError("usage: eval SPEC... X Y")
    *spec_tokens, xs, ys = args.tokens
    spec = parse_mean(spec_tokens)
    x, y = parse_float(xs), parse_float(ys)
    value = evaluate(spec, x, y)
    if args.json:
        emit(dumps({"x": x, "y": y, "value": value}) + "\n", args.out)
    else:
        emit(fmt(value) + "\n", args.out)
    return EXIT_OK


def cmd_moments(args) -> int:
    if args.measure.startswith("pi:"):
        try:
            ell, p = (float(s) for s in args.measure[3:].split(","))
        except ValueError:
            raise ConfigError("pi shorthand is pi:ELL,P") from None
        mv = pi_moments(PiParams(ell, p), args.max_k)
    else:
        mv = moments(parse_measure(args.measure), args.max_k)
    if args.json:
        emit(dumps(mv.to_json()) + "\n", args.out)
    else:
        rows = [(k, float(mv.raw[k]), float(mv.central[k])) for k in range(len(mv.raw))]
        emit(write_csv(("k", "raw", "central"), rows), args.out)
    return EXIT_OK


def cmd_diagonal(args) -> int:
    pair = pair_from_json(load_json(args.pair))
    m = parse_measure(args.measure)
    x = parse_float(args.x)
    closed = diagonal_derivatives(pair, m, x).as_array()
    oracle = implicit_series_oracle(pair, m, x).as_array()
    fd = finite_difference_check(pair, m, x) if args.fd else {}
    res = np.abs(closed - oracle)
    ok = bool(np.all(res <= args.tol * np.maximum(1.0, np.abs(oracle))))
    if args.json:
        out = {"x": x, "closed_form": dict(zip(("d2", "d4", "d6", "d8"), closed)),
               "oracle": dict(zip(("d2", "d4", "d6", "d8"), oracle)),
               "oracle_residual": dict(zip(("d2", "d4", "d6", "d8"), res)), "agree": ok}
        if fd:
            out["fd_residual"] = {f"d{n}": v for n, v in fd.items()}
        emit(dumps(out) + "\n", args.out)
    else:
        header = ["x", "d2", "d4", "d6", "d8", "res2", "res4", "res6", "res8"]
        row = [x, *map(float, closed), *map(float, res)]
        if fd:
            header += ["fd2", "fd4"]
            row += [float(fd[2]), float(fd[4])]
        emit(write_csv(header, [row]), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _report_text(rep: eq.EqualityReport) -> str:
    lines = [f"{rep.label}: {rep.verdict}"]
    for c in rep.conditions:
        lines.append(f"  {c.id:<9} {'pass' if c.status else 'FAIL'}  {fmt(c.max_residual)}")
    return "\n".join(lines) + "\n"


def cmd_equality(args) -> int:
    tol = args.tol
    if args.kind == "grid":
        if len(args.items) != 2:
            raise ConfigError("equality grid needs two mean specifications")
        s1, s2 = (spec_from_json(load_json(a)) for a in args.items)
        if args.domain is None:
            raise ConfigError("equality grid needs --domain LO HI")
        dom = Interval(*args.domain)
        n = args.grid or eq.MEAN_GRID
        grid = eq.mean_grid(dom, n) + eq.near_diagonal_grid(dom, n)
        ok, res = eq.means_equal_grid(s1, s2, grid, tol or DEFAULT_TOL["grid"])
        if args.json:
            emit(dumps({"equal": ok, "max_residual": res}) + "\n", args.out)
        else:
            emit(f"{'equal' if ok else 'not-equal'} {fmt(res)}\n", args.out)
        return EXIT_OK if ok else EXIT_FAIL
    grid = None
    if args.kind == "n15":
        if len(args.items) != 3:
            raise ConfigError("equality n15 needs PAIR1 PAIR2 MEASURE")
        p1, p2 = (pair_from_json(load_json(a)) for a in args.items[:2])
        if args.grid:
            grid = eq.function_grid(p1.domain, args.grid)
        rep = eq.check_thm_n15(p1, p2, parse_measure(args.items[2]), grid,
                               tol or DEFAULT_TOL["n15"])
    else:
        if len(args.items) != 2:
            raise ConfigError("equality m needs PAIR_F PAIR_H")
        pf, ph = (pair_from_json(load_json(a)) for a in args.items)
        if args.grid:
            grid = eq.function_grid(pf.domain, args.grid)
        rep = eq.check_thm_m(pf, ph, grid, tol or DEFAULT_TOL["m"])
    emit(dumps(rep.to_json()) + "\n" if args.json else _report_text(rep), args.out)
    return EXIT_OK if rep.verdict == "equal" else EXIT_FAIL


def _pairs(spec: str | None, n: int, lo: float, hi: float, what: str):
    if spec is None:
        return eq.default_params(n, lo, hi)
    out = []
    for item in spec.split(";"):
        try:
            a, b = (float(s) for s in item.split(","))
        except ValueError:
            raise ConfigError(f"bad {what} parameter {item!r}; use A,B[;A,B...]") from None
        out.append((a, b))
    return out


def cmd_scan(args) -> int:
    n = args.grid or 21
    lo, hi = args.range
    gini = _pairs(args.gini, n, lo, hi, "gini")
    stol = _pairs(args.stolarsky, n, lo, hi, "stolarsky")
    if args.panel is None:
        panel = list(eq.DEFAULT_PANEL)
    else:
        panel = []
        for item in args.panel.split(";"):
            if not item.strip():
                continue
            try:
                x, y = (float(s) for s in item.split(","))
            except ValueError:
                raise ConfigError(f"bad panel point {item!r}") from None
            panel.append((x, y))
    if not panel:
        raise ConfigError("the point panel is empty")
    try:
        hits = eq.gini_stolarsky_scan(gini, stol, panel, args.tol or DEFAULT_TOL["scan"])
    except ValueError as exc:
        if isinstance(exc, GQMeansError):
            raise
        raise ConfigError(str(exc)) from None
    if args.json:
        emit(dumps([{"a": h.a, "b": h.b, "c": h.c, "d": h.d, "max_residual": h.max_residual,
                     "classification": h.classification, "exponent": h.exponent}
                    for h in hits]) + "\n", args.out)
    else:
        emit(write_csv(("a", "b", "c", "d", "max_residual", "classification"),
                       [(h.a, h.b, h.c, h.d, h.max_residual, h.classification) for h in hits]),
             args.out)
    return EXIT_FAIL if any(h.classification != "power" for h in hits) else EXIT_OK


def _suite_from_json(obj) -> list[eq.DemoInstance]:
    try:
        return [eq.DemoInstance(str(d.get("name", f"instance {i}")), E.parse(d.get("phi", "x")),
                                float(d["a"]), float(d["b"]), Interval(*d["domain"]),
                                E.parse(d["phi_h"]) if "phi_h" in d else None)
                for i, d in enumerate(obj)]
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed demo suite: {exc}") from None


def cmd_demo(args) -> int:
    suite = _suite_from_json(load_json(args.suite)) if args.suite else eq.DEFAULT_DEMO_SUITE
    tol = args.tol or DEFAULT_TOL["demo"]
    reports = eq.intersection_demo(suite, tol=tol)
    if args.json:
        emit(dumps([r.to_json() for r in reports]) + "\n", args.out)
    else:
        emit("".join(_report_text(r) for r in reports), args.out)
    return EXIT_OK if all(r.verdict == "equal" for r in reports) else EXIT_FAIL


# parser -------------------------------------------------------------------


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not a number") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerances must be positive")
    return v


def _positive_int(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None, help="tolerance override")
    common.add_argument("--grid", type=_positive_int, default=None, help="grid size override")
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument("--json", action="store_true", default=None, help="emit JSON")
    common.add_argument("--config", default=None,
                        help="JSON file with defaults for tol/grid/out/json; flags win")

    parser = argparse.ArgumentParser(prog="gqmeans", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a mean at (x, y)")
    p.add_argument("tokens", nargs="+", metavar="ARG",
                   help="FAMILY [key=value | PAIR [MEASURE]] X Y, or SPEC.json X Y")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("moments", parents=[common], help="raw and central moments of a measure")
    p.add_argument("measure")
    p.add_argument("--max-k", type=int, default=8, choices=range(0, 9), metavar="K")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("diagonal", parents=[common],
                       help="diagonal derivatives with oracle residuals")
    p.add_argument("pair")
    p.add_argument("measure")
    p.add_argument("x")
    p.add_argument("--fd", action="store_true", help="add finite-difference residuals")
    p.set_defaults(func=cmd_diagonal, tol_default=1e-8)

    p = sub.add_parser("equality", parents=[common], help="certify equality of two means")
    p.add_argument("kind", choices=("n15", "m", "grid"))
    p.add_argument("items", nargs="+")
    p.add_argument("--domain", type=float, nargs=2, metavar=("LO", "HI"))
    p.set_defaults(func=cmd_equality)

    p = sub.add_parser("scan", parents=[common], help="Gini versus Stolarsky coincidence scan")
    p.add_argument("--gini", help="explicit Gini parameters 'a,b;a,b;...'")
    p.add_argument("--stolarsky", help="explicit Stolarsky parameters 'c,d;...'")
    p.add_argument("--range", type=float, nargs=2, default=(-3.0, 3.0), metavar=("LO", "HI"))
    p.add_argument("--panel", help="points 'x,y;x,y;...'")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("demo", parents=[common],
                       help="certify the Bajraktarevic/Cauchy intersection suite")
    p.add_argument("--suite", help="JSON list of {name, phi, a, b, domain[, phi_h]}")
    p.set_defaults(func=cmd_demo)
    return parser


def _apply_config(args):
    if args.config:
        cfg = load_json(args.config)
        if not isinstance(cfg, dict):
            raise ConfigError("--config must hold a JSON object")
        for key in ("tol", "grid", "out", "json"):
            if getattr(args, key) is None and key in cfg:
                setattr(args, key, cfg[key])
        if args.tol is not None and not float(args.tol) > 0:
            raise ConfigError("tolerances must be positive")
    args.json = bool(args.json)
    if args.tol is None and hasattr(args, "tol_default"):
        args.tol = args.tol_default


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except GQMeansError as exc:
        print(f"gqmeans: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"gqmeans: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
