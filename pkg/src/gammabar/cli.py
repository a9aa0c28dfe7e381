"""Command-line runner for the verification suites and computations.

Functor expressions: ``Sp | Sp(m) | C | filt(m) | Id`` joined by ``.``
(outermost first).  Spaces: ``S0 | S1 | S2 | point``, wedges ``A v B``,
parentheses, and ``Sp(m, SPACE)`` for the classical symmetric power.

Exit status: 0 when every suite passes, 1 when one fails, 2 for usage and
parse errors, 3 when an enumeration bound is hit (a partial report is still
written).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time

from . import __version__
from .bar import (
    VARIANTS,
    BarObject,
    check_bar_identities,
    check_extra_degeneracy,
    check_stable_closure,
    compare_unstable_stable,
    realize_pi0,
)
from .checks import CheckReport
from .filtered import FilteredSSet, trivially_filtered, wedge_filtered
from .gamma import (
    ExpressionError,
    check_module_action,
    filtered_wedge_inclusion,
    parse_expr,
    pi0_monoid,
    specialness_report,
)
from .invariants import connectivity_compare, group_completion
from .linearity import (
    WedgeContext,
    check_homotopy,
    check_identities,
    check_maps,
    check_modules,
    pi0_comparison,
    realization_pi0_map,
)
from .simplicial import homology, named
from .spaces import Base, ResourceBoundError, SpSpace, materialize_space, set_point_limit

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

SUITES = (
    "simplicial-identities",
    "stable-closure",
    "extra-degeneracy",
    "unstable-vs-stable",
    "module-action",
    "linearity",
    "homotopy",
    "all",
)

# -- space grammar -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(Sp|S0|S1|S2|point|v|\(|\)|,|\d+)")


def _tokens(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ExpressionError(f"unexpected input at {text[pos:]!r}")
        out.append(mt.group(1))
        pos = mt.end()
    return out


def parse_space(text: str, truncation_dim: int = 4) -> FilteredSSet:
    """Build a trivially filtered space from ``S0 v (S1 v Sp(2,S2))`` and the like."""
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected or 'a space'} in {text!r}")
        pos += 1
        return tok

    def atom() -> FilteredSSet:
        tok = take()
        if tok in ("S0", "S1", "S2", "point"):
            return trivially_filtered(named(tok, truncation_dim))
        if tok == "(":
            x = wedge()
            take(")")
            return x
        if tok == "Sp":
            take("(")
            m = take()
            if not m.isdigit():
                raise ExpressionError(f"Sp needs a count, got {m!r}")
            take(",")
            x = wedge()
            take(")")
            sp = materialize_space(SpSpace(Base(x), int(m)), truncation_dim, None, f"Sp{m}({x.name})")
            return trivially_filtered(sp.space)
        raise ExpressionError(f"unexpected {tok!r} in {text!r}")

    def wedge() -> FilteredSSet:
        x = atom()
        while peek() == "v":
            take("v")
            x = wedge_filtered(x, atom())
        return x

    if not toks:
        raise ExpressionError("empty space description")
    result = wedge()
    if pos != len(toks):
        raise ExpressionError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return result


# -- configuration -------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ExpressionError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


_INT_KEYS = {"m", "k_max", "dim", "cap", "max_degree", "max_filt", "max_points"}


def merged(args: argparse.Namespace) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    out = {}
    for key, value in vars(args).items():
        if key in ("config", "func"):
            continue
        if value is None and key in cfg:
            value = cfg[key]
        if value is not None and key in _INT_KEYS:
            try:
                value = int(value)
            except ValueError:
                raise ExpressionError(f"{key} must be an integer, got {value!r}") from None
            if value < 0:
                raise ExpressionError(f"{key} must be nonnegative")
        out[key] = value
    return out


# -- reports -------------------------------------------------------------------


def _suite_entry(rep: CheckReport) -> dict:
    return {
        "name": rep.name,
        "verdict": "pass" if rep.ok else "fail",
        "checked": rep.checked,
        "failures": rep.failure_count,
        "first_failures": list(rep.failures),
    }


def _skipped(name: str, reason: str) -> dict:
    return {"name": name, "verdict": f"skipped({reason})", "checked": 0, "failures": 0, "first_failures": []}


def _emit(report: dict, cfg: dict, table: list[list] | None = None) -> None:
    fmt = cfg.get("format") or "json"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in table or []:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps(report, indent=2) + "\n"
    if cfg.get("output"):
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _scenario(cfg: dict) -> dict:
    return {k: v for k, v in cfg.items() if v is not None and k not in ("output", "format")}


# -- verify --------------------------------------------------------------------


def _resolve(cfg: dict) -> dict:
    """Defaults filled in; this is what the report echoes as its bounds."""
    get = lambda key, default: cfg.get(key) if cfg.get(key) is not None else default  # noqa: E731
    return {
        "F": str(parse_expr(get("F", "Sp"))),
        "X": get("X", "S0"),
        "Y": get("Y", "S0"),
        "m": get("m", 1),
        "K": get("k_max", 2),
        "dim": get("dim", 1),
        "outer_cap": get("cap", 2),
        "variant": get("variant", "stable"),
        "object": get("object", "bar"),
    }


def _run_suites(cfg: dict, b: dict, suites: list[dict]) -> None:
    suite = cfg["suite"]
    F = parse_expr(b["F"])
    dim, m, K, cap, variant, obj = b["dim"], b["m"], b["K"], b["outer_cap"], b["variant"], b["object"]
    D = max(dim + 1, 2)
    x = parse_space(b["X"], D)
    y = parse_space(b["Y"], D)
    want = lambda name: suite in (name, "all")  # noqa: E731

    def add(rep):
        suites.append(_suite_entry(rep))

    if want("simplicial-identities"):
        if obj == "bar":
            b = BarObject(F, x, m, variant, K, max_filt=m, cap=cap)
            add(check_bar_identities(b, dim))
        else:
            ctx = WedgeContext(x, y, m, K, dim, cap, F)
            reps = check_identities(ctx)
            for key in (obj, f"{obj}-borderline"):
                add(reps[key])
    if want("stable-closure"):
        add(check_stable_closure(BarObject(F, x, m, "stable", K, cap=cap), dim))
    if want("extra-degeneracy"):
        add(check_extra_degeneracy(BarObject(F, x, m, "unstable", K), dim))
    if want("unstable-vs-stable"):
        out = compare_unstable_stable(F, x, m, K, dim, cap)
        lm = out["levelwise_map"]
        rep = CheckReport("unstable into stable", lm["checked"], list(lm["first_failures"]), lm["failures"])
        add(rep)
    if want("module-action"):
        add(check_module_action(F, x, m, dim))
    if want("linearity") or want("homotopy"):
        ctx = WedgeContext(x, y, m, K, dim, cap, F)
        reps = {}
        if want("linearity"):
            reps.update(check_identities(ctx))
            reps.update(check_maps(ctx))
            reps.update(check_modules(ctx))
        reps.update(check_homotopy(ctx))
        for rep in reps.values():
            add(rep)
        if want("linearity"):
            pi = pi0_comparison(ctx)
            rep = CheckReport("levelwise pi0 of p")
            for key, v in pi.items():
                rep.check(v["monoid_iso"], f"summand {key}: {v}")
            add(rep)


def cmd_verify(cfg: dict) -> tuple[dict, int]:
    start = time.perf_counter()
    suites: list[dict] = []
    bounds = _resolve(cfg)
    report: dict = {"tool": "gammabar", "version": __version__, "scenario": _scenario(cfg), "bounds": bounds}
    if cfg["suite"] in ("linearity", "all"):
        report["notes"] = [
            "the commuting-squares statement is reconstructed and checked as the pointwise equalities f r = q p and f = q p i"
        ]
    report["suites"] = suites
    status = EXIT_OK
    try:
        _run_suites(cfg, bounds, suites)
    except ResourceBoundError as exc:
        suites.append(_skipped("bound", str(exc)))
        status = EXIT_BOUND
    if status == EXIT_OK and any(s["verdict"] == "fail" for s in suites):
        status = EXIT_FAIL
    report["verdict"] = {EXIT_OK: "pass", EXIT_FAIL: "fail", EXIT_BOUND: "incomplete"}[status]
    report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return report, status


# -- compute -------------------------------------------------------------------


def cmd_compute(cfg: dict) -> tuple[dict, int, list[list]]:
    what = cfg["what"]
    start = time.perf_counter()
    report: dict = {"tool": "gammabar", "version": __version__, "scenario": _scenario(cfg)}
    table: list[list] = []
    if what == "homology":
        deg = cfg.get("max_degree") if cfg.get("max_degree") is not None else 2
        x = parse_space(cfg.get("space") or "S2", deg + 1)
        groups = homology(x.space, deg)
        report["homology"] = [{"degree": n, **g.as_dict(), "group": str(g)} for n, g in enumerate(groups)]
        table = [["degree", "rank", "torsion", "group"]]
        table += [[n, g.rank, " ".join(map(str, g.torsion)), str(g)] for n, g in enumerate(groups)]
    elif what == "pi0":
        expr = parse_expr(cfg.get("expr") or "Sp")
        x = parse_space(cfg.get("space") or "S0", 1)
        budget = cfg.get("max_filt") if cfg.get("max_filt") is not None else 2
        mon = pi0_monoid(expr, x, budget).monoid
        report["pi0"] = {**mon.as_dict(), "group_completion": str(group_completion(mon))}
        report["bounds"] = {"max_filt": budget}
        table = [["generator"]] + [[g] for g in mon.generators]
    elif what == "gc-pi0-realization":
        m = cfg.get("m") if cfg.get("m") is not None else 2
        F = parse_expr(cfg.get("F") or "Sp")
        x = parse_space(cfg.get("X") or "S0", 1)
        r = realize_pi0(BarObject(F, x, m, "stable", 1))
        gc = r.group_completion()
        report["bounds"] = {"F": str(F), "X": x.name, "m": m}
        report["realization_pi0"] = {**r.monoid.as_dict(), "group_completion": str(gc)}
        table = [["group", "rank", "torsion"], [str(gc), gc.rank, " ".join(map(str, gc.torsion))]]
        if cfg.get("Y"):
            y = parse_space(cfg["Y"], 1)
            lin = realization_pi0_map(x, y, m, F)
            report["wedge_to_product"] = lin
            table.append([f"{lin['source']} -> {lin['target']}", "iso" if lin["iso"] else "not iso", ""])
    elif what == "specialness":
        expr = parse_expr(cfg.get("expr") or "Sp")
        dim = cfg.get("dim") if cfg.get("dim") is not None else 1
        x = parse_space(cfg.get("X") or "S0", max(dim, 1))
        y = parse_space(cfg.get("Y") or "S0", max(dim, 1))
        budget = cfg.get("max_filt") if cfg.get("max_filt") is not None else 2
        report["specialness"] = specialness_report(expr, x, y, budget, dim)
        table = [["special"], [report["specialness"]["special"]]]
    elif what == "wedge-connectivity":
        deg = cfg.get("max_degree") if cfg.get("max_degree") is not None else 2
        m = cfg.get("m") if cfg.get("m") is not None else 2
        x = parse_space(cfg.get("space") or "S1", deg + 1)
        expr = parse_expr(cfg.get("expr") or "Sp")
        inc = filtered_wedge_inclusion(expr, x, m, deg + 1)
        conn = connectivity_compare(inc, deg, input_connectivity=_connectivity_of(x, deg))
        report["bounds"] = {"F": str(expr), "X": x.name, "m": m, "max_degree": deg}
        report["map"] = f"filt{m} F(X) v filt{m} F(X) -> filt{m}(F(X) x F(X))"
        report["connectivity"] = conn.as_dict()
        table = [["degree", "source", "target", "cone", "verdict"]]
        table += [[v.degree, v.source, v.target, v.cone, v.verdict] for v in conn.degrees]
    else:
        raise ExpressionError(f"unknown computation {what!r}")
    report["timing_seconds"] = round(time.perf_counter() - start, 3)
    return report, EXIT_OK, table


def _connectivity_of(x: FilteredSSet, deg: int) -> int:
    """Largest ``c`` with vanishing reduced homology through degree ``c`` (within range)."""
    hs = homology(x.space, min(deg, x.space.truncation_dim - 1))
    c = -1
    for g in hs:
        if not g.is_zero:
            break
        c += 1
    return c


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gammabar", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=f"gammabar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value file; flags override it")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"))
        sp.add_argument("--max-points", type=int, help="refuse levels with more points than this")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES)
    v.add_argument("--F", dest="F", help="functor expression with a C-action (Sp or C)")
    v.add_argument("--X", dest="X")
    v.add_argument("--Y", dest="Y")
    v.add_argument("--m", type=int)
    v.add_argument("--k-max", type=int)
    v.add_argument("--dim", type=int, help="largest internal simplicial dimension")
    v.add_argument("--cap", type=int, help="arity cap on the outermost C")
    v.add_argument("--variant", choices=VARIANTS)
    v.add_argument("--object", choices=("bar", "D", "E"))
    common(v)

    c = sub.add_parser("compute", help="homology, pi0 and group completions")
    c.add_argument("what", choices=("homology", "pi0", "gc-pi0-realization", "specialness", "wedge-connectivity"))
    c.add_argument("--space")
    c.add_argument("--expr")
    c.add_argument("--F", dest="F")
    c.add_argument("--X", dest="X")
    c.add_argument("--Y", dest="Y")
    c.add_argument("--m", type=int)
    c.add_argument("--dim", type=int)
    c.add_argument("--max-degree", type=int)
    c.add_argument("--max-filt", type=int)
    common(c)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = merged(args)
        if cfg.get("format") not in (None, "json", "csv"):
            raise ExpressionError(f"unknown format {cfg['format']!r}")
        set_point_limit(cfg.get("max_points"))
        if args.command == "verify":
            if cfg.get("suite") is None:
                raise ExpressionError("verify needs --suite")
            if cfg["suite"] not in SUITES:
                raise ExpressionError(f"unknown suite {cfg['suite']!r}")
            report, status = cmd_verify(cfg)
            table = [["suite", "verdict", "checked", "failures"]] + [
                [s["name"], s["verdict"], s["checked"], s["failures"]] for s in report["suites"]
            ]
        else:
            try:
                report, status, table = cmd_compute(cfg)
            except ResourceBoundError as exc:
                report = {"tool": "gammabar", "version": __version__, "scenario": _scenario(cfg), "error": str(exc)}
                status, table = EXIT_BOUND, [["error"], [str(exc)]]
    except (ExpressionError, OSError) as exc:
        print(f"gammabar: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        set_point_limit(None)
    _emit(report, cfg, table)
    return status


if __name__ == "__main__":
    sys.exit(main())
