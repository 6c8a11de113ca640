"""
Command-line entry point.

    orthodl verify-counts --p 3 --d 2
    orthodl chow --p-max 10 --d-max 5 [--format csv]
    orthodl degree --p 3 --d 2 --ext 2 --kmax 6
    orthodl enumerate --p 3 --d 1 --ext 2 --component +
    orthodl example-d1 --p 5 --samples 200
    orthodl all

Exit codes: 0 all checks pass, 1 a check failed, 2 resource limit,
3 invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from fractions import Fraction

from . import __version__
from .acceptance import case_count_checks, check, isotropic_line_check, run_suite
from .chow import chow_table
from .degree_lab import MAX_COLUMNS, MAX_OPS, verify_degree
from .dlmoduli import enumerate_Y_points
from .errors import CloudTooSmallError, NotStabilizedError, ParameterError, ResourceLimitError
from .example_d1 import run_all as example_d1_all
from .gf import make_tower
from .quadspace import DEFAULT_BUDGET, build_space

EXIT_OK, EXIT_FAIL, EXIT_LIMIT, EXIT_ARGS = 0, 1, 2, 3
SCHEMA = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common():
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--p", type=int, default=3)
    c.add_argument("--d", type=int, default=1)
    c.add_argument("--ext", type=int, default=1, help="extension level m, field F_{p^{2m}}")
    c.add_argument("--kmax", type=int, default=None)
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--budget-ops", type=int, default=None)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", default=None)
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--timings", action="store_true", help="record wall-clock times")
    return c


def build_parser():
    common = _common()
    ap = _Parser(prog="orthodl", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("verify-counts", parents=[common])
    ch = sub.add_parser("chow", parents=[common])
    ch.add_argument("--p-max", type=int, default=10)
    ch.add_argument("--d-max", type=int, default=5)
    dg = sub.add_parser("degree", parents=[common])
    dg.add_argument("--subset", type=int, default=None)
    en = sub.add_parser("enumerate", parents=[common])
    en.add_argument("--component", default="+", choices=["+", "-", "plus", "minus"])
    sub.add_parser("example-d1", parents=[common])
    al = sub.add_parser("all", parents=[common])
    al.add_argument("--criteria", default=None, help="comma-separated subset, e.g. 1,3,4")
    return ap


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _report(args, command, params, checks, extra=None, status=None):
    if status is None:
        status = "pass" if all(c["pass"] for c in checks) else "fail"
    rep = {"schema": SCHEMA, "command": command, "version": __version__,
           "params": params, "checks": checks, "status": status,
           "pass": status == "pass"}
    if extra:
        rep.update(extra)
    return rep


def _tower_echo(p, m):
    T = make_tower(p, m)
    return {"p": p, "m": m, "a": T.a, "modulus": list(T.modulus) if T.modulus else None}


def cmd_verify_counts(args):
    p, d = args.p, args.d
    params = {"p": p, "d": d, "tower": _tower_echo(p, 1), "seed": args.seed,
              "samples": args.samples, "budget_ops": args.budget_ops}
    checks, extra = [], {}
    try:
        build_space(p, d)
        checks.append(isotropic_line_check(p, d))
        cs, info = case_count_checks(p, d, samples=args.samples, seed=args.seed)
        checks += cs
        extra["case_counts"] = info
    except ResourceLimitError as exc:
        extra["error"] = str(exc)
        return _report(args, "verify-counts", params, checks, extra, "resource_limit")
    return _report(args, "verify-counts", params, checks, extra)


def cmd_chow(args):
    rows = chow_table(args.p_max, args.d_max)
    params = {"p_max": args.p_max, "d_max": args.d_max}
    checks = [check("chow(%d,%d)" % (r["p"], r["d"]), True, r["match"],
                    "exact recursion vs closed forms") for r in rows]
    rep = _report(args, "chow", params, checks, {"table": rows})
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        keys = ["p", "d", "analog_closed", "analog_recursive", "degree_closed",
                "degree_via_chern", "match"]
        w.writerow(keys)
        for r in rows:
            w.writerow([str(r[k]) for k in keys])
        rep["_csv"] = buf.getvalue()
    return rep


def cmd_degree(args):
    kmax = args.kmax if args.kmax is not None else 2 * args.d + 2
    params = {"p": args.p, "d": args.d, "m": args.ext, "kmax": kmax,
              "tower": _tower_echo(args.p, args.ext), "subset": args.subset, "seed": args.seed,
              "budget_ops": args.budget_ops or MAX_OPS, "max_columns": MAX_COLUMNS}
    try:
        res = verify_degree(args.p, args.d, args.ext, kmax, budget_ops=args.budget_ops or MAX_OPS,
                            subset=args.subset, seed=args.seed, timings=args.timings)
    except ResourceLimitError as exc:
        return _report(args, "degree", params, [], {"error": str(exc)}, "resource_limit")
    except (NotStabilizedError, CloudTooSmallError) as exc:
        c = check("degree", "stabilised", type(exc).__name__, "Hilbert-function differences")
        return _report(args, "degree", params, [c], {"error": str(exc)})
    c = check("degree", res["expected"], res["degree"],
              "stabilised d-th difference of HF vs closed degree formula")
    return _report(args, "degree", params, [c], {"result": res})


def cmd_enumerate(args):
    p, d, m = args.p, args.d, args.ext
    params = {"p": p, "d": d, "m": m, "component": args.component,
              "tower": _tower_echo(p, m), "budget_ops": args.budget_ops or DEFAULT_BUDGET}
    V = build_space(p, d)
    try:
        pts = enumerate_Y_points(V, m, args.component, budget=args.budget_ops or DEFAULT_BUDGET)
    except ResourceLimitError as exc:
        return _report(args, "enumerate", params, [], {"error": str(exc)}, "resource_limit")
    dump = [pt.to_json() for pt in pts]
    strata = Counter(x["stratum_rank"] for x in dump)
    summary = {"points": len(dump), "strata": {str(k): strata[k] for k in sorted(strata)}}
    return _report(args, "enumerate", params, [], {"summary": summary, "points": dump})


def cmd_example_d1(args):
    params = {"p": args.p, "samples": args.samples, "seed": args.seed,
              "models": {"even": "Cl^0(V) = M2(F_{p^2})", "embed": "V inside M2(F_{p^2})"}}
    reps = example_d1_all(args.p, args.samples, args.seed)
    checks = []
    for rep in reps:
        for item in rep["items"]:
            checks.append(check("%s/%s" % (rep["check"], item["name"]), True, item["pass"],
                                "matrix identity of the d = 1 example"))
    return _report(args, "example-d1", params, checks, {"details": reps})


def cmd_all(args):
    which = None
    if args.criteria:
        which = [int(x) for x in args.criteria.split(",")]
    results = run_suite(which)
    if not args.timings:
        for r in results:
            r["seconds"] = None
    checks = [check("criterion %d: %s" % (r["criterion"], r["title"]), "pass", r["status"],
                    "acceptance suite") for r in results]
    status = "pass"
    if any(r["status"] == "fail" for r in results):
        status = "fail"
    rep = _report(args, "all", {"criteria": which or sorted(range(1, 10))}, checks,
                  {"criteria": results}, status)
    # an inconclusive stretch target does not fail the suite
    rep["pass"] = status == "pass"
    rep["checks"] = [dict(c, **{"pass": c["actual"] in ("pass", "inconclusive")}) for c in checks]
    return rep


COMMANDS = {"verify-counts": cmd_verify_counts, "chow": cmd_chow, "degree": cmd_degree,
            "enumerate": cmd_enumerate, "example-d1": cmd_example_d1, "all": cmd_all}


def run(argv):
    """Run one command; returns (exit_code, output_text)."""
    code, text, _ = _execute(argv)
    return code, text


def _execute(argv):
    out = None
    try:
        args = build_parser().parse_args(argv)
        if args.format == "csv" and args.command != "chow":
            raise UsageError("--format csv is only available for chow")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        out = args.out
        rep = COMMANDS[args.command](args)
    except (UsageError, ParameterError) as exc:
        return EXIT_ARGS, "error: %s\n" % exc, None
    except ResourceLimitError as exc:
        return EXIT_LIMIT, "error: %s\n" % exc, None
    csv_text = rep.pop("_csv", None)
    text = csv_text if csv_text is not None else json.dumps(_jsonable(rep), indent=2) + "\n"
    if rep["status"] == "resource_limit":
        code = EXIT_LIMIT
    else:
        code = EXIT_OK if rep["pass"] else EXIT_FAIL
    return code, text, out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, text, out = _execute(argv)
    except SystemExit as exc:  # --help / --version
        return exc.code or 0
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        (sys.stderr if code == EXIT_ARGS else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
