"""Command-line front end: ``dirackit <subcommand> [scenario ...]``.

Scenarios are JSON files or the names of bundled scenarios.  Exit status is
0 when every selected check passes, 1 when any check fails or errors, and 2
when a scenario cannot be loaded or the tool itself breaks.
"""
from __future__ import annotations

import argparse
import json
import sys
import traceback
from pathlib import Path

from . import __version__
from .errors import DiracKitError
from .mutation import run_mutations
from .scenario import (BUNDLED, SUBCOMMAND_KINDS, CheckOutcome, RunOptions, ScenarioError, load_bundled,
                       load_scenario, run_checks)

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _resolve(ref: str):
    path = Path(ref)
    if path.exists() or ref.endswith(".json") or "/" in ref:
        return load_scenario(path), str(path)
    if ref in BUNDLED:
        return load_bundled(ref), f"<bundled {ref}>"
    raise ScenarioError(ref, f"no such file, and not a bundled scenario (bundled: {', '.join(BUNDLED)})")


def _adhoc_check(args, kind):
    if not getattr(args, "functions", None):
        return None
    if not args.structure:
        raise SystemExit("--functions needs --structure")
    check = {"name": f"{kind}_cli", "kind": kind, "structure": args.structure, "functions": list(args.functions)}
    if kind == "admissible":
        check["expect"] = {}  # a query: report the verdicts without judging them
    return check


# text rendering -------------------------------------------------------------

def _table_lines(functions, table, indent="    "):
    header = ["{f,g}"] + list(functions)
    rows = [[f] + list(row) for f, row in zip(functions, table)]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    fmt = lambda r: indent + "  ".join(c.rjust(w) for c, w in zip(r, widths))  # noqa: E731
    return [fmt(header), indent + "  ".join("-" * w for w in widths)] + [fmt(r) for r in rows]


def _outcome_lines(o: CheckOutcome, show_tables: bool):
    mark = {"pass": "PASS", "fail": "FAIL", "error": "ERR "}[o.status]
    out = [f"  [{mark}] {o.name} ({o.kind}, {o.elapsed * 1000:.0f} ms)"]
    if o.status == "error":
        out.append(f"      error: {o.error}")
        return out
    rep = o.report
    if show_tables and o.kind == "poisson":
        out += _table_lines(rep.data["functions"], rep.data["table"], indent="      ")
    if o.status == "fail" or show_tables or o.kind == "admissible":
        out += ["    " + line for line in rep.lines()]
    for key, mm in rep.data.get("mismatched", {}).items():
        out.append(f"      expected {key} = {json.dumps(mm['expected'])}, observed {json.dumps(mm['observed'])}")
    if rep.locus:
        out.append(f"      generic verdict; excluded locus: {', '.join(str(p) for p in rep.locus)}")
    return out


def _summary(outcomes):
    counts = {"pass": 0, "fail": 0, "error": 0}
    for o in outcomes:
        counts[o.status] += 1
    return counts


# commands -------------------------------------------------------------------

def _run_suites(args, kinds, scenarios, extra_check=None, show_tables=False):
    opts = RunOptions(seed=args.seed, max_degree=args.max_degree)
    results, ok = [], True
    for ref in scenarios:
        sc, source = _resolve(ref)
        if extra_check is not None:
            if extra_check["structure"] not in sc.structures:
                raise ScenarioError("--structure", f"unknown structure {extra_check['structure']!r} in {sc.name}")
            sc.checks.append(extra_check)
        only = set(args.only) if args.only else None
        outcomes = run_checks(sc, kinds=kinds, only=only, opts=opts)
        ok = ok and all(o.ok for o in outcomes)
        entry = {"scenario": sc.name, "source": source, "summary": _summary(outcomes), "checks": outcomes}
        if getattr(args, "mutate", False):
            muts = run_mutations(sc, opts)
            entry["mutations"] = muts
            ok = ok and all(m.caught for m in muts)
        results.append(entry)
    if args.format == "json":
        doc = {"ok": ok, "scenarios": [dict(r, checks=[o.to_dict() for o in r["checks"]],
                                            **({"mutations": [vars(m) for m in r["mutations"]]}
                                               if "mutations" in r else {}))
                                       for r in results]}
        print(json.dumps(doc, indent=2))
    else:
        for r in results:
            s = r["summary"]
            print(f"{r['scenario']} [{r['source']}]: {s['pass']} passed, {s['fail']} failed, {s['error']} errors")
            for o in r["checks"]:
                for line in _outcome_lines(o, show_tables):
                    print(line)
            if "mutations" in r:
                muts = r["mutations"]
                caught = sum(m.caught for m in muts)
                print(f"  mutation pass: {caught}/{len(muts)} mutants caught")
                for m in muts:
                    if not m.caught:
                        print(f"    [MISS] {m.where}: {m.description}")
        print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def _validate(args):
    results = []
    for ref in args.scenarios:
        sc, source = _resolve(ref)
        counts = {k: len(getattr(sc, k)) for k in ("structures", "algebras", "actions", "moment_maps")}
        results.append({"scenario": sc.name, "source": source, "checks": len(sc.checks), "objects": counts})
    if args.format == "json":
        print(json.dumps({"ok": True, "scenarios": results}, indent=2))
    else:
        for r in results:
            objs = ", ".join(f"{v} {k.replace('_', ' ')}" for k, v in r["objects"].items() if v)
            print(f"{r['scenario']} [{r['source']}]: valid, {r['checks']} checks" + (f", {objs}" if objs else ""))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--only", action="append", metavar="CHECK", help="run only the named check (repeatable)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized property checks")
    common.add_argument("--max-degree", type=int, default=2, help="degree bound for random polynomials")

    ap = argparse.ArgumentParser(prog="dirackit",
                                 description="Exact checks for twisted Courant brackets, Dirac structures "
                                             "and Dirac actions.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="parse and type-check scenarios only") \
        .add_argument("scenarios", nargs="+")
    helps = {
        "check-dirac": "isotropy, rank and involutivity of structures; bracket identities",
        "admissible": "H-admissibility verdicts for listed functions",
        "poisson-table": "bracket tables and the Poisson algebra suite",
        "leibniz-check": "Leibniz, Lie and Courant algebra checks",
        "action-check": "extended actions and Dirac actions",
        "moment-check": "moment maps, compatibility and the induced Leibniz morphism",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("scenarios", nargs="+", help="scenario file or bundled scenario name")
        if name in ("admissible", "poisson-table"):
            p.add_argument("--structure", help="structure for an extra ad hoc check")
            p.add_argument("--functions", nargs="+", metavar="F", help="function literals for the ad hoc check")
    p = sub.add_parser("paper-suite", parents=[common], help="run every bundled golden scenario")
    p.add_argument("scenarios", nargs="*", help="defaults to all bundled scenarios")
    p.add_argument("--mutate", action="store_true", help="also run the single-coefficient mutation pass")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _validate(args)
        if args.command == "paper-suite":
            return _run_suites(args, None, args.scenarios or list(BUNDLED))
        extra = None
        if args.command == "admissible":
            extra = _adhoc_check(args, "admissible")
        elif args.command == "poisson-table":
            extra = _adhoc_check(args, "poisson")
        return _run_suites(args, SUBCOMMAND_KINDS[args.command], args.scenarios, extra,
                           show_tables=args.command == "poisson-table")
    except (DiracKitError, OSError) as exc:
        print(f"dirackit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        print("dirackit: internal error", file=sys.stderr)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
