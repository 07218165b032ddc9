"""Batch driver: parameter parsing, suite selection, JSON report emission.

Subcommands:

* ``verify``    run verification suites and emit a machine-readable report;
* ``enumerate`` stream points as text lines;
* ``traces``    evaluate both trace engines on seeded random elements;
* ``theorem``   run the trace comparison between the two constructions;
* ``chars``     list the generic characters in deterministic order.

Reports serialize with sorted keys and stable number formatting so runs with
the same configuration and seed are byte-identical apart from the elapsed
fields.  The environment variable ``WILDTRACE_THREADS`` bounds suite-internal
worker threads (the suites are deterministic regardless).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from .algebra import DomainError
from .tower import Tower


def _build_tower(args) -> Tower:
    try:
        return Tower(args.f, args.d, args.n, n_work=args.precision)
    except DomainError as exc:
        raise SystemExit(f"invalid parameters: {exc}")


def _add_params(sub):
    sub.add_argument("--f", type=int, required=True,
                     help="residue degree (q = 2^f)")
    sub.add_argument("--d", type=int, required=True,
                     help="ramification exponent (odd)")
    sub.add_argument("--n", type=int, required=True,
                     help="Weyl parameter (2n > d; level m = 2n+d-1)")
    sub.add_argument("--precision", type=int, default=None,
                     help="working precision override (pi-adic digits)")


def _report_skeleton(args) -> dict:
    return {
        "params": {"f": args.f, "d": args.d, "n": args.n,
                   "m": 2 * args.n + args.d - 1,
                   "seed": getattr(args, "seed", None)},
        "suites": [],
        "pass": True,
    }


def _emit(report: dict, path: str | None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args) -> int:
    from . import suites as su

    tower = _build_tower(args)
    wanted = (list(su.SUITES) if args.suite == "all"
              else [s.strip() for s in args.suite.split(",")])
    for name in wanted:
        if name not in su.SUITES:
            raise SystemExit(f"unknown suite '{name}'; choose from "
                             f"{', '.join(su.SUITES)} or 'all'")
    report = _report_skeleton(args)
    overall = True
    for name in wanted:
        rng = random.Random(args.seed)
        t0 = time.perf_counter()
        kwargs = {}
        if name == "traces":
            kwargs = {"dual_samples": args.samples or 200}
        elif name == "theorem":
            kwargs = {"g_samples": args.samples or 200,
                      "exhaustive": args.exhaustive}
        elif name == "points":
            kwargs = {"verify_cap": args.samples or 1000}
        records = su.SUITES[name](tower, rng, **kwargs)
        ok = su.suite_ok(records)
        overall = overall and ok
        report["suites"].append({
            "name": name,
            "pass": ok,
            "elapsed": round(time.perf_counter() - t0, 3),
            "checks": records,
        })
        status = "ok" if ok else "FAILED"
        print(f"[{name}] {status} "
              f"({len(records)} checks, "
              f"{report['suites'][-1]['elapsed']}s)", file=sys.stderr)
    report["pass"] = overall
    _emit(report, args.json)
    return 0 if overall else 1


def cmd_enumerate(args) -> int:
    from .adlv import enumerate_points

    tower = _build_tower(args)
    hi = tower.n + tower.d + tower.m + 1
    for p in enumerate_points(tower, limit=args.limit):
        a = ",".join(str(c) for c in p.a.window(1, hi))
        c = ",".join(str(c) for c in p.c_unit.key())
        print(f"a={a} C={c}")
    return 0


def cmd_traces(args) -> int:
    from . import sampling as S
    from .chars import generic_characters
    from .traces_geo import (orbit_profile, trace_formula,
                             trace_orbit_oracle, trace_profile)

    tower = _build_tower(args)
    specs = generic_characters(tower)
    if not 0 <= args.theta < len(specs):
        raise SystemExit(f"--theta must be in 0..{len(specs) - 1}")
    spec = specs[args.theta]
    rng = random.Random(args.seed)
    report = _report_skeleton(args)
    report["theta"] = spec.to_text().strip().splitlines()
    rows = []
    agree = True
    for i in range(args.g_samples):
        g = (S.rand_normalized_odd(tower, rng) if i % 2 else
             S.rand_torus_iwahori(tower, rng))
        v1 = trace_formula(tower, spec, profile=trace_profile(tower, g))
        v2 = trace_orbit_oracle(tower, spec,
                                profile=orbit_profile(tower, g))
        rows.append({"index": i, "formula": list(v1.coeffs),
                     "oracle": list(v2.coeffs), "equal": v1 == v2})
        agree = agree and v1 == v2
    report["suites"].append({"name": "traces", "pass": agree,
                             "checks": rows})
    report["pass"] = agree
    _emit(report, args.json)
    return 0 if agree else 1


def cmd_theorem(args) -> int:
    from . import suites as su

    tower = _build_tower(args)
    rng = random.Random(args.seed)
    records = su.suite_theorem(tower, rng,
                               g_samples=args.samples,
                               exhaustive=args.exhaustive)
    report = _report_skeleton(args)
    ok = su.suite_ok(records)
    report["suites"].append({"name": "theorem", "pass": ok,
                             "checks": records})
    report["pass"] = ok
    _emit(report, args.json)
    return 0 if ok else 1


def cmd_chars(args) -> int:
    from .chars import generic_characters

    tower = _build_tower(args)
    specs = generic_characters(tower)
    if args.theta is not None:
        if not 0 <= args.theta < len(specs):
            raise SystemExit(f"--theta must be in 0..{len(specs) - 1}")
        print(specs[args.theta].to_text(), end="")
        return 0
    for i, s in enumerate(specs):
        line = "; ".join(s.to_text().strip().splitlines())
        print(f"{i}: {line}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wildtrace",
        description="Exact verification of wildly ramified supercuspidal "
                    "GL(2) constructions in residue characteristic two.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("verify", help="run verification suites")
    _add_params(p)
    p.add_argument("--suite", default="all",
                   help="comma-separated suites or 'all' "
                        "(tower, points, groups, traces, theorem)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--json", default=None, help="report output path")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("enumerate", help="stream the point set")
    _add_params(p)
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("traces", help="dual-engine trace evaluation")
    _add_params(p)
    p.add_argument("--theta", type=int, default=0,
                   help="character index in deterministic order")
    p.add_argument("--g-samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_traces)

    p = subs.add_parser("theorem", help="compare the two constructions")
    _add_params(p)
    p.add_argument("--exhaustive", action="store_true",
                   help="exhaustive normalized element grid")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_theorem)

    p = subs.add_parser("chars", help="list generic characters")
    _add_params(p)
    p.add_argument("--theta", type=int, default=None)
    p.set_defaults(func=cmd_chars)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
