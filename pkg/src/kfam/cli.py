"""Command-line front end.

Every subcommand emits a single JSON report on stdout:

    {schema, command, params, results, checks, runtime_ms}

where each entry of checks carries {name, pass, lhs, rhs} so a failed
comparison is diagnosable from the report alone.  Exit status: 0 when all
checks pass, 1 when any check fails, 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .certify import certify_grid
from .constructions import c3, cross_closure, full_star, hilton_milner, t2, t2prime
from .covers import (
    count_hitting_sets,
    covering_number,
    enumerate_minimal_tau2,
    minimal_tau2_subfamily,
    representative_pools,
)
from .errors import DomainError, ParseError, ScaleError
from .families import (
    Family,
    canonical_form,
    diversity,
    elements_of,
    is_intersecting,
    max_degree,
    max_degree_element,
)
from .fileio import parse_family_file, write_family_file
from .formulas import (
    binom,
    f_of_z,
    fprime3,
    hm_size,
    kz_bound,
    size_c3,
    size_f2prime,
    thm1_bound,
)
from .search import lemmin_oracle, max_intersecting_tau
from .shifting import shift_family
from .spread import is_r_spread, peel
from .switching import switch_pipeline

SCHEMA = "kfam-report/1"


def _sets(fam: Family) -> list:
    return [list(t) for t in fam.sets()]


def _check(name: str, passed: bool, lhs, rhs) -> dict:
    return {"name": name, "pass": bool(passed), "lhs": lhs, "rhs": rhs}


def _emit(command: str, params: dict, results, checks: list, t0: float) -> int:
    report = {
        "schema": SCHEMA,
        "command": command,
        "params": params,
        "results": results,
        "checks": checks,
        "runtime_ms": int((time.perf_counter() - t0) * 1000),
    }
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if all(c["pass"] for c in checks) else 1


def _load(path: str, canonical: bool = False) -> Family:
    fam = parse_family_file(path)
    return canonical_form(fam) if canonical else fam


def _cmd_construct(args, t0) -> int:
    which = args.which
    if which == "c3":
        fam = c3(args.n, args.k)
    elif which == "t2":
        fam = t2(args.k, args.n)
    elif which == "t2prime":
        fam = t2prime(args.s, args.n)
    elif which == "star":
        fam = full_star(args.n, args.k)
    elif which == "hm":
        fam = hilton_milner(args.n, args.k)
    else:
        raise DomainError(f"unknown construction {which!r}")
    if args.canonical:
        fam = canonical_form(fam)
    if args.output:
        write_family_file(fam, args.output)
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "command") and v is not None}
    results = {"n": fam.n, "size": len(fam.members), "members": _sets(fam)}
    if args.output:
        results["written"] = args.output
    return _emit("construct", params, results, [], t0)


def _cmd_stats(args, t0) -> int:
    fam = _load(args.family, args.canonical)
    results = {
        "n": fam.n,
        "size": len(fam.members),
        "uniform_k": fam.uniform_k,
        "intersecting": is_intersecting(fam),
        "max_degree": max_degree(fam) if fam.members else 0,
        "max_degree_element": max_degree_element(fam) if fam.members else None,
        "diversity": diversity(fam) if fam.members else 0,
        "members": _sets(fam),
    }
    return _emit("stats", {"family": args.family}, results, [], t0)


def _cmd_tau(args, t0) -> int:
    fam = _load(args.family)
    res = covering_number(fam)
    tau = res.tau
    results = {
        "tau": tau if tau != float("inf") else "inf",
        "witness_cover": list(elements_of(res.witness_cover)) if res.witness_cover is not None else None,
        "explored_nodes": res.explored_nodes,
    }
    checks = []
    if args.expect is not None:
        checks.append(_check("tau-expected", tau == args.expect, tau, args.expect))
    return _emit("tau", {"family": args.family}, results, checks, t0)


def _cmd_hitcount(args, t0) -> int:
    fam = _load(args.family)
    count = count_hitting_sets(fam, args.t)
    return _emit(
        "hitcount",
        {"family": args.family, "t": args.t},
        {"count": count},
        [],
        t0,
    )


def _cmd_minimal_tau2(args, t0) -> int:
    if args.family is not None:
        fam = _load(args.family)
        sub = minimal_tau2_subfamily(fam)
        if sub is None:
            results = {"subfamily": None, "note": "covering number below 2"}
        else:
            pools = representative_pools(sub.subfamily)
            results = {
                "subfamily": _sets(sub.subfamily),
                "representative_pools": [list(p) for p in pools],
            }
        return _emit("minimal-tau2", {"family": args.family}, results, [], t0)
    if args.m is None or args.s is None:
        raise DomainError("need either a family file or both --m and --s")
    classes = enumerate_minimal_tau2(args.m, args.s, intersecting_only=args.intersecting_only)
    results = {
        "m": args.m,
        "s": args.s,
        "class_count": len(classes),
        "classes": [_sets(c) for c in classes],
    }
    checks = [
        _check("member-bound", all(len(c.members) <= args.s + 1 for c in classes),
               max((len(c.members) for c in classes), default=0), args.s + 1)
    ]
    return _emit("minimal-tau2", {"m": args.m, "s": args.s,
                                  "intersecting_only": args.intersecting_only},
                 results, checks, t0)


def _cmd_shift(args, t0) -> int:
    fam = _load(args.family)
    out = shift_family(fam, args.i, args.j)
    if args.output:
        write_family_file(out, args.output)
    results = {
        "size": len(out.members),
        "changed": out != fam,
        "members": _sets(out),
    }
    checks = [_check("size-preserved", len(out.members) == len(fam.members),
                     len(out.members), len(fam.members))]
    return _emit("shift", {"family": args.family, "i": args.i, "j": args.j},
                 results, checks, t0)


def _cmd_switch(args, t0) -> int:
    fam = _load(args.family)
    res = switch_pipeline(fam)
    if args.output and res.converged:
        write_family_file(res.family, args.output)
    results = {
        "status": res.status,
        "passes": res.passes,
        "size_before": len(fam.members),
        "size_after": len(res.family.members),
        "members": _sets(res.family),
    }
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(res.trace, fh, indent=2)
        results["trace_written"] = args.trace
    checks = [
        _check("converged", res.converged, res.status, "converged"),
        _check("no-shrink", len(res.family.members) >= len(fam.members),
               len(res.family.members), len(fam.members)),
    ]
    return _emit("switch", {"family": args.family}, results, checks, t0)


def _cmd_peel(args, t0) -> int:
    fam = _load(args.family)
    trace = peel(fam)
    k = fam.uniform_k
    results = {
        "layer_sizes": {str(i): len(w.members) for i, w in trace.layers.items()},
        "residue_sizes": {str(i): len(r.members) for i, r in trace.residues.items()},
        "reductions": len(trace.reduction_log),
    }
    if args.trace:
        payload = {
            "layers": {str(i): _sets(w) for i, w in trace.layers.items()},
            "residues": {str(i): _sets(r) for i, r in trace.residues.items()},
            "reduction_log": [
                [list(elements_of(old)), list(elements_of(new))]
                for old, new in trace.reduction_log
            ],
        }
        with open(args.trace, "w") as fh:
            json.dump(payload, fh, indent=2)
        results["trace_written"] = args.trace
    checks = [
        _check(f"layer-bound-{i}", len(w.members) <= i**i, len(w.members), i**i)
        for i, w in sorted(trace.layers.items())
    ]
    return _emit("peel", {"family": args.family, "k": k}, results, checks, t0)


def _cmd_spread(args, t0) -> int:
    fam = _load(args.family)
    r = Fraction(args.r)
    res = is_r_spread(fam, r)
    results = {
        "r": str(r),
        "spread": res.ok,
        "violator": list(res.violator) if res.violator is not None else None,
    }
    checks = [_check("r-spread", res.ok, res.lhs, res.rhs)]
    return _emit("spread", {"family": args.family, "r": str(r)}, results, checks, t0)


def _verify_formula(args, t0) -> int:
    name = args.name
    checks = []
    results = {}
    if name == "c3":
        val = size_c3(args.n, args.k)
        enum = len(c3(args.n, args.k).members)
        results = {"formula": val, "enumerated": enum}
        checks.append(_check("c3-size", val == enum, val, enum))
    elif name == "f2prime":
        val = size_f2prime(args.m, args.s, args.k)
        enum = len(cross_closure(t2prime(args.s, args.m), args.k - 1).members)
        results = {"formula": val, "enumerated": enum}
        checks.append(_check("f2prime-size", val == enum, val, enum))
    elif name == "fz":
        val = f_of_z(args.m, args.s, args.k, args.z)
        results = {"formula": val}
        if args.z == 2:
            enum = len(cross_closure(t2prime(args.s, args.m), args.k - 1).members)
            results["enumerated"] = enum
            checks.append(_check("fz-size", val == enum, val, enum))
        elif args.z == 3:
            enum = len(cross_closure(t2(args.s, args.m), args.k - 1).members)
            results["enumerated"] = enum
            checks.append(_check("fz-size", val == enum, val, enum))
    elif name == "fprime3":
        diff = f_of_z(args.m, args.s, args.k, 3) - fprime3(args.m, args.s, args.k)
        gap = binom(args.m - args.s - 3, args.k - 3)
        results = {"fprime3": fprime3(args.m, args.s, args.k), "gap": diff}
        checks.append(_check("fprime3-gap", diff == gap, diff, gap))
    elif name == "hm":
        val = hm_size(args.n, args.k)
        enum = len(hilton_milner(args.n, args.k).members)
        results = {"formula": val, "enumerated": enum}
        checks.append(_check("hm-size", val == enum, val, enum))
        bound = thm1_bound(args.n, args.k, args.k)
        checks.append(_check("hm-bound-match", val == bound, val, bound))
    elif name == "thm1":
        u = args.u if args.u is not None else args.k
        val = thm1_bound(args.n, args.k, u)
        results = {"bound": val, "u": u}
        if u == args.k:
            checks.append(_check("thm1-hm", val == hm_size(args.n, args.k),
                                 val, hm_size(args.n, args.k)))
    elif name == "kz":
        if args.j is not None:
            val = kz_bound(args.n, args.a, args.b, args.j)
            results = {"bound": val, "j": args.j}
            if args.j == args.b:
                ident = binom(args.n, args.a) - binom(args.n - args.b, args.a) + 1
                checks.append(_check("kz-j-eq-b", val == ident, val, ident))
        else:
            val = kz_bound(args.n, args.a, args.b)
            results = {"bound": val}
            checks.append(_check("kz-plain", val == binom(args.n, args.a),
                                 val, binom(args.n, args.a)))
    else:
        raise DomainError(f"unknown formula {name!r}")
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "mode", "command") and v is not None}
    return _emit("verify", params, results, checks, t0)


def _verify_grid(args, t0) -> int:
    ranges = json.loads(args.ranges) if args.ranges else None
    report = certify_grid(args.name, ranges=ranges, jobs=args.jobs)
    payload = report.to_json()
    if not args.full:
        # keep stdout bounded on the large default grids; failures are
        # always listed in full
        payload["points"] = [p for p in payload["points"] if not p.get("pass", True)]
    checks = [_check(f"grid-{args.name}", report.all_pass,
                     len(report.failures()), 0)]
    params = {"name": args.name}
    if args.ranges:
        params["ranges"] = json.loads(args.ranges)
    return _emit("verify", params, payload, checks, t0)


def _cmd_verify(args, t0) -> int:
    if args.mode == "formula":
        return _verify_formula(args, t0)
    return _verify_grid(args, t0)


def _cmd_search(args, t0) -> int:
    if args.mode == "cnkt":
        res = max_intersecting_tau(args.n, args.k, args.t, all_optima=args.all_optima)
        results = {
            "optimum": res.optimum,
            "witnesses": [_sets(w) for w in res.witnesses],
            "nodes_explored": res.nodes_explored,
            "pruned": res.pruned,
        }
        params = {"n": args.n, "k": args.k, "t": args.t}
        return _emit("search", params, results, [], t0)
    best, argmax = lemmin_oracle(args.m, args.s, args.k,
                                 intersecting_only=args.intersecting_only)
    results = {
        "best": best,
        "argmax_classes": [_sets(h) for h in argmax],
    }
    params = {"m": args.m, "s": args.s, "k": args.k,
              "intersecting_only": args.intersecting_only}
    return _emit("search", params, results, [], t0)


def _build_parser() -> argparse.ArgumentParser:
    jobs_default = int(os.environ.get("KFAM_JOBS", "1") or "1")
    top = argparse.ArgumentParser(prog="kfam")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named family")
    p.add_argument("which", choices=["c3", "t2", "t2prime", "star", "hm"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("stats", help="basic invariants of a family file")
    p.add_argument("family")
    p.add_argument("--canonical", action="store_true")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("tau", help="exact covering number")
    p.add_argument("family")
    p.add_argument("--expect", type=int)
    p.set_defaults(func=_cmd_tau)

    p = sub.add_parser("hitcount", help="count t-subsets meeting every member")
    p.add_argument("family")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=_cmd_hitcount)

    p = sub.add_parser("minimal-tau2", help="minimal two-cover subfamily / class census")
    p.add_argument("family", nargs="?")
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--intersecting-only", action="store_true")
    p.set_defaults(func=_cmd_minimal_tau2)

    p = sub.add_parser("shift", help="apply one (i,j)-compression")
    p.add_argument("family")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("switch", help="run the exchange pipeline to a fixed point")
    p.add_argument("family")
    p.add_argument("--trace", metavar="FILE", help="write the exchange trace as JSON")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_switch)

    p = sub.add_parser("peel", help="layer decomposition with reduction")
    p.add_argument("family")
    p.add_argument("--trace", metavar="FILE", help="write layers and reductions as JSON")
    p.set_defaults(func=_cmd_peel)

    p = sub.add_parser("spread", help="check r-spreadness")
    p.add_argument("family")
    p.add_argument("--r", required=True, help="ratio, e.g. 2 or 7/2")
    p.set_defaults(func=_cmd_spread)

    p = sub.add_parser("verify", help="formula identities and inequality grids")
    vs = p.add_subparsers(dest="mode", required=True)
    pf = vs.add_parser("formula")
    pf.add_argument("--name", required=True,
                    choices=["c3", "f2prime", "fz", "fprime3", "hm", "thm1", "kz"])
    pf.add_argument("--n", type=int)
    pf.add_argument("--k", type=int)
    pf.add_argument("--s", type=int)
    pf.add_argument("--m", type=int)
    pf.add_argument("--z", type=int)
    pf.add_argument("--u", type=int)
    pf.add_argument("--a", type=int)
    pf.add_argument("--b", type=int)
    pf.add_argument("--j", type=int)
    pf.set_defaults(func=_cmd_verify)
    pg = vs.add_parser("grid")
    pg.add_argument("--name", required=True)
    pg.add_argument("--ranges", help="JSON map of dimension -> value list")
    pg.add_argument("--jobs", type=int, default=jobs_default)
    pg.add_argument("--full", action="store_true",
                    help="include every grid point in the report")
    pg.set_defaults(func=_cmd_verify)

    p = sub.add_parser("search", help="exhaustive oracles")
    ss = p.add_subparsers(dest="mode", required=True)
    sc = ss.add_parser("cnkt")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--k", type=int, required=True)
    sc.add_argument("--t", type=int, required=True)
    sc.add_argument("--all", "--all-optima", dest="all_optima", action="store_true")
    sc.set_defaults(func=_cmd_search)
    sl = ss.add_parser("lemmin")
    sl.add_argument("--m", type=int, required=True)
    sl.add_argument("--s", type=int, required=True)
    sl.add_argument("--k", type=int, required=True)
    sl.add_argument("--intersecting", "--intersecting-only",
                    dest="intersecting_only", action="store_true")
    sl.set_defaults(func=_cmd_search)

    return top


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    t0 = time.perf_counter()
    try:
        return args.func(args, t0)
    except (DomainError, ScaleError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TypeError, json.JSONDecodeError, KeyError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
