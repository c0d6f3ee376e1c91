"""Command-line front end.

Every command prints one JSON report on stdout (``surface search`` prints JSON
lines) and a short summary on stderr.  Exit status: 0 when every check passes,
1 when a check fails, 2 on usage errors.  The transcribed data are
fingerprinted before any command runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, data

SCHEMA = "cong17-report/1"


# ---------------------------------------------------------------------------
# dataset canaries
# ---------------------------------------------------------------------------


def dataset_checks() -> list[dict]:
    """Structural fingerprints plus the exact Table 1 identities for F_1 and F_3."""
    from .surfaces import _exact_row, table1_rows

    out = [{"check": name, "ok": bool(ok)} for name, ok in data.fingerprints()]
    for row in table1_rows():
        if row.exact:
            out.append({"check": f"table 1 exact row m={row.m}", "ok": _exact_row(row).ok})
    return out


# ---------------------------------------------------------------------------
# commands; each returns (parameters, results, ok)
# ---------------------------------------------------------------------------


def _curve(args):
    from .elliptic import EllipticCurveQ, parse_curve

    if args.name:
        return EllipticCurveQ(data.CURVES[args.name])
    return parse_curve(args.curve)


def cmd_ec(args):
    from .arith.ntheory import factor, primes_up_to
    from .elliptic import TraceTable

    E = _curve(args)
    Em = E.minimal_model()
    disc = Em.discriminant
    fac = factor(abs(disc))
    table = TraceTable(Em)
    traces = {str(p): table.ap(p) for p in primes_up_to(args.bound - 1)}
    res = {
        "minimal_model": [str(a) for a in Em.a],
        "conductor": Em.conductor(),
        "discriminant": str(disc),
        "discriminant_factorization": {"sign": 1 if disc > 0 else -1, "factors": {str(p): e for p, e in sorted(fac.items())}},
        "traces": traces,
        "checks": [],
    }
    if args.name:
        N = data.CONDUCTORS[args.name]
        sign, facs = data.DISCRIMINANTS[args.name]
        res["checks"].append({"check": "conductor", "ok": Em.conductor() == N})
        res["checks"].append({"check": "discriminant", "ok": (1 if disc > 0 else -1) == sign and dict(fac) == facs})
        printed = dict(zip(data.TRACE_PRIMES, data.TRACES[args.name]))
        same = all(table.ap(p) == a for p, a in printed.items())
        res["checks"].append({"check": f"traces l < {max(data.TRACE_PRIMES) + 1}", "ok": same})
    ok = all(c["ok"] for c in res["checks"])
    return {"curve": args.name or args.curve, "bound": args.bound}, res, ok


def _pair(args):
    from .elliptic import EllipticCurveQ, parse_curve

    if args.pair:
        a, b = data.PAIRS[args.pair]
        return EllipticCurveQ(data.CURVES[a]), EllipticCurveQ(data.CURVES[b])
    if not args.curves or len(args.curves) != 2:
        raise SystemExit("error: give --pair NAME or --curves E E'")
    return parse_curve(args.curves[0]), parse_curve(args.curves[1])


def cmd_congruence(args):
    from .congruence import check_congruence

    E, E2 = _pair(args)
    rep = check_congruence(E, E2, args.p, args.cap, full=args.full, workers=args.threads)
    res = rep.to_dict()
    if rep.status == "verified-to-bound":
        res["warnings"].append(f"cap {rep.cap} is below the Sturm bound {rep.bound}; not a proof")
    params = {"pair": args.pair or args.curves, "p": args.p, "cap": args.cap, "full": args.full}
    return params, res, rep.status != "failed"


def cmd_symplectic(args):
    from .congruence import symplectic_type

    E, E2 = _pair(args)
    v = symplectic_type(E, E2, args.p)
    return {"pair": args.pair or args.curves, "p": args.p}, v.to_dict(), v.verdict != "indeterminate"


def cmd_genus2(args):
    from .elliptic import EllipticCurveQ
    from .genus2 import curve_C, morphism_data, split_check, verify_morphism_mod_p

    E1, E2 = (EllipticCurveQ(data.CURVES[n]) for n in data.PAIRS["prime17-symplectic"])
    rep = split_check(curve_C(), E1, E2, args.bound)
    md = morphism_data()
    morph = {f"phi_{i}": verify_morphism_mod_p(md, i, E) for i, E in ((1, E1), (2, E2))}
    morph["corrupted h_1 rejected"] = not verify_morphism_mod_p(md.with_h_bumped(1, 0), 1, E1)
    res = {"split": rep.to_dict(), "morphisms_mod_101": morph}
    return {"bound": args.bound}, res, rep.passed and all(morph.values())


def cmd_surface(args):
    from gmpy2 import mpq

    from . import surfaces

    if args.action == "eval":
        T, x, y = mpq(args.T), mpq(args.x), mpq(args.y)
        w = surfaces.eval_weierstrass(T, x, y)
        v = surfaces.eval_double_cover(args.k, T, x, y)
        z = surfaces.rational_sqrt(v)
        res = {"on_surface": w == 0, "residual": str(w), "F": str(v), "square": z is not None,
               "z": None if z is None else str(z)}
        return {"k": args.k, "T": args.T, "x": args.x, "y": args.y}, res, w == 0
    if args.action == "table1":
        rows = [r for r in surfaces.table1_rows() if args.k is None or r.k == args.k]
        res = [r.to_dict() for r in surfaces.verify_table1(rows)]
        return {"k": args.k}, res, all(r["ok"] for r in res)
    if args.action == "table2":
        res = [surfaces.verify_table2(r) for r in surfaces.table2_rows() if args.k is None or r[0] == args.k]
        return {"k": args.k}, res, all(r["ok"] for r in res)
    k = args.k or 1
    pts = surfaces.search_points(k, args.bt, args.bx, workers=args.threads)
    res = [p.to_dict() for p in pts]
    return {"k": k, "bt": args.bt, "bx": args.bx}, res, all(p.cls != "NEW" for p in pts)


def cmd_invariants(args):
    from . import klein

    if args.mod:
        res = klein.verify_invariants_mod_p(args.mod, args.generator, trials=args.trials, seed=args.seed)
    else:
        res = klein.verify_invariants(args.generator)
        rep = klein.special_point_report()
        res.append({"identity": "c4^3 / D^10 = -1728/2^7 at the special point",
                    "ok": rep["ratio_ok"] and rep["Q_zero"] and rep["dF_zero"]})
    if args.bi:
        from .biinv import verify_bi_invariants

        res += verify_bi_invariants(full=args.full)
    params = {"generator": args.generator, "mod": args.mod, "bi": args.bi, "full": args.full}
    return params, res, all(r["ok"] for r in res)


def cmd_bimap(args):
    from .biinv import verify_birational_map

    rep = verify_birational_map(args.case, args.p, args.trials, args.seed, workers=args.threads)
    params = {"case": args.case, "p": args.p, "trials": args.trials, "seed": args.seed}
    return params, rep.to_dict(), rep.ok and rep.nonempty > 0


def cmd_suite(args):
    """Module acceptance checks in sequence; --quick keeps the ones that take about a second."""
    from .congruence import symplectic_type
    from .elliptic import EllipticCurveQ

    results = []

    def record(name, fn):
        t0 = time.perf_counter()
        ok = bool(fn())
        results.append({"check": name, "ok": ok, "seconds": round(time.perf_counter() - t0, 3) if args.timing else None})

    def ec_ok(name):
        ns = argparse.Namespace(name=name, curve=None, bound=50)
        return cmd_ec(ns)[2]

    for name in data.CURVES:
        record(f"ec {name}: conductor, discriminant, traces", lambda n=name: ec_ok(n))
    curves = {n: EllipticCurveQ(a) for n, a in data.CURVES.items()}

    def symp(pair, verdict, residue):
        a, b = data.PAIRS[pair]
        v = symplectic_type(curves[a], curves[b], 17)
        return v.verdict == verdict and v.residue == residue

    record("symplectic verdict (E1, E2)", lambda: symp("prime17-symplectic", "symplectic", 16))
    record("symplectic verdict (E1', E2')", lambda: symp("prime17-antisymplectic", "anti-symplectic", 11))
    record("table 2", lambda: cmd_surface(argparse.Namespace(action="table2", k=None))[2])
    record("table 1 exact rows", lambda: all(c["ok"] for c in dataset_checks() if c["check"].startswith("table 1")))
    if not args.quick:
        from .congruence import check_congruence

        def cong(pair, **kw):
            a, b = data.PAIRS[pair]
            return check_congruence(curves[a], curves[b], 17, workers=args.threads, **kw).status

        record("congruence (E1', E2') to the Sturm bound", lambda: cong("prime17-antisymplectic", full=True) == "full-verified")
        record("congruence (E1, E2) to 1e5", lambda: cong("prime17-symplectic", cap=10**5) == "verified-to-bound")
        record("genus 2", lambda: cmd_genus2(argparse.Namespace(bound=199))[2])
        record("table 1", lambda: cmd_surface(argparse.Namespace(action="table1", k=None))[2])
        record("invariants", lambda: cmd_invariants(argparse.Namespace(
            generator="both", mod=None, bi=True, full=False, trials=5, seed=0))[2])
        for case in (1, 3):
            record(f"birational map case {case}", lambda c=case: cmd_bimap(argparse.Namespace(
                case=c, p=10007, trials=100, seed=0, threads=args.threads))[2])
        for k in (1, 3):
            record(f"search k={k}", lambda kk=k: cmd_surface(argparse.Namespace(
                action="search", k=kk, bt=20, bx=50, threads=args.threads))[2])
    for r in results:
        if r["seconds"] is None:
            del r["seconds"]
    return {"quick": args.quick}, results, all(r["ok"] for r in results)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _default_threads() -> int:
    from .congruence import default_workers

    return default_workers()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cong17", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ec", help="minimal model, conductor, discriminant and traces of a curve")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--name", choices=sorted(data.CURVES))
    g.add_argument("--curve", help="[a1,a2,a3,a4,a6]")
    p.add_argument("--bound", type=int, default=50, help="traces for primes below this")
    p.set_defaults(fn=cmd_ec)

    for name, fn, help_ in (
        ("congruence", cmd_congruence, "compare traces mod p up to a cap or the Sturm bound"),
        ("symplectic", cmd_symplectic, "symplectic type from multiplicative primes"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--pair", choices=sorted(data.PAIRS))
        p.add_argument("--curves", nargs=2, metavar="E")
        p.add_argument("--p", type=int, default=17)
        if name == "congruence":
            p.add_argument("--cap", type=int)
            p.add_argument("--full", action="store_true", help="check all primes below the Sturm bound")
            p.add_argument("--threads", type=int, default=_default_threads())
        p.set_defaults(fn=fn)

    p = sub.add_parser("genus2", help="split Jacobian counts and the maps mod 101")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--bound", type=int, default=199)
    p.set_defaults(fn=cmd_genus2)

    p = sub.add_parser("surface", help="the K3 fibration and the double covers")
    p.add_argument("action", choices=["eval", "table1", "table2", "search"])
    p.add_argument("--k", type=int, choices=[1, 3])
    p.add_argument("--T")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--bt", type=int, default=20)
    p.add_argument("--bx", type=int, default=50)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("invariants", help="invariance identities for X(17)")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--generator", choices=["m2", "m17", "both"], default="both")
    p.add_argument("--mod", type=int, help="check at random points over F_p (p = 1 mod 17) instead")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bi", action="store_true", help="add the bi-invariant identities")
    p.add_argument("--full", action="store_true", help="with --bi: build and check the degree (3, 3) bases")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("bimap", help="randomized check of the maps to the fibration")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--case", type=int, choices=[1, 3], required=True)
    p.add_argument("--p", type=int, default=10007)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_bimap)

    p = sub.add_parser("suite", help="run the verification suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=cmd_suite)
    return ap


def _validate(args, parser):
    if args.command == "surface" and args.action == "eval":
        if args.k is None or None in (args.T, args.x, args.y):
            parser.error("surface eval needs --k, --T, --x and --y")
    if args.command == "surface" and args.action == "search" and args.k is None:
        parser.error("surface search needs --k")
    if args.command in ("congruence", "symplectic") and not args.pair and not args.curves:
        parser.error("give --pair NAME or --curves E E'")
    if args.command == "invariants" and args.mod is not None and args.mod % 17 != 1:
        parser.error("--mod needs a prime p = 1 mod 17")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    canaries = dataset_checks()
    bad = [c["check"] for c in canaries if not c["ok"]]
    if bad:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "ok": False, "dataset_failures": bad}))
        print(f"dataset fingerprints failed: {bad}", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    try:
        params, results, ok = args.fn(args)
    except (ValueError, ArithmeticError) as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "ok": False, "error": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - t0
    if args.command == "surface" and args.action == "search":
        for r in results:
            print(json.dumps(r))
        summary = {"schema": SCHEMA, "command": "surface search", "parameters": params,
                   "points": len(results), "new": sum(r["class"] == "NEW" for r in results), "ok": ok}
        if args.timing:
            summary["seconds"] = round(elapsed, 3)
        print(json.dumps(summary))
    else:
        report = {"schema": SCHEMA, "version": __version__, "command": args.command,
                  "parameters": params, "results": results, "ok": ok}
        if args.timing:
            report["seconds"] = round(elapsed, 3)
        print(json.dumps(report, indent=1, default=str))
    print(f"{args.command}: {'ok' if ok else 'FAILED'} ({elapsed:.2f} s)", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
