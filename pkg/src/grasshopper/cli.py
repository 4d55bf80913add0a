"""Command-line front end.

Every subcommand writes one JSON report to stdout and a short human summary
to stderr.  Exit status: 0 when every check passed, 1 on a failed check
(table mismatch, theorem violation, oracle disagreement), 2 on bad input,
3 when a resource cap fired.

Report schema (version 1)::

    {
      "schema": "grasshopper-report", "schema_version": 1,
      "artifact_version": str, "backend": "cython" | "python",
      "command": str, "inputs": {...}, "inputs_digest": sha256 hex,
      "seed": int | null, "ok": bool, "results": {...},
      "timings": {"total_s": float}
    }

Everything except ``timings`` is a pure function of (command, inputs, seed).
Coefficient values are decimal strings.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__, coeffs, kernels, limits, modular, olympiad, oracle, route, tables
from .errors import CapacityError, ConsistencyError, InputError, TheoremViolation

SCHEMA_VERSION = 1


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def make_report(command: str, inputs: dict, results: dict, ok: bool, seed=None, elapsed: float = 0.0) -> dict:
    inputs = _jsonable(inputs)
    digest = hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()
    return {
        "schema": "grasshopper-report",
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "backend": kernels.BACKEND,
        "command": command,
        "inputs": inputs,
        "inputs_digest": digest,
        "seed": seed,
        "ok": ok,
        "results": _jsonable(results),
        "timings": {"total_s": round(elapsed, 6)},
    }


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_ck(args) -> tuple[dict, dict, bool]:
    inputs = {"k": args.k, "mode": args.mode}
    if args.mode == "exact":
        value = coeffs.ck(args.k)
        res = {"value": str(value), "approx": tables.sci(value), "note": "exact recurrence"}
    elif args.mode == "eval":
        value = oracle.ck_via_evaluation(args.k, seed=args.seed, workers=args.workers)
        res = {"value": str(value), "approx": tables.sci(value), "note": "evaluation oracle"}
        inputs["seed"] = args.seed
    else:
        if args.prime is None:
            raise InputError("--mode mod needs --prime")
        inputs["prime"] = args.prime
        value = modular.ck_mod(args.k, args.prime)
        res = {"value": str(value), "modulus": args.prime, "note": "residue"}
    ok = True
    if args.mode != "mod" and args.k in tables.CK_EXACT:
        res["reference"] = str(tables.CK_EXACT[args.k])
        ok = value == tables.CK_EXACT[args.k]
    elif args.mode != "mod" and args.k in tables.CK_APPROX:
        res["reference"] = tables.CK_APPROX[args.k]
        ok = res["approx"] == tables.CK_APPROX[args.k]
    res["match"] = ok if "reference" in res else None
    _say(f"c_{args.k} = {res['value']}" + (f" (mod {args.prime})" if args.mode == "mod" else f"  ~ {res['approx']}"))
    return inputs, res, ok


def cmd_alpha(args):
    spec = coeffs.PolySpec(args.n, args.u, args.v)
    value = coeffs.alpha(spec, args.parts, modulus=args.prime or 0)
    inputs = {"n": args.n, "u": args.u, "v": args.v, "parts": args.parts, "prime": args.prime}
    _say(f"alpha^({args.n},{args.u},{args.v})_{tuple(args.parts)} = {value}")
    return inputs, {"value": str(value), "degree": spec.degree}, True


def _load_doc(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read instance {path}: {exc}") from None


def cmd_solve(args):
    doc = _load_doc(args.instance)
    inputs = {"instance": doc, "olympiad": args.olympiad, "exhaustive_check": args.exhaustive_check}
    if args.olympiad:
        inst = olympiad.instance_from_dict(doc)
        r = olympiad.positive_safe_order(inst)
        ok = olympiad.route_avoids(r, inst.mines)
        res = {"algorithm": "largest-jump induction", "verdict": "found",
               "route": list(r.order), "prefix_sums": list(r.prefix_sums), "valid": ok}
        _say(f"found: {' '.join(str(b) for b in r.order)}")
        return inputs, res, ok
    jumps, mines = route.instance_from_dict(doc)
    rep = route.verify_theorem_instance(jumps, mines)
    res = rep.to_dict()
    res.pop("elapsed")
    ok = not rep.violation
    if args.exhaustive_check:
        brute = route.exhaustive_safe_order(jumps, mines) is not None
        res["exhaustive_found"] = brute
        if brute != rep.found:
            raise ConsistencyError("subset DP and exhaustive enumeration disagree")
    _say(f"{res['verdict']}" + (f": {' '.join(map(str, rep.route))}" if rep.found else "")
         + f"  (|M|={len(mines)}, bound={rep.bound})")
    return inputs, res, ok


def cmd_tables(args):
    t2 = tables.table2(args.max_k)
    t1 = tables.table1(args.max_n, args.sharp_n)
    fac = tables.factorization_rows()
    ok = (all(r["match"] is not False for r in t2)
          and all(r["blocked"] and r.get("sharp", True) for r in t1)
          and all(r["verified"] for r in fac))
    for r in t2:
        _say(f"c_{r['k']:<3} {r['approx']:>10}  ref {r['reference']}  {'ok' if r['match'] else ('--' if r['match'] is None else 'MISMATCH')}")
    _say(f"extremal instances: {sum(r['blocked'] for r in t1)}/{len(t1)} blocked; factorizations {sum(r['verified'] for r in fac)}/{len(fac)} verified")
    for r in t2:
        r["value"] = str(r["value"])
    inputs = {"max_k": args.max_k, "max_n": args.max_n, "sharp_n": args.sharp_n}
    return inputs, {"table2": t2, "table1": t1, "factorizations": fac}, ok


def cmd_campaign(args):
    n_min, n_max = (args.n, args.n) if args.n else (args.n_min, args.n_max)
    mode = "nonzero" if args.nonzero else ("zero" if args.zero else "both")
    cfg = route.CampaignConfig(n_min=n_min, n_max=n_max, lo=args.lo, hi=args.hi, trials=args.trials,
                               zero_mode=mode, seed=args.seed, probe_above=not args.no_probe,
                               workers=args.workers)
    inputs = {"n_min": n_min, "n_max": n_max, "lo": args.lo, "hi": args.hi, "trials": args.trials,
              "zero_mode": mode, "mines_at_bound": True, "probe_above": cfg.probe_above}
    try:
        stats = route.random_campaign(cfg)
    except TheoremViolation as exc:
        _say(f"THEOREM VIOLATION: {exc} {json.dumps(exc.instance)}")
        return inputs, {"violations": 1, "offending_instance": exc.instance}, False
    _say(f"{stats.trials} trials, {stats.found} found, {stats.violations} violations; "
         f"bound+1 blocked {stats.blocked_above}/{stats.probed_above}")
    return inputs, stats.to_dict(), stats.violations == 0


def cmd_modscan(args):
    if args.primes:
        primes = [modular.PrimeModulus(p).p for p in args.primes]
    else:
        primes = modular.primes_up_to(args.bound)
    rows = modular.scan_table(args.k, primes)
    exact = coeffs.ck(args.k)
    ok = all(r["residue"] == exact % r["prime"] for r in rows)
    divisors = [r["prime"] for r in rows if r["divides"]]
    _say(f"c_{args.k}: {len(divisors)} of {len(rows)} scanned primes divide: {divisors}")
    inputs = {"k": args.k, "bound": None if args.primes else args.bound, "primes": args.primes}
    return inputs, {"rows": rows, "divisors": divisors, "consistent": ok}, ok


def _parse_factors(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for item in text.replace("*", ",").split(","):
        item = item.strip()
        if not item:
            continue
        p, _, e = item.partition("^")
        try:
            out.append((int(p), int(e) if e else 1))
        except ValueError:
            raise InputError(f"bad factor {item!r}; use p or p^e") from None
    return tuple(out)


def cmd_factor_verify(args):
    if args.factors:
        claims = [modular.FactorizationClaim(args.k, _parse_factors(args.factors))]
    elif args.k in modular.PUBLISHED_FACTORIZATIONS:
        claims = [modular.PUBLISHED_FACTORIZATIONS[args.k]]
    elif args.k is None:
        claims = list(modular.PUBLISHED_FACTORIZATIONS.values())
    else:
        part = modular.partial_factorization(args.k, args.bound)
        _say(f"c_{args.k} partial: {part['factors']} cofactor {part['cofactor']}")
        res = {k: (str(v) if k in ("value", "cofactor") else v) for k, v in part.items()}
        return {"k": args.k, "bound": args.bound}, {"partial": res}, True
    rows = [{"k": c.k, "factors": [[p, e] for p, e in c.factors], "verified": modular.verify_factorization(c)}
            for c in claims]
    for r in rows:
        _say(f"c_{r['k']}: {'verified' if r['verified'] else 'FALSE'}")
    ok = all(r["verified"] for r in rows)
    return {"k": args.k, "factors": args.factors}, {"claims": rows}, ok


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grasshopper", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    caps = p.add_argument_group("caps (override environment variables)")
    caps.add_argument("--memo-cap", type=int, help="max memo/table entries [GRASSHOPPER_MEMO_ENTRIES]")
    caps.add_argument("--partition-cap", type=int, help="max partitions per table [GRASSHOPPER_PARTITION_COUNT]")
    caps.add_argument("--factorial-cap", type=int, help="max n for n! sums [GRASSHOPPER_FACTORIAL_N]")
    caps.add_argument("--subset-cap", type=int, help="max jumps for subset DP [GRASSHOPPER_SUBSET_N]")
    caps.add_argument("--time-limit", type=float, help="seconds per coefficient query [GRASSHOPPER_TIME_LIMIT]")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ck", help="compute c_k")
    s.add_argument("k", type=int)
    s.add_argument("--mode", choices=["exact", "eval", "mod"], default="exact")
    s.add_argument("--prime", type=int)
    s.add_argument("--seed", type=int, default=0, help="evaluation point seed (eval mode)")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_ck)

    s = sub.add_parser("alpha", help="one coefficient alpha^(n,u,v)_d")
    s.add_argument("n", type=int)
    s.add_argument("u", type=int)
    s.add_argument("v", type=int)
    s.add_argument("parts", type=int, nargs="+")
    s.add_argument("--prime", type=int)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("solve", help="solve an instance document ('-' for stdin)")
    s.add_argument("instance")
    s.add_argument("--exhaustive-check", action="store_true", help="also enumerate all n! orders (n <= 8)")
    s.add_argument("--olympiad", action="store_true", help="positive jumps, at most n-1 mines")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("tables", help="regenerate the reference tables")
    s.add_argument("--max-k", type=int, default=10)
    s.add_argument("--max-n", type=int, default=20)
    s.add_argument("--sharp-n", type=int, default=16)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("campaign", help="random instances at the theorem bound")
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, help="fix n")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--lo", type=int, default=-20)
    s.add_argument("--hi", type=int, default=20)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--nonzero", action="store_true", help="no zero jumps (bound floor((n+1)/2))")
    g.add_argument("--zero", action="store_true", help="always include a zero jump (bound floor(n/2))")
    s.add_argument("--mines-at-bound", action="store_true", help="mine count equals the bound (always on)")
    s.add_argument("--no-probe", action="store_true", help="skip the bound+1 probe")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_campaign)

    s = sub.add_parser("modscan", help="c_k residues over primes")
    s.add_argument("k", type=int)
    s.add_argument("--bound", type=int, default=100)
    s.add_argument("--primes", type=int, nargs="+")
    s.set_defaults(func=cmd_modscan)

    s = sub.add_parser("factor-verify", help="check factorizations of c_k")
    s.add_argument("k", type=int, nargs="?")
    s.add_argument("--factors", help="e.g. '2^5,3^3,7,97'")
    s.add_argument("--bound", type=int, default=10**5, help="trial-division bound for partial factorization")
    s.set_defaults(func=cmd_factor_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    lim = limits.from_env().with_overrides(
        memo_entries=args.memo_cap, partition_count=args.partition_cap,
        factorial_n=args.factorial_cap, subset_n=args.subset_cap, time_limit=args.time_limit)
    old = limits.set_limits(lim)
    seeded = args.command == "campaign" or (args.command == "ck" and args.mode == "eval")
    seed = args.seed if seeded else None
    echo = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    t0 = time.perf_counter()
    code = 0
    try:
        inputs, results, ok = args.func(args)
        code = 0 if ok else 1
    except InputError as exc:
        inputs, results, ok, code = echo, {"error": str(exc), "kind": "input"}, False, 2
        _say(f"error: {exc}")
    except CapacityError as exc:
        inputs, results, ok, code = echo, {"error": str(exc), "kind": "capacity", "cap": exc.cap,
                                         "limit": exc.limit}, False, 3
        _say(f"capacity: {exc} (raise with the matching flag or environment variable)")
    except ConsistencyError as exc:
        inputs, results, ok, code = echo, {"error": str(exc), "kind": "consistency"}, False, 1
        _say(f"consistency failure: {exc}")
    finally:
        limits.set_limits(old)
    report = make_report(args.command, inputs, results, ok, seed, time.perf_counter() - t0)
    json.dump(report, sys.stdout, indent=None if os.environ.get("GRASSHOPPER_COMPACT") else 2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
