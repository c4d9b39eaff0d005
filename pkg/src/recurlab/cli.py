"""Command-line front end. Every report carries the config, the package version and the precision."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np

from . import __version__, dynamics, identities, triangles, words
from ._precision import DEFAULT_DPS
from .polyalgebra import logcat, psi, roots
from .polyalgebra.equidist import power_frac_probe
from .polyalgebra.poly import parse_poly
from .rulecore import ConvergenceError, characteristic_polynomial, generate_terms, parse_rule, ratio_limit

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- argument helpers ---------------------------------------------------------------------------------


def int_range(text: str) -> range:
    """'lo:hi' (inclusive), 'lo:hi:step' or a single integer."""
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from None
    if len(nums) == 1:
        return range(nums[0], nums[0] + 1)
    if len(nums) in (2, 3):
        step = nums[2] if len(nums) == 3 else 1
        if step <= 0 or nums[1] < nums[0]:
            raise argparse.ArgumentTypeError(f"empty integer range {text!r}")
        return range(nums[0], nums[1] + 1, step)
    raise argparse.ArgumentTypeError(f"bad integer range {text!r}")


def float_range(text: str) -> list[float]:
    """'lo:hi:step' (hi included when on the grid), or a comma list."""
    try:
        if ":" in text:
            lo, hi, step = (float(p) for p in text.split(":"))
            if step <= 0 or hi < lo:
                raise ValueError
            count = int(round((hi - lo) / step)) + 1
            return [float(v) for v in np.linspace(lo, lo + (count - 1) * step, count)]
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad real range {text!r}") from None


def int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None


def fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def real_value(text: str, dps: int):
    """A decimal, or phi:k (the ]1,2[ root of x^(k+1) - x^k - 1), or silver:k."""
    if text.startswith("phi:"):
        k = int(text[4:])
        return lambda d: psi.phi(k, d)
    if text.startswith("silver:"):
        k = int(text[7:])
        return lambda d: psi.SilverMean.of(k, d).value
    return text


# --- output --------------------------------------------------------------------------------------------


def jsonable(x: Any):
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 25)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, range)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    return x


def _config_echo(args: argparse.Namespace) -> dict:
    skip = {"handler", "output", "format"}
    return {k: jsonable(v) for k, v in sorted(vars(args).items()) if k not in skip}


def emit(args, result: Any, header: list[str], rows: list[list]) -> str:
    meta = {"tool": "recurlab", "version": __version__, "dps": args.dps, "config": _config_echo(args)}
    if args.format == "json":
        text = json.dumps({**meta, "result": jsonable(result)}, indent=1) + "\n"
    else:
        import csv
        import io

        buf = io.StringIO()
        buf.write(f"# {json.dumps(meta, sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows([[jsonable(v) for v in r] for r in rows])
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# --- subcommands ----------------------------------------------------------------------------------------


def cmd_seq(args):
    rule = parse_rule(args.rule)
    seq = generate_terms(rule, args.init, args.count, args.start)
    res = {"rule": rule.render(), "start_index": seq.start_index, "terms": list(seq.terms)}
    if args.ratio:
        res["ratio_limit"] = ratio_limit(rule, args.init, dps=args.dps)
    rows = [[seq.start_index + i, t] for i, t in enumerate(seq.terms)]
    return res, ["n", "u"], rows


def cmd_roots(args):
    if (args.poly is None) == (args.rule is None):
        raise UsageError("give exactly one of --poly or --rule")
    p = parse_poly(args.poly) if args.poly else characteristic_polynomial(parse_rule(args.rule))
    rs = roots.real_roots(p, args.lo, args.hi, dps=args.dps)
    res = {"polynomial": str(p), "real_roots": rs, "count": len(rs)}
    return res, ["index", "root"], [[i, r] for i, r in enumerate(rs, start=1)]


def cmd_psi(args):
    rows, res = [], []
    for k in args.k:
        for m in args.m:
            p = psi.build_psi(k, m)
            rep = psi.psi_real_roots(k, m, dps=args.dps)
            mem = psi.verify_root_membership(p, k, args.dps)
            entry = {"k": k, "m": m, "psi": str(p), "real_roots": rep.roots, "labels": rep.found,
                     "predicted": rep.expected, "matches_claim": rep.matches_claim, "note": rep.note,
                     "phi_residual": mem.residual}
            res.append(entry)
            rows.append([k, m, str(p), ";".join(rep.found), ";".join(rep.expected), int(rep.matches_claim)])
    return res, ["k", "m", "psi", "found", "predicted", "matches_claim"], rows


def cmd_logcat(args):
    res = logcat.verify_log_catalog(args.dps)
    if args.root_claims:
        res = {"catalog": res, "root_claims": logcat.verify_root_claims(args.dps)}
        rows = [[r["identity_id"], r["expected"], r["observed"], r["residual"], int(r["pass"])] for r in res["catalog"]]
    else:
        rows = [[r["identity_id"], r["expected"], r["observed"], r["residual"], int(r["pass"])] for r in res]
    return res, ["identity", "expected", "observed", "residual", "pass"], rows


def _index_ranges(args) -> dict:
    return {name: getattr(args, name) for name in ("n", "m", "r", "a", "b", "c") if getattr(args, name) is not None}


def cmd_identities(args):
    ranges = _index_ranges(args)
    if args.action == "verify":
        cases = identities.verify_identity(args.id, args.j or range(1, 6), ranges, args.form)
        fails = sum(not c.passed for c in cases)
        res = {"id": args.id, "form": args.form, "cases": len(cases), "failures": fails,
               "matrix": [c.to_dict() for c in cases]}
        rows = [[c.id, c.j, ";".join(f"{k}={v}" for k, v in c.bindings), int(c.passed)] for c in cases]
        return res, ["identity", "j", "indices", "pass"], rows
    # one more j than verify so single-index identities reach the minimum grid size
    corr = identities.discover_correction(args.id, args.j or range(1, 7), ranges)
    d = corr.to_dict()
    return d, ["id", "status", "cases", "printed", "corrected", "edit"], [
        [d["id"], d["status"], d["cases"], d["printed"], d["corrected"], d["edit"]]]


def cmd_triangles(args):
    kind = args.kind
    if kind == "delannoy":
        sq = triangles.DelannoySquare(args.rows, args.cols)
        rows = [[i, j, v] for i, r in enumerate(sq.table) for j, v in enumerate(r)]
        return {"table": sq.table}, ["i", "j", "value"], rows
    if kind == "asymmetric":
        t = triangles.asymmetric_triangle(args.rows)
        rows = [[r, k, v] for r, row in enumerate(t.rows) for k, v in enumerate(row)]
        return {"rows": t.rows, "shallow_sums": t.shallow_sums}, ["row", "k", "value"], rows
    if kind == "diagonal":
        s = triangles.delannoy_diagonal_sums("shallow", args.p, args.count)
        return {"p": args.p, "sums": s}, ["n", "sum"], [[n, v] for n, v in enumerate(s)]
    if kind == "ptrib":
        t = triangles.p_tribonacci(args.p, args.count)
        lt = triangles.p_lucas_trib(args.p, args.count)
        res = {"p": args.p, "T": t, "LT": lt, "limit": triangles.p_trib_limit(args.p, args.dps),
               "lt_offset": triangles.lt_offset_report(args.p)}
        return res, ["n", "T", "LT"], [[n, a, b] for n, (a, b) in enumerate(zip(t, lt), start=1)]
    rep = triangles.eta_suite(args.count, args.dps)
    return rep.to_dict(), ["n", "V", "exact"], [[n, v, e] for n, (v, e) in enumerate(zip(rep.V, rep.exact), start=1)]


def _params(args) -> dynamics.ClassifyParams:
    return dynamics.ClassifyParams(args.transient, args.window, args.tol, args.p_max, args.collapse)


def cmd_dynamics(args):
    lags = tuple(args.lags)
    if len(lags) != 2:
        raise UsageError("--lags takes two integers i,j")
    act = args.action
    if act == "orbit":
        prm = _params(args)
        reps = [dynamics.classify_orbit(dynamics.LagMap(a, lags), prm.transient, prm.window, prm.tol, prm.p_max,
                                        prm.collapse) for a in args.a]
        rows = [[a, r.kind, r.period, r.distinct] for a, r in zip(args.a, reps)]
        return [{"a": a, **r.to_dict()} for a, r in zip(args.a, reps)], list(dynamics.SCAN_HEADER), rows
    if act == "scan":
        a = args.a
        if len(a) < 2:
            raise UsageError("scan needs a range lo:hi:step")
        _, reps, trans = dynamics.bifurcation_scan(lags, a[0], a[-1], len(a), args.refine, params=_params(args),
                                                   workers=args.workers)
        rows = [[x, r.kind, r.period, r.distinct] for x, r in zip(a, reps)]
        res = {"transitions": [t.to_dict() for t in trans], "grid": [dict(zip(dynamics.SCAN_HEADER, r)) for r in rows]}
        return res, list(dynamics.SCAN_HEADER), rows
    if act == "collapse":
        prof = dynamics.collapse_profile(lags, args.a, N_max=args.n_max, threshold=args.collapse)
        rows = [[e.a, e.transient_length if e.transient_length is not None else ""] for e in prof]
        return [e.to_dict() for e in prof], ["a", "transient_length"], rows
    pts = dynamics.cascade_points(lags, args.first_period, args.count, args.lo, args.hi)
    deltas = dynamics.feigenbaum_estimate(pts) if len(pts) >= 4 else []
    rows = [[m, x, deltas[m - 2] if 2 <= m < len(pts) else ""] for m, x in enumerate(pts, start=1)]
    return {"points": pts, "deltas": deltas}, ["m", "a", "delta"], rows


def _word_system(args) -> words.WordSystem:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            return words.WordSystem.from_config(json.load(fh))
    if not args.init or not args.lags:
        raise UsageError("give --config or both --init and --lags")
    return words.WordSystem(tuple(args.init.split(",")), tuple(args.lags), tuple(args.order) if args.order else None)


def cmd_words(args):
    if args.action == "permA":
        perm = words.algorithm_A_permutation(args.n)
        return {"n": args.n, "permutation": perm}, ["n", "permutation"], [[args.n, " ".join(map(str, perm))]]
    ws = _word_system(args)
    if args.action == "gen":
        ws.extend(args.count)
        out = [{"p": p, "length": ws.length(p), "letters": ws.letter_counts(p), "word": ws.word_or_none(p)}
               for p in range(1, args.count + 1)]
        rows = [[d["p"], d["length"], d["word"] if d["word"] is not None else ""] for d in out]
        return out, ["p", "length", "word"], rows
    table = words.kgram_frequencies(ws, args.k, args.p_max)
    res = {"k": args.k, "p_max": args.p_max, "counts": {p: dict(sorted(table.counts[p].items())) for p in table.counts}}
    if args.k == 1 and args.p_max >= ws.n + 5:
        res["limits"] = words.letter_frequency_limits(ws, args.p_max, args.dps).to_dict()
    rows = [[p, g, table.counts[p][g], str(f)] for p in sorted(table.counts) for g, f in table.frequencies(p).items()]
    return res, ["p", "gram", "count", "frequency"], rows


def cmd_equi(args):
    x = real_value(args.x, args.dps)
    y = real_value(args.y, args.dps) if args.y else None
    rep = power_frac_probe(x, y, args.N, args.epsilon)
    res = {"N": rep.N, "dps": rep.dps, "discrepancy": rep.discrepancy, "first_close": rep.first_close,
           "fracs": rep.fracs, "fracs_y": rep.fracs_y}
    rows = [[n, f, rep.fracs_y[n - 1] if rep.fracs_y else ""] for n, f in enumerate(rep.fracs, start=1)]
    return res, ["n", "frac_x", "frac_y"], rows


# --- parser ------------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--dps", type=int, default=DEFAULT_DPS, help="working decimal digits (env RECURLAB_DPS)")

    ap = argparse.ArgumentParser(prog="recurlab", description="Additive recurrences and related experiments.")
    ap.add_argument("--version", action="version", version=f"recurlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", parents=[common], help="generate terms of a recurrence")
    s.add_argument("--rule", required=True)
    s.add_argument("--init", type=fraction_list, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--start", type=int, default=1)
    s.add_argument("--ratio", action="store_true", help="also estimate the ratio limit")
    s.set_defaults(handler=cmd_seq)

    s = sub.add_parser("roots", parents=[common], help="real roots of a polynomial or of a rule's characteristic polynomial")
    s.add_argument("--poly")
    s.add_argument("--rule")
    s.add_argument("--lo", type=Fraction)
    s.add_argument("--hi", type=Fraction)
    s.set_defaults(handler=cmd_roots)

    s = sub.add_parser("psi", parents=[common], help="Psi_{k,m} members and their real roots")
    s.add_argument("--k", type=int_range, default=range(1, 7))
    s.add_argument("--m", type=int_range, default=range(1, 9))
    s.set_defaults(handler=cmd_psi)

    s = sub.add_parser("logcat", parents=[common], help="verify the logarithm catalog")
    s.add_argument("--root-claims", action="store_true", help="also check the shared-root polynomial list")
    s.set_defaults(handler=cmd_logcat)

    s = sub.add_parser("identities", parents=[common], help="j-Fibonacci identity harness")
    s.add_argument("action", choices=("verify", "correct"))
    s.add_argument("--id", required=True)
    s.add_argument("--form", choices=("reference", "printed"), default="reference")
    s.add_argument("--j", type=int_range, help="default 1:5 for verify, 1:6 for correct")
    for name in ("n", "m", "r", "a", "b", "c"):
        s.add_argument(f"--{name}", type=int_range)
    s.set_defaults(handler=cmd_identities)

    s = sub.add_parser("triangles", parents=[common], help="triangle and square generators")
    s.add_argument("kind", choices=("delannoy", "asymmetric", "diagonal", "ptrib", "eta"))
    s.add_argument("--rows", type=int, default=6)
    s.add_argument("--cols", type=int)
    s.add_argument("--p", type=int, default=0)
    s.add_argument("--count", type=int, default=17)
    s.set_defaults(handler=cmd_triangles)

    s = sub.add_parser("dynamics", parents=[common], help="lagged two-argument logistic iteration")
    s.add_argument("action", choices=("orbit", "scan", "collapse", "cascade"))
    s.add_argument("--lags", type=int_list, default=[3, 1])
    s.add_argument("--a", type=float_range, default=[13.0])
    s.add_argument("--refine", type=float, default=1e-4)
    s.add_argument("--transient", type=int, default=5000)
    s.add_argument("--window", type=int, default=4096)
    s.add_argument("--tol", type=float, default=1e-7)
    s.add_argument("--p-max", type=int, default=256)
    s.add_argument("--collapse", type=float, default=1e-10)
    s.add_argument("--n-max", type=int, default=1_000_000)
    s.add_argument("--workers", type=int)
    s.add_argument("--first-period", type=int, default=8)
    s.add_argument("--count", type=int, default=6)
    s.add_argument("--lo", type=float, default=13.2)
    s.add_argument("--hi", type=float, default=13.47)
    s.set_defaults(handler=cmd_dynamics)

    s = sub.add_parser("words", parents=[common], help="concatenation systems")
    s.add_argument("action", choices=("gen", "freq", "permA"))
    s.add_argument("--config", help="JSON file {alphabet, init_words, lags, order?}")
    s.add_argument("--init", help="comma-separated initial words")
    s.add_argument("--lags", type=int_list)
    s.add_argument("--order", type=int_list, help="lags in concatenation order")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--p-max", type=int, default=30)
    s.add_argument("--n", type=int, default=3)
    s.set_defaults(handler=cmd_words)

    s = sub.add_parser("equi", parents=[common], help="fractional parts of powers")
    s.add_argument("--x", required=True, help="decimal, phi:k or silver:k")
    s.add_argument("--y")
    s.add_argument("--N", type=int, default=50)
    s.add_argument("--epsilon", type=float, default=1e-3)
    s.set_defaults(handler=cmd_equi)
    return ap


DOMAIN_ERRORS = (ValueError, ArithmeticError, ConvergenceError, RuntimeError, OSError, KeyError)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        result, header, rows = args.handler(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"recurlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        print(f"recurlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    emit(args, result, header, rows)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
