"""Command-line front end: eigen, sweep, oracle, verify, biharmonic."""

import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from . import biharmonic as bh
from . import eigensolve as es
from . import oracle
from . import verify
from .geometry import (
    WEIGHTED_GRADIENT,
    WEIGHTED_L2,
    AnnulusGeometry,
    problem_kind,
    threshold_log_bound1,
    threshold_problem1,
)
from .modes import biquad_d
from .secular import BracketError

SCHEMA = 1
EXIT_HYPOTHESIS = 2


class HypothesisError(Exception):
    pass


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (np.floating,)):
        return _clean(float(x))
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def run_record(command, parameters, results):
    return {
        "schema": SCHEMA,
        "command": command,
        "parameters": _clean(parameters),
        "results": _clean(results),
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "version": __version__,
    }


def _geometry(args, d):
    if args.R is not None:
        return AnnulusGeometry.from_R(args.R, d=d)
    if args.a is None or args.b is None:
        raise SystemExit("give either --R or both --a and --b")
    return AnnulusGeometry(args.a, args.b, d)


def solve_point(problem, m, d, n, g, force=False):
    """One eigen solve; n is an int or "min".  Returns a list of result dicts."""
    problem = problem_kind(problem)
    R = g.R
    if d == 2:
        if problem == WEIGHTED_L2:
            if n == "min":
                if R < threshold_problem1(m) and not force:
                    raise HypothesisError(f"R={R} below pi*sqrt(2)/sqrt(2m-1)={threshold_problem1(m)}")
                mm = es.lambda_min_d2(m, g)
                return [dict(mm.best.as_dict(), argmin=mm.best.mode, ordered=True)]
            if R < threshold_log_bound1(m, n) and not force:
                raise HypothesisError(f"R={R} below proven bracket validity {threshold_log_bound1(m, n)}")
            return [es.lambda_mn(m, n, g, force=force).as_dict()]
        if n == "min":
            mm = es.mu_min_d2(m, g)
            out = [dict(mm.best.as_dict(), argmin=mm.best.mode, ordered=mm.ordered)]
            if not mm.ordered:
                for k, r in es.mu_candidates_d2(m, g).items():
                    out.append(dict(r.as_dict(), candidate=k))
            return out
        return [es.mu_mn(m, n, g).as_dict()]
    if problem == WEIGHTED_L2:
        if n == "min":
            mm = es.lambda_min_dimd(d, g)
            return [dict(mm.best.as_dict(), argmin=mm.best.mode, ordered=True)]
        A0 = biquad_d(d, n)[0]
        if R * math.sqrt(A0) < 5.0 and not force:
            raise HypothesisError(f"R={R} below proven bracket validity {5.0 / math.sqrt(A0)}")
        return [es.lambda_n_dimd(d, n, g, force=force).as_dict()]
    if n == "min":
        mm = es.mu_min_dimd(d, g)
        return [dict(mm.best.as_dict(), argmin=mm.best.mode, ordered=True)]
    return [es.mu_n_dimd(d, n, g).as_dict()]


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _emit(args, record, rows, columns):
    if args.json:
        print(json.dumps(record, sort_keys=True, allow_nan=False))
        return
    if args.csv:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
        sys.stdout.write(buf.getvalue())
        return
    for r in rows:
        print("  ".join(f"{k}={_fmt(r.get(k))}" for k in columns if k in r))


EIGEN_COLS = ["problem", "d", "m", "mode", "R", "value", "theta_star", "lower_bound", "upper_bound",
              "regime", "bracket_proven", "argmin", "candidate", "notes"]


def _parse_n(s):
    return "min" if s == "min" else int(s)


def cmd_eigen(args):
    g = _geometry(args, args.d)
    try:
        rows = solve_point(args.problem, args.m, args.d, args.n, g, args.force)
    except (HypothesisError, BracketError) as e:
        print(f"hypothesis violation: {e} (use --force)", file=sys.stderr)
        return EXIT_HYPOTHESIS
    params = {"problem": problem_kind(args.problem), "m": args.m, "d": args.d, "n": args.n,
              "a": g.a, "b": g.b, "R": g.R, "force": args.force}
    _emit(args, run_record("eigen", params, rows), rows, EIGEN_COLS)
    return 0


def _sweep_values(args):
    if args.values:
        return [float(v) for v in args.values.split(",")]
    if args.axis == "R":
        return [float(v) for v in np.linspace(args.start, args.stop, args.num)]
    return list(range(int(args.start), int(args.stop) + 1))


def cmd_sweep(args):
    vals = _sweep_values(args)

    def point(v):
        m, d, n, R = args.m, args.d, args.n, args.R if args.R is not None else 10.0
        if args.axis == "R":
            R = float(v)
        elif args.axis == "n":
            n = int(v)
        elif args.axis == "m":
            m = float(v)
        elif args.axis == "d":
            d = int(v)
        g = AnnulusGeometry.from_R(R, d=d)
        try:
            r = solve_point(args.problem, m, d, n, g, args.force)[0]
            r["error"] = ""
        except Exception as e:  # recorded per row
            r = {"problem": problem_kind(args.problem), "d": d, "m": m, "mode": n, "R": R, "error": str(e)}
        r["axis_value"] = v
        return r

    if args.threads > 1:
        with ThreadPoolExecutor(args.threads) as ex:
            rows = list(ex.map(point, vals))
    else:
        rows = [point(v) for v in vals]
    params = {"axis": args.axis, "values": vals, "problem": problem_kind(args.problem), "m": args.m,
              "d": args.d, "n": args.n}
    cols = ["axis_value"] + EIGEN_COLS + ["error"]
    if not args.json and not args.csv:
        args.csv = True
    _emit(args, run_record("sweep", params, rows), rows, cols)
    return 0


def cmd_oracle(args):
    g = _geometry(args, args.d)
    problem = problem_kind(args.problem)
    md = args.m if args.d == 2 else args.d
    n = args.n
    try:
        sec = solve_point(problem, args.m, args.d, n, g, args.force)[0]
    except (HypothesisError, BracketError) as e:
        print(f"hypothesis violation: {e} (use --force)", file=sys.stderr)
        return EXIT_HYPOTHESIS
    orc = oracle.oracle_eigenvalue(problem, md, n, g.R, N=args.grid, d=args.d)
    row = {"problem": problem, "d": args.d, "m": args.m, "mode": n, "R": g.R, "N": args.grid,
           "secular": sec["value"], "oracle": orc, "gap": abs(sec["value"] - orc) / sec["value"]}
    rows = [row]
    if args.convergence:
        exact = es.mu0_dim4_exact(g) if (args.d == 4 and n == 0 and problem == WEIGHTED_GRADIENT) else sec["value"]
        cs = oracle.convergence_study(problem, md, n, g.R, [250, 500, 1000, 2000], d=args.d, exact=exact)
        for i, N in enumerate(cs["N"]):
            rows.append({"N": N, "oracle": cs["value"][i], "error": cs["error"][i],
                         "order": cs["order"][i - 1] if i else None})
    cols = ["problem", "d", "m", "mode", "R", "N", "secular", "oracle", "gap", "error", "order"]
    _emit(args, run_record("oracle", vars_params(args, g), rows), rows, cols)
    return 0


def vars_params(args, g):
    p = {k: v for k, v in vars(args).items() if k not in ("func", "json", "csv")}
    p.update(a=g.a, b=g.b, R=g.R)
    return p


def _kv(items):
    out = {}
    for it in items or []:
        k, v = it.split("=", 1)
        out[k] = int(v) if v.lstrip("-").isdigit() else float(v)
    return out


def cmd_verify(args):
    p = _kv(args.param)
    ineq = verify.REGISTRY[args.name]
    d = int(p.get("d", 2))
    g = AnnulusGeometry.from_R(args.R if args.R is not None else 10.0, d=d)
    try:
        rep = verify.check_inequality(args.name, g, p, trials=args.trials, seed=args.seed,
                                      force=args.force, threads=args.threads)
    except ValueError as e:
        print(f"hypothesis violation: {e} (use --force)", file=sys.stderr)
        return EXIT_HYPOTHESIS
    rows = [rep]
    if args.tightness and ineq.tight is not None:
        rows.append(verify.tightness(args.name, g.R, p))
    cols = ["name", "R", "trials", "violations", "min_ratio", "effective_constant", "hypothesis",
            "ratio", "expected", "flag"]
    _emit(args, run_record("verify", {"name": args.name, "params": p, "R": g.R, "trials": args.trials,
                                      "seed": args.seed, "force": args.force}, rows), rows, cols)
    return 0


def cmd_biharmonic(args):
    g = _geometry(args, 2)
    psi = bh.load_coeffs(args.coeffs) if args.coeffs else bh.BiharmonicFun(a_coeffs={1: 1.0})
    rows = []
    for side in ("outer", "inner"):
        cf = bh.weighted_norms(psi, g, args.gamma, side)
        qd = bh.quadrature_norms(psi, g, args.gamma, side) if args.quadrature else {}
        for k, v in cf.items():
            r = {"side": side, "integral": k, "closed_form": v}
            if qd:
                r["quadrature"] = qd[k]
                r["rel_diff"] = abs(v - qd[k]) / abs(qd[k]) if qd[k] else abs(v)
            rows.append(r)
    rep = bh.check_interpolation(psi, g, args.beta, args.gamma, force=True)
    rows.append(dict(rep, integral="interpolation"))
    if not rep["hypothesis"] and not args.force:
        print("hypothesis violation: conformal class below the five-term threshold (use --force)",
              file=sys.stderr)
        _emit(args, run_record("biharmonic", vars_params(args, g), rows), rows,
              ["side", "integral", "closed_form", "quadrature", "rel_diff", "lhs", "gamma_effective"])
        return EXIT_HYPOTHESIS
    _emit(args, run_record("biharmonic", vars_params(args, g), rows), rows,
          ["side", "integral", "closed_form", "quadrature", "rel_diff", "lhs", "gamma_effective", "hypothesis"])
    return 0


def _common(p, geometry=True):
    p.add_argument("--json", action="store_true", help="emit a JSON run record")
    p.add_argument("--csv", action="store_true", help="emit CSV rows with a header")
    p.add_argument("--force", action="store_true", help="run outside proven hypotheses (results flagged)")
    p.add_argument("--threads", type=int, default=1)
    if geometry:
        p.add_argument("--R", type=float, help="conformal class log(b/a), with a = 1")
        p.add_argument("--a", type=float)
        p.add_argument("--b", type=float)


def _problem_args(p):
    p.add_argument("--problem", default="I", help="I (weighted L2) or II (weighted gradient)")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--d", type=int, default=2)


def build_parser():
    ap = argparse.ArgumentParser(prog="annulus-eigen", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="first eigenvalue of one mode or the minimum over modes")
    _problem_args(p)
    p.add_argument("--n", type=_parse_n, default=0, help="mode index or 'min'")
    _common(p)
    p.set_defaults(func=cmd_eigen)

    p = sub.add_parser("sweep", help="eigenvalues along one parameter axis (CSV)")
    _problem_args(p)
    p.add_argument("--n", type=_parse_n, default=0)
    p.add_argument("--axis", choices=["R", "n", "m", "d"], default="R")
    p.add_argument("--start", type=float, default=5.0)
    p.add_argument("--stop", type=float, default=200.0)
    p.add_argument("--num", type=int, default=20)
    p.add_argument("--values", help="comma separated axis values")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="finite-difference check of the secular eigenvalue")
    _problem_args(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--grid", type=int, default=2000)
    p.add_argument("--convergence", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="fuzz an inequality")
    p.add_argument("--name", required=True, choices=sorted(verify.REGISTRY))
    p.add_argument("--param", action="append", help="key=value, repeatable")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tightness", action="store_true")
    p.add_argument("--R", type=float)
    _common(p, geometry=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("biharmonic", help="closed-form integrals and interpolation report")
    p.add_argument("--coeffs", help="coefficient file")
    p.add_argument("--gamma", type=float, default=0.75)
    p.add_argument("--beta", type=float, default=0.75)
    p.add_argument("--quadrature", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_biharmonic)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
