"""Command-line surface.

Subcommands: rs-scan (curve CSV), rs-solve, rsb-solve, cw, finite-n,
cascade-check (JSON records).  Outputs are byte-deterministic for a fixed
config and seed: CSV floats use shortest round-trip repr, JSON is emitted
with sorted keys, and every JSON record embeds the quadrature order,
tolerances and seed used.  SKGIBBS_QUAD_ORDER and SKGIBBS_THREADS provide
environment defaults; explicit flags win.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure
(non-convergence or a non-finite integrand).
"""

import argparse
import json
import os
import sys

import numpy as np
import scipy

from . import __version__
from .cascades import cascade_functional_mc, smoothing_identity_check
from .curie_weiss import cw_free_energy_exact, cw_free_energy_limit
from .errors import NonConvergenceError
from .finite_n import bound_check, quenched_estimate
from .kernels import kernel_flavor
from .one_rsb import (OneRsbPoint, criticality_report, parisi_1rsb_solve)
from .params import GridSpec, ModelParams
from .quadrature import hermite_rule
from .rs import (at_stability, derivative_scan, rs_solution,
                 scan_fixed_points)

DEFAULT_ORDER = 61


def _env_int(name, fallback):
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _resolve_order(args):
    if args.order is not None:
        return args.order
    return _env_int("SKGIBBS_QUAD_ORDER", DEFAULT_ORDER)


def _resolve_threads(args):
    if getattr(args, "threads", None) is not None:
        return args.threads
    return _env_int("SKGIBBS_THREADS", 1)


def _meta(order, seed=None, **tolerances):
    meta = {
        "quad_order": int(order),
        "tolerances": {k: float(v) for k, v in tolerances.items()},
        "versions": {
            "skgibbs": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "kernel": kernel_flavor(),
        },
    }
    if seed is not None:
        meta["seed"] = int(seed)
    return meta


def _emit(text, out_path):
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _emit_json(obj, out_path):
    _emit(json.dumps(obj, sort_keys=True, indent=2) + "\n", out_path)


def _fmt(x):
    return repr(float(x))


def cmd_rs_scan(args):
    order = _resolve_order(args)
    rule = hermite_rule(order)
    p = ModelParams(args.beta, args.h)
    grid = GridSpec.parse(args.grid)
    points = derivative_scan(p, grid, rule, base_step=args.fd_step,
                             threads=_resolve_threads(args))
    lines = ["q,F_rs,G_rs,d2F,d2G"]
    for pt in points:
        lines.append(",".join(_fmt(v) for v in
                              (pt.q, pt.f_rs, pt.g_rs, pt.d2_f, pt.d2_g)))
    _emit("\n".join(lines) + "\n", args.out)
    sys.stderr.write(
        f"rs-scan beta={args.beta} h={args.h} quad_order={order} "
        f"fd_step={args.fd_step} points={grid.points}\n")
    return 0


def cmd_rs_solve(args):
    order = _resolve_order(args)
    rule = hermite_rule(order)
    p = ModelParams(args.beta, args.h)
    sol = rs_solution(p, rule)
    stable, margin = at_stability(p, rule)
    out = {
        "beta": args.beta,
        "h": args.h,
        "q_hat": sol.q_hat,
        "value": sol.value,
        "residual": sol.residual,
        "iterations": sol.iterations,
        "at_stable": stable,
        "at_margin": margin,
        "at_criterion": "external-literature sech^4 stability margin",
        "meta": _meta(order, tol=1e-12),
    }
    if args.scan_fixed_points:
        out["fixed_points"] = scan_fixed_points(p, rule)
    _emit_json(out, args.out)
    return 0


def cmd_rsb_solve(args):
    order = _resolve_order(args)
    rule = hermite_rule(order)
    p = ModelParams(args.beta, args.h)
    threads = _resolve_threads(args)
    sol = parisi_1rsb_solve(p, rule, n_grid=args.m1_grid,
                            m1_tol=args.m1_tol, threads=threads)
    rs = rs_solution(p, rule)
    out = {
        "beta": args.beta,
        "h": args.h,
        "m1": sol.m1,
        "q0": sol.q0,
        "q1": sol.q1,
        "value": sol.value,
        "rs_value": rs.value,
        "improvement": rs.value - sol.value,
        "meta": _meta(order, m1_tol=args.m1_tol, fp_tol=1e-10),
    }
    if args.gradient_check:
        out["gradient_check"] = criticality_report(sol.m1, p, rule)
    _emit_json(out, args.out)
    return 0


def cmd_cw(args):
    p = ModelParams(args.beta, args.h)
    lim = cw_free_energy_limit(p)
    exact = []
    for n in args.n:
        v = cw_free_energy_exact(n, p)
        exact.append({"N": n, "value": v, "gap": abs(v - lim.free_energy)})
    out = {
        "beta": args.beta,
        "h": args.h,
        "m_hat": lim.m_hat,
        "free_energy_limit": lim.free_energy,
        "constraint_ok": lim.constraint_ok,
        "exact": exact,
        "meta": _meta(order=0, fixed_point_tol=1e-12),
    }
    _emit_json(out, args.out)
    return 0


def cmd_finite_n(args):
    order = _resolve_order(args)
    rule = hermite_rule(order)
    p = ModelParams(args.beta, args.h)
    threads = _resolve_threads(args)
    est = quenched_estimate(args.n, p, args.samples, args.seed,
                            threads=threads)
    if args.no_bounds:
        report = {
            "n": est.n, "n_samples": est.n_samples,
            "beta": p.beta, "h": p.h,
            "mean": est.mean, "stderr": est.stderr,
        }
    else:
        report = bound_check(est, rule, threads=threads)
    report["meta"] = _meta(order, seed=args.seed, fp_tol=1e-10)
    _emit_json(report, args.out)
    return 0


def cmd_cascade_check(args):
    order = _resolve_order(args)
    if args.kind == "smoothing":
        report = smoothing_identity_check(args.m, args.b, args.h,
                                          args.n_mc, args.k_atoms,
                                          args.seed, quad_order=order)
    else:
        x = OneRsbPoint(q0=args.q0, q1=args.q1, m0=args.m0, m1=args.m1)
        p = ModelParams(args.beta, args.h)
        report = cascade_functional_mc(x, p, args.n_mc, args.k_atoms,
                                       args.seed, quad_order=order)
    report["meta"] = _meta(order, seed=args.seed)
    _emit_json(report, args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="skgibbs",
        description="Variational functionals and exact finite-volume "
                    "checks for the SK spin glass")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, threads=True):
        sp.add_argument("--order", type=int, default=None,
                        help="quadrature order (env SKGIBBS_QUAD_ORDER, "
                             f"default {DEFAULT_ORDER})")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        if threads:
            sp.add_argument("--threads", type=int, default=None,
                            help="worker threads (env SKGIBBS_THREADS, default 1)")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("rs-scan", help="overlap scan of both functionals as CSV")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--grid", default="0.005:0.995:199",
                    help="q_min:q_max:points")
    sp.add_argument("--fd-step", type=float, default=1e-3)
    common(sp)
    sp.set_defaults(func=cmd_rs_scan)

    sp = sub.add_parser("rs-solve", help="replica-symmetric fixed point and value")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--scan-fixed-points", action="store_true",
                    help="bracket every root of q - T(q) on a 1024 grid")
    common(sp, threads=False)
    sp.set_defaults(func=cmd_rs_solve)

    sp = sub.add_parser("rsb-solve", help="minimize the one-step potential over m1")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--m1-grid", type=int, default=64)
    sp.add_argument("--m1-tol", type=float, default=1e-6)
    sp.add_argument("--gradient-check", action="store_true",
                    help="report the finite-difference gradient of the "
                         "full potential at the fixed point")
    common(sp)
    sp.set_defaults(func=cmd_rsb_solve)

    sp = sub.add_parser("cw", help="Curie-Weiss limit vs exact finite-N values")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--n", type=int, nargs="+", default=[500, 2000, 8000])
    common(sp, threads=False)
    sp.set_defaults(func=cmd_cw)

    sp = sub.add_parser("finite-n", help="quenched estimate and bound check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--no-bounds", action="store_true",
                    help="skip the variational bound comparison")
    common(sp, seed=True)
    sp.set_defaults(func=cmd_finite_n)

    sp = sub.add_parser("cascade-check", help="cascade Monte Carlo vs quadrature")
    sp.add_argument("--kind", choices=["smoothing", "functional"],
                    default="smoothing")
    sp.add_argument("--m", type=float, default=0.5, help="smoothing: PD parameter")
    sp.add_argument("--b", type=float, default=0.7, help="smoothing: field scale")
    sp.add_argument("--h", type=float, default=0.2)
    sp.add_argument("--beta", type=float, default=1.0, help="functional only")
    sp.add_argument("--q0", type=float, default=0.1)
    sp.add_argument("--q1", type=float, default=0.4)
    sp.add_argument("--m0", type=float, default=0.0)
    sp.add_argument("--m1", type=float, default=0.6)
    sp.add_argument("--n-mc", type=int, default=20000)
    sp.add_argument("--k-atoms", type=int, default=2048)
    common(sp, seed=True, threads=False)
    sp.set_defaults(func=cmd_cascade_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"invalid configuration: {exc}\n")
        return 2
    except NonConvergenceError as exc:
        sys.stderr.write(f"failed to converge: {exc}\n")
        return 3
    except FloatingPointError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
