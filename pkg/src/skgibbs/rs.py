"""Replica-symmetric functionals for the SK model.

With g ~ N(0,1) and T(q) = E[tanh^2(h + beta sqrt(q) g)]:

    F_rs(q) = E log cosh(h + beta sqrt(q) g) + (beta^2/4) (1 - q)^2
    G_rs(q) = E log cosh(h + beta sqrt(q) g)
              + (beta^2/4) (1 - T(q)) (1 + T(q) - 2 q)

G_rs is the first-order expansion of the Gibbs potential in the overlap
order parameter; the two differ by the exact square

    F_rs(q) - G_rs(q) = (beta^2/4) (q - T(q))^2,

so they touch precisely on fixed points q = T(q).  The fixed-point solver,
the stationarity value, second-derivative scans (central differences with
one Richardson refinement), and a de Almeida-Thouless stability margin
(1 - beta^2 E[sech^4] at the fixed point; standard literature criterion)
live here.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .logspace import log_cosh
from .params import GridSpec, ModelParams
from .quadrature import HermiteRule, gauss_expect, hermite_rule

DEFAULT_ORDER = 61


@dataclass(frozen=True)
class RsPoint:
    """One scan sample: overlap, T(q), both functionals, derivatives."""

    q: float
    t_of_q: float
    f_rs: float
    g_rs: float
    d1_f: float
    d2_f: float
    d2_g: float


@dataclass(frozen=True)
class RsSolution:
    q_hat: float
    value: float
    residual: float
    at_stable: bool
    iterations: int


def _field(q, p, rule):
    return p.h + p.beta * np.sqrt(q) * rule.nodes


def t_overlap(q: float, p: ModelParams, rule: HermiteRule) -> float:
    """T(q) = E[tanh^2(h + beta sqrt(q) g)]; maps [0,1] into [0,1]."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0,1], got {q}")
    t = np.tanh(_field(q, p, rule))
    return float(rule.weights @ (t * t))


def f_rs(q: float, p: ModelParams, rule: HermiteRule) -> float:
    """Replica-symmetric free-energy functional."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0,1], got {q}")
    e = float(rule.weights @ log_cosh(_field(q, p, rule)))
    return e + 0.25 * p.beta**2 * (1.0 - q) ** 2


def g_rs(q: float, p: ModelParams, rule: HermiteRule) -> float:
    """First-order Gibbs-potential expansion in the overlap."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must be in [0,1], got {q}")
    e = float(rule.weights @ log_cosh(_field(q, p, rule)))
    t = t_overlap(q, p, rule)
    return e + 0.25 * p.beta**2 * (1.0 - t) * (1.0 + t - 2.0 * q)


def d1_f_rs(q: float, p: ModelParams, rule: HermiteRule) -> float:
    """Analytic dF_rs/dq = (beta^2/2)(q - T(q)) (Gaussian integration by
    parts on the E log cosh term)."""
    return 0.5 * p.beta**2 * (q - t_overlap(q, p, rule))


def rs_fixed_point(p: ModelParams, rule: HermiteRule, tol: float = 1e-12,
                   max_iter: int = 10000) -> RsSolution:
    """Solve q = T(q) by damped iteration, with a bisection fallback.

    Iterates q <- (1-lam) q + lam T(q), lam = 0.5, from
    q0 = max(tanh^2 h, 1e-3).  If max_iter is exhausted, falls back to
    bisection on q - T(q) over [0,1]; raises NonConvergenceError (carrying
    the last iterate) only if that bracket fails too.
    """
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    lam = 0.5
    q = max(np.tanh(p.h) ** 2, 1e-3)
    iterations = 0
    residual = np.inf
    for iterations in range(1, max_iter + 1):
        tq = t_overlap(q, p, rule)
        residual = abs(q - tq)
        if residual < tol:
            break
        q = (1.0 - lam) * q + lam * tq
    else:
        q, residual, extra = _bisect_fixed_point(p, rule, tol)
        if q is None:
            raise NonConvergenceError(
                "damped iteration stalled and bisection found no bracket",
                last_iterate=q, residual=residual, iterations=iterations)
        iterations += extra

    value = f_rs(float(q), p, rule)
    margin = _at_margin(q, p, rule)
    return RsSolution(q_hat=float(q), value=float(value),
                      residual=float(residual),
                      at_stable=bool(margin > 0), iterations=iterations)


def _bisect_fixed_point(p, rule, tol):
    def psi(q):
        return q - t_overlap(q, p, rule)

    lo, hi = 0.0, 1.0
    if psi(lo) > 0 or psi(hi) < 0:
        return None, np.inf, 0
    it = 0
    for it in range(1, 201):
        mid = 0.5 * (lo + hi)
        r = psi(mid)
        if abs(r) < tol:
            return mid, abs(r), it
        if r < 0:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    return mid, abs(psi(mid)), it


def _at_margin(q_hat, p, rule):
    sech4 = np.exp(-4.0 * log_cosh(_field(q_hat, p, rule)))
    return 1.0 - p.beta**2 * float(rule.weights @ sech4)


def at_stability(p: ModelParams, rule: HermiteRule):
    """(stable?, margin) with margin = 1 - beta^2 E[sech^4(h+beta sqrt(q) g)]
    at the fixed point; positive margin means the replica-symmetric solution
    is locally stable (standard literature criterion, not derived here)."""
    sol = rs_fixed_point(p, rule)
    margin = _at_margin(sol.q_hat, p, rule)
    return bool(margin > 0), float(margin)


def rs_solution(p: ModelParams, rule: HermiteRule) -> RsSolution:
    """Fixed point plus its value; cross-checks F_rs(q_hat) = G_rs(q_hat)."""
    sol = rs_fixed_point(p, rule)
    gv = g_rs(sol.q_hat, p, rule)
    if abs(sol.value - gv) >= 1e-9:
        raise FloatingPointError(
            f"F_rs and G_rs disagree at the fixed point: "
            f"{sol.value!r} vs {gv!r} (residual {sol.residual:.2e})")
    return sol


def _second_derivative(func, q, base_step):
    f0 = func(q)

    def stencil(s):
        return (func(q + s) - 2.0 * f0 + func(q - s)) / (s * s)

    coarse = stencil(base_step)
    fine = stencil(0.5 * base_step)
    return (4.0 * fine - coarse) / 3.0  # one Richardson refinement


def derivative_scan(p: ModelParams, grid: GridSpec, rule: HermiteRule,
                    which: str = "both", base_step: float = 1e-3,
                    threads: int = 1):
    """Functional values and derivatives on a q-grid.

    d1 of F_rs is analytic; second derivatives use central differences with
    one Richardson refinement (default base step 1e-3).  `which` restricts
    the (more expensive) second-derivative columns to one functional:
    'F_rs', 'G_rs', or 'both'; skipped entries are NaN.  Grid points are
    independent, so the scan parallelizes; output order always follows the
    grid.
    """
    if which not in ("F_rs", "G_rs", "both"):
        raise ValueError(f"which must be 'F_rs', 'G_rs' or 'both', got {which!r}")
    qs = grid.values()
    if qs[0] - base_step <= 0.0 or qs[-1] + base_step >= 1.0:
        raise ValueError(
            f"grid [{grid.q_min}, {grid.q_max}] (step {base_step}) touches "
            "the endpoints; second-derivative stencils degenerate there")

    def one_point(q):
        q = float(q)
        tv = t_overlap(q, p, rule)
        fv = f_rs(q, p, rule)
        gv = g_rs(q, p, rule)
        d2f = (_second_derivative(lambda x: f_rs(x, p, rule), q, base_step)
               if which in ("F_rs", "both") else np.nan)
        d2g = (_second_derivative(lambda x: g_rs(x, p, rule), q, base_step)
               if which in ("G_rs", "both") else np.nan)
        return RsPoint(q=q, t_of_q=tv, f_rs=fv, g_rs=gv,
                       d1_f=0.5 * p.beta**2 * (q - tv), d2_f=d2f, d2_g=d2g)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(one_point, qs))
    return [one_point(q) for q in qs]


def scan_fixed_points(p: ModelParams, rule: HermiteRule, points: int = 1024):
    """All roots of q - T(q) on [0,1]: sign changes on a uniform grid are
    bracketed and bisected.  Used by the CLI's --scan-fixed-points mode."""
    qs = np.linspace(0.0, 1.0, points)
    vals = np.array([q - t_overlap(q, p, rule) for q in qs])
    roots = [float(q) for q, v in zip(qs, vals) if v == 0.0]
    for i in np.where(np.diff(np.sign(vals)) != 0)[0]:
        lo, hi = qs[i], qs[i + 1]
        flo = vals[i]
        for _ in range(100):
            mid = 0.5 * (lo + hi)
            fm = mid - t_overlap(mid, p, rule)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        roots.append(float(0.5 * (lo + hi)))
    return sorted(set(np.round(roots, 14)))


def default_rule(order: int = DEFAULT_ORDER) -> HermiteRule:
    return hermite_rule(order)
