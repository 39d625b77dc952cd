"""One-step replica-symmetry-breaking machinery.

Everything is built from the two-level Gaussian field

    a(g0, g1) = h + beta sqrt(q0) g0 + beta sqrt(q1 - q0) g1,
    f  = log cosh(a),
    f0(g0) = (1/m1) log E1[ exp(m1 f) ],

with E0/E1 the outer/inner standard Gaussians.  The inner tilted measure
nu1 reweights g1 by cosh(a)^{m1}; the outer measure nu0 reweights g0 by
exp(m0 f0) and collapses to the plain Gaussian as m0 -> 0 (the regime in
which the fixed-point equations are solved); nu = nu0 (x) nu1.

The two-level potential is

    Phi0 = (1/m0) log E0[ exp(m0 f0) ]     (m0 -> 0:  E0[f0]),

and the first-order expansion of the corresponding Gibbs potential reads,
with A = nu0[(nu1[Tanh])^2], B = nu[Tanh^2], C = nu[Tanh]:

    G_1rsb = Phi0 - (b2/2) q0 (m0 - m1) A - (b2/2) q1
             + (b2/2) q1 (1 - m1) B + b2/4
             - (b2/4) m0 C^4 - (b2/4) (m1 - m0) A^2 - (b2/4) (1 - m1) B^2

(b2 = beta^2; the quartic mixing term is taken as m0 * (nu[Tanh])^4, the
reading consistent with the corresponding first-derivative expression --
it vanishes in the m0 = 0 solution regime either way).  At m0 = 0 the
stationarity conditions become the pair of fixed-point equations

    q0 = E0[ (nu1[Tanh])^2 ],      q1 = nu[ Tanh^2 ],

and plugging a solution into G_1rsb collapses it to

    E0[f0] + (b2/4) (1 - 2 q1 + m1 q0^2 + (1 - m1) q1^2),

whose minimum over m1 in (0, 1] is the one-step Parisi value.  All inner
expectations run in log-space (tilts span many decades).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .logspace import log_cosh
from .params import ModelParams
from .quadrature import HermiteRule, hermite_rule

_GOLDEN = 0.5 * (np.sqrt(5.0) - 1.0)  # inverse golden ratio for line search


@dataclass(frozen=True)
class OneRsbPoint:
    """Overlap/weight parameters on the simplices
    0 <= q0 <= q1 <= 1 and 0 <= m0 <= m1 <= 1."""

    q0: float
    q1: float
    m0: float
    m1: float

    def __post_init__(self):
        if not 0.0 <= self.q0 <= self.q1 <= 1.0:
            raise ValueError(f"need 0 <= q0 <= q1 <= 1, got ({self.q0}, {self.q1})")
        if not 0.0 <= self.m0 <= self.m1 <= 1.0:
            raise ValueError(f"need 0 <= m0 <= m1 <= 1, got ({self.m0}, {self.m1})")


@dataclass(frozen=True)
class InnerStats:
    """nu1 statistics at one fixed outer field value g0."""

    nu1_tanh: float
    nu1_tanh2: float
    f0: float


@dataclass(frozen=True)
class QStarPair:
    """Dual overlap variables of the two-level Legendre structure."""

    q0_star: float
    q1_star: float


def _grid_stats(x: OneRsbPoint, p: ModelParams, outer: HermiteRule,
                inner: HermiteRule):
    """Vectorized inner statistics at every outer node.

    Returns (nu1_tanh, nu1_tanh2, f0) as arrays over the outer nodes.
    """
    a = (p.h + p.beta * np.sqrt(x.q0) * outer.nodes[:, None]
         + p.beta * np.sqrt(max(x.q1 - x.q0, 0.0)) * inner.nodes[None, :])
    lc = log_cosh(a)
    th = np.tanh(a)
    logw = np.log(inner.weights)[None, :]
    if x.m1 == 0.0:
        # analytic continuation: (1/m) log E[e^{m f}] -> E[f]
        om = np.broadcast_to(inner.weights[None, :], a.shape)
        f0 = lc @ inner.weights
    else:
        lt = x.m1 * lc + logw
        mx = lt.max(axis=1, keepdims=True)
        ew = np.exp(lt - mx)
        z = ew.sum(axis=1)
        om = ew / z[:, None]
        f0 = (np.log(z) + mx[:, 0]) / x.m1
    nu1_t = (om * th).sum(axis=1)
    nu1_t2 = (om * th * th).sum(axis=1)
    return nu1_t, nu1_t2, f0


def _outer_log_tilt(f0, x: OneRsbPoint, outer: HermiteRule):
    """Log of the (unnormalized) nu0 weights over the outer nodes."""
    lw = np.log(outer.weights)
    if x.m0 == 0.0:
        return lw
    return x.m0 * f0 + lw


def inner_stats(g0: float, x: OneRsbPoint, p: ModelParams,
                rule: HermiteRule) -> InnerStats:
    """nu1[Tanh], nu1[Tanh^2] and f0 at a fixed outer field value g0.

    The inner expectation is a single gauss rule over g1, tilted by
    cosh(a)^{m1} in log-space.  m1 = 0 is the untilted (plain Gaussian)
    limit with f0 = E1[f].
    """
    if x.q1 < x.q0:
        raise ValueError(f"need q1 >= q0, got ({x.q0}, {x.q1})")
    a = (p.h + p.beta * np.sqrt(x.q0) * float(g0)
         + p.beta * np.sqrt(max(x.q1 - x.q0, 0.0)) * rule.nodes)
    lc = log_cosh(a)
    th = np.tanh(a)
    if x.m1 == 0.0:
        om = rule.weights
        f0 = float(rule.weights @ lc)
    else:
        lt = x.m1 * lc + np.log(rule.weights)
        mx = lt.max()
        ew = np.exp(lt - mx)
        z = ew.sum()
        om = ew / z
        f0 = float((np.log(z) + mx) / x.m1)
    return InnerStats(
        nu1_tanh=float(om @ th),
        nu1_tanh2=float(om @ (th * th)),
        f0=f0,
    )


def outer_average(F, x: OneRsbPoint, p: ModelParams, rule: HermiteRule,
                  inner_rule: HermiteRule = None) -> float:
    """nu0-average of F(inner_stats(g0)) over the outer Gaussian.

    m0 = 0 uses the plain Gaussian; m0 > 0 tilts by exp(m0 f0) with a
    log-space normalization.  F maps InnerStats -> real.
    """
    inner = inner_rule if inner_rule is not None else rule
    stats = [inner_stats(g0, x, p, inner) for g0 in rule.nodes]
    vals = np.array([F(s) for s in stats])
    f0 = np.array([s.f0 for s in stats])
    lt = _outer_log_tilt(f0, x, rule)
    mx = lt.max()
    w = np.exp(lt - mx)
    return float((vals @ w) / w.sum())


def phi0(x: OneRsbPoint, p: ModelParams, rule: HermiteRule,
         inner_rule: HermiteRule = None) -> float:
    """The two-level potential Phi0 (nested smoothed log cosh)."""
    inner = inner_rule if inner_rule is not None else rule
    _, _, f0 = _grid_stats(x, p, rule, inner)
    if x.m0 == 0.0:
        return float(rule.weights @ f0)
    lt = x.m0 * f0 + np.log(rule.weights)
    mx = lt.max()
    return float((np.log(np.exp(lt - mx).sum()) + mx) / x.m0)


def _nu_moments(x, p, rule, inner_rule=None):
    """A = nu0[(nu1 Tanh)^2], B = nu[Tanh^2], C = nu[Tanh] plus f0 grid."""
    inner = inner_rule if inner_rule is not None else rule
    nu1_t, nu1_t2, f0 = _grid_stats(x, p, rule, inner)
    lt = _outer_log_tilt(f0, x, rule)
    mx = lt.max()
    w = np.exp(lt - mx)
    w = w / w.sum()
    A = float(w @ (nu1_t * nu1_t))
    B = float(w @ nu1_t2)
    C = float(w @ nu1_t)
    return A, B, C, f0


def qstar_map(x: OneRsbPoint, p: ModelParams, rule: HermiteRule,
              inner_rule: HermiteRule = None) -> QStarPair:
    """Dual overlaps of the two-level structure:

        q0* = (beta^2/2) (m0 - m1) nu0[(nu1 Tanh)^2]
        q1* = beta^2/2 - (beta^2/2) (1 - m1) nu[Tanh^2]
    """
    A, B, _, _ = _nu_moments(x, p, rule, inner_rule)
    b2h = 0.5 * p.beta**2
    return QStarPair(
        q0_star=b2h * (x.m0 - x.m1) * A,
        q1_star=b2h - b2h * (1.0 - x.m1) * B,
    )


def g_1rsb(x: OneRsbPoint, p: ModelParams, rule: HermiteRule,
           inner_rule: HermiteRule = None) -> float:
    """Full first-order expansion of the two-level Gibbs potential
    (see the module docstring for the term-by-term form)."""
    A, B, C, _ = _nu_moments(x, p, rule, inner_rule)
    b2 = p.beta**2
    val = phi0(x, p, rule, inner_rule)
    val -= 0.5 * b2 * x.q0 * (x.m0 - x.m1) * A
    val -= 0.5 * b2 * x.q1
    val += 0.5 * b2 * x.q1 * (1.0 - x.m1) * B
    val += 0.25 * b2
    val -= 0.25 * b2 * x.m0 * C**4
    val -= 0.25 * b2 * (x.m1 - x.m0) * A * A
    val -= 0.25 * b2 * (1.0 - x.m1) * B * B
    return val


def onersb_fixed_point(m1: float, p: ModelParams, rule: HermiteRule,
                       tol: float = 1e-10, max_iter: int = 60000,
                       inner_rule: HermiteRule = None,
                       init=(0.05, 0.5)):
    """Solve the m0 = 0 pair of fixed-point equations

        q0 = E0[(nu1 Tanh)^2],   q1 = nu[Tanh^2]

    by damped simultaneous iteration (damping 0.5), projecting onto
    0 <= q0 <= q1 <= 1 after every step, until the joint residual drops
    below tol.  Returns (q0, q1).  Near marginal stability the transverse
    contraction rate approaches 1, so max_iter defaults generously.
    """
    if not 0.0 < m1 <= 1.0:
        raise ValueError(f"m1 must be in (0, 1], got {m1}")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    inner = inner_rule if inner_rule is not None else rule
    damp = 0.5
    q0, q1 = float(init[0]), float(init[1])
    residual = np.inf
    for _ in range(max_iter):
        x = OneRsbPoint(q0=q0, q1=q1, m0=0.0, m1=m1)
        nu1_t, nu1_t2, _ = _grid_stats(x, p, rule, inner)
        n0 = float(rule.weights @ (nu1_t * nu1_t))
        n1 = float(rule.weights @ nu1_t2)
        residual = max(abs(n0 - q0), abs(n1 - q1))
        q0 = (1.0 - damp) * q0 + damp * n0
        q1 = (1.0 - damp) * q1 + damp * n1
        q0 = min(max(q0, 0.0), 1.0)
        q1 = min(max(q1, q0), 1.0)
        if residual < tol:
            return q0, q1
    raise NonConvergenceError(
        f"two-level fixed point did not reach tol={tol} in {max_iter} steps",
        last_iterate=(q0, q1), residual=residual, iterations=max_iter)


def parisi_1rsb_value(q0: float, q1: float, m1: float, p: ModelParams,
                      rule: HermiteRule,
                      inner_rule: HermiteRule = None) -> float:
    """E0[(1/m1) log E1[cosh(a)^{m1}]]
       + (beta^2/4) (1 - 2 q1 + m1 q0^2 + (1 - m1) q1^2)."""
    if not 0.0 <= q0 <= q1 <= 1.0:
        raise ValueError(f"need 0 <= q0 <= q1 <= 1, got ({q0}, {q1})")
    if not 0.0 < m1 <= 1.0:
        raise ValueError(f"m1 must be in (0, 1], got {m1}")
    inner = inner_rule if inner_rule is not None else rule
    x = OneRsbPoint(q0=q0, q1=q1, m0=0.0, m1=m1)
    _, _, f0 = _grid_stats(x, p, rule, inner)
    quad = 1.0 - 2.0 * q1 + m1 * q0 * q0 + (1.0 - m1) * q1 * q1
    return float(rule.weights @ f0) + 0.25 * p.beta**2 * quad


@dataclass(frozen=True)
class OneRsbSolution:
    m1: float
    q0: float
    q1: float
    value: float


def parisi_1rsb_solve(p: ModelParams, rule: HermiteRule,
                      inner_rule: HermiteRule = None, n_grid: int = 64,
                      m1_tol: float = 1e-6, fp_tol: float = 1e-10,
                      max_iter: int = 60000,
                      threads: int = 1) -> OneRsbSolution:
    """Minimize the collapsed potential over m1 in (0, 1].

    Each m1 on a uniform n_grid-point grid gets an independent fixed-point
    solve (so the grid parallelizes deterministically); the grid minimum is
    then refined by golden-section search on m1 to m1_tol.  Raises
    NonConvergenceError if every fixed-point solve failed.
    """
    m1s = np.arange(1, n_grid + 1) / n_grid

    def solve_at(m1):
        try:
            q0, q1 = onersb_fixed_point(float(m1), p, rule, tol=fp_tol,
                                        max_iter=max_iter,
                                        inner_rule=inner_rule)
        except NonConvergenceError:
            return np.nan, np.nan, np.inf
        return q0, q1, parisi_1rsb_value(q0, q1, float(m1), p, rule,
                                         inner_rule=inner_rule)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(solve_at, m1s))
    else:
        results = [solve_at(m1) for m1 in m1s]
    values = np.array([r[2] for r in results])
    if not np.any(np.isfinite(values)):
        raise NonConvergenceError(
            "no m1 grid point produced a convergent fixed point",
            last_iterate=None, residual=None, iterations=n_grid)

    i = int(np.argmin(values))
    lo = m1s[i - 1] if i > 0 else 0.5 * m1s[0]
    hi = m1s[i + 1] if i < n_grid - 1 else 1.0

    cache = {float(m): r for m, r in zip(m1s, results)}

    def val(m1):
        if m1 not in cache:
            cache[m1] = solve_at(m1)
        return cache[m1][2]

    a, b = float(lo), float(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    while b - a > m1_tol:
        if val(c) <= val(d):
            b, d = d, c
            c = b - _GOLDEN * (b - a)
        else:
            a, c = c, d
            d = a + _GOLDEN * (b - a)
    m1_star = 0.5 * (a + b)
    if not np.isfinite(val(m1_star)) or val(float(m1s[i])) < val(m1_star):
        m1_star = float(m1s[i])  # keep the grid minimizer if refinement failed
    q0, q1, value = cache[m1_star]
    return OneRsbSolution(m1=float(m1_star), q0=float(q0), q1=float(q1),
                          value=float(value))


def criticality_report(m1: float, p: ModelParams, rule: HermiteRule,
                       inner_rule: HermiteRule = None, step: float = 1e-4):
    """Finite-difference gradient of g_1rsb (m0 = 0) at the fixed point.

    The fixed-point equations are derived from the collapsed functional;
    whether their solutions are also critical points of the full expansion
    is checked numerically here and *reported*, not asserted.
    """
    q0, q1 = onersb_fixed_point(m1, p, rule, inner_rule=inner_rule)

    def g(a, b):
        a = min(max(a, 0.0), 1.0)
        b = min(max(b, a), 1.0)
        return g_1rsb(OneRsbPoint(q0=a, q1=b, m0=0.0, m1=m1), p, rule,
                      inner_rule=inner_rule)

    s0 = min(step, 0.5 * q0) if q0 > 0 else step
    d_q0 = (g(q0 + s0, q1) - g(max(q0 - s0, 0.0), q1)) / (s0 + min(s0, q0))
    s1 = min(step, 0.5 * (1.0 - q1)) if q1 < 1 else step
    d_q1 = (g(q0, q1 + s1) - g(q0, q1 - s1)) / (2.0 * s1)
    return {
        "m1": float(m1),
        "q0": float(q0),
        "q1": float(q1),
        "grad_q0": float(d_q0),
        "grad_q1": float(d_q1),
        "fd_step": float(step),
    }


def default_rules(order: int = 61):
    r = hermite_rule(order)
    return r, r
