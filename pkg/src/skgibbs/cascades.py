"""Truncated Poisson-Dirichlet cascades and Monte Carlo checks of the
smoothing identity behind the two-level potential.

A PD(m) sample is built from unit-rate Poisson arrivals t_1 < t_2 < ...
via atoms x_i = t_i^{-1/m}, normalized to weights eta_i (descending).  Its
defining smoothing property,

    E_{eta,g}[ log sum_i eta_i W(g_i) ] = (1/m) log E[ W(g)^m ],

turns nested (1/m) log E[.^m] constructions into flat cascade averages.
The checks here estimate the left side by Monte Carlo over counter-based
substreams and compare against the quadrature value of the right side:
one level with W = cosh(h + b g), and two levels against the potential
phi0(q0, q1; m0, m1) (outer level replaced by a plain Gaussian when
m0 = 0).  Truncation to k atoms biases the sum low; the reports carry a
recorded allowance (paired k vs k/2 difference) next to the MC error.
"""

from dataclasses import dataclass

import numpy as np

from .logspace import log_cosh, log_sum_exp
from .one_rsb import OneRsbPoint, phi0
from .params import ModelParams
from .quadrature import HermiteRule, hermite_rule

#: mean truncated tail mass (k * w_k * m/(1-m)) above which a sample is
#: flagged as too heavily truncated to trust at face value
TRUNCATION_FLAG_LEVEL = 0.01

#: default (x, params) pairs exercised by the two-level functional check;
#: both in the m0 = 0 regime where the outer level is a plain Gaussian
STANDARD_CHECK_POINTS = (
    (OneRsbPoint(q0=0.1, q1=0.4, m0=0.0, m1=0.6), ModelParams(1.0, 0.2)),
    (OneRsbPoint(q0=0.05, q1=0.35, m0=0.0, m1=0.4), ModelParams(1.3, 0.2)),
)


@dataclass(frozen=True)
class CascadeSample:
    """Normalized, descending truncated PD(m) weights.

    truncation_mass_bound is the (normalized) smallest retained atom --
    an upper bound on every discarded atom."""

    m: float
    weights: np.ndarray
    k_atoms: int
    truncation_mass_bound: float


def _substream(seed, index):
    """Counter-based generator for replica `index`: reproducible from
    (seed, index) alone, independent of scheduling."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed,
                                                spawn_key=(index,))))


def _pd_weights(m, k_atoms, rng):
    t = np.cumsum(rng.exponential(size=k_atoms))
    x = t ** (-1.0 / m)
    return x / x.sum()


def sample_pd(m: float, k_atoms: int, seed: int) -> CascadeSample:
    """Draw one truncated PD(m) sample (k_atoms >= 16, 0 < m < 1)."""
    if not 0.0 < m < 1.0:
        raise ValueError(f"m must be in (0,1), got {m}")
    if k_atoms < 16:
        raise ValueError(f"k_atoms must be >= 16, got {k_atoms}")
    w = _pd_weights(m, k_atoms, _substream(seed, 0))
    return CascadeSample(m=float(m), weights=w, k_atoms=int(k_atoms),
                         truncation_mass_bound=float(w[-1]))


def truncation_tail_estimate(sample: CascadeSample) -> float:
    """Crude mean-tail-mass estimate k * w_k * m / (1 - m); the flag
    threshold TRUNCATION_FLAG_LEVEL is compared against this."""
    m = sample.m
    return sample.k_atoms * sample.truncation_mass_bound * m / (1.0 - m)


def smoothing_identity_check(m: float, b: float, h: float, n_mc: int,
                             k_atoms: int, seed: int,
                             quad_order: int = 61) -> dict:
    """One-level check: E log sum_i eta_i cosh(h + b g_i) vs
    (1/m) log E[cosh(h + b g)^m].

    Returns both values, the MC standard error, and the discrepancy.
    """
    if not 0.0 < m < 1.0:
        raise ValueError(f"m must be in (0,1), got {m}")
    rule = hermite_rule(quad_order)
    lme = log_sum_exp(m * log_cosh(h + b * rule.nodes) + np.log(rule.weights))
    quad_value = float(lme / m)

    vals = np.empty(n_mc)
    tail = np.empty(n_mc)
    for i in range(n_mc):
        rng = _substream(seed, i)
        w = _pd_weights(m, k_atoms, rng)
        g = rng.standard_normal(k_atoms)
        vals[i] = log_sum_exp(np.log(w) + log_cosh(h + b * g))
        tail[i] = w[-1]
    mc_mean = float(vals.mean())
    mc_stderr = float(vals.std(ddof=1) / np.sqrt(n_mc))
    tail_est = float(k_atoms * tail.mean() * m / (1.0 - m))
    return {
        "mc_mean": mc_mean,
        "mc_stderr": mc_stderr,
        "quad_value": quad_value,
        "abs_diff": abs(mc_mean - quad_value),
        "within_3sigma": bool(abs(mc_mean - quad_value) <= 3.0 * mc_stderr),
        "truncation_tail_estimate": tail_est,
        "truncation_flag": bool(tail_est > TRUNCATION_FLAG_LEVEL),
        "m": float(m), "b": float(b), "h": float(h),
        "n_mc": int(n_mc), "k_atoms": int(k_atoms), "seed": int(seed),
        "quad_order": int(quad_order),
    }


def _two_level_replica(x, p, k_atoms, rng):
    """log sum_{i0,i1} eta0_{i0} eta1_{i0,i1} cosh(a) for one replica,
    at full truncation k and at k/2 from the same draws (paired)."""
    s0 = p.beta * np.sqrt(x.q0)
    s1 = p.beta * np.sqrt(max(x.q1 - x.q0, 0.0))
    half = k_atoms // 2
    if x.m0 == 0.0:
        g0 = rng.standard_normal()
        w1 = _pd_weights(x.m1, k_atoms, rng)
        g1 = rng.standard_normal(k_atoms)
        terms = np.log(w1) + log_cosh(p.h + s0 * g0 + s1 * g1)
        full = log_sum_exp(terms)
        trunc = log_sum_exp(terms[:half] - np.log(w1[:half].sum()))
        return full, trunc
    # outer cascade: one PD(m0), per-branch Gaussian g0_{i0}; independent
    # inner PD(m1) + Gaussians per outer atom
    w0 = _pd_weights(x.m0, k_atoms, rng)
    g0 = rng.standard_normal(k_atoms)
    t1 = np.cumsum(rng.exponential(size=(k_atoms, k_atoms)), axis=1)
    w1 = t1 ** (-1.0 / x.m1)
    w1 = w1 / w1.sum(axis=1, keepdims=True)
    g1 = rng.standard_normal((k_atoms, k_atoms))
    lc = log_cosh(p.h + s0 * g0[:, None] + s1 * g1)
    full = log_sum_exp((np.log(w0)[:, None] + np.log(w1) + lc).ravel())
    # paired half-truncation: first k/2 atoms per level, renormalized per
    # branch exactly as a fresh k/2 sample would be
    w0h = w0[:half] / w0[:half].sum()
    w1h = w1[:half, :half] / w1[:half, :half].sum(axis=1, keepdims=True)
    trunc = log_sum_exp(
        (np.log(w0h)[:, None] + np.log(w1h) + lc[:half, :half]).ravel())
    return full, trunc


def cascade_functional_mc(x: OneRsbPoint, p: ModelParams, n_mc: int,
                          k_atoms: int, seed: int,
                          quad_order: int = 61) -> dict:
    """Two-level cascade Monte Carlo estimate of the potential phi0.

    Per replica: E log sum_{i0,i1} eta^(0)_{i0} eta^(1)_{i0,i1} cosh(h +
    beta sqrt(q0) g0_{i0} + beta sqrt(q1-q0) g1_{i0,i1}), truncated to
    k_atoms per level, with every Gaussian independent per branch.  At
    m0 = 0 the outer level is a single plain-Gaussian branch.  The report
    compares against nested quadrature and records a truncation allowance
    of twice the paired k-vs-k/2 difference.
    """
    if not 0.0 < x.m1 < 1.0:
        raise ValueError(f"the cascade needs 0 < m1 < 1, got {x.m1}")
    if k_atoms < 16:
        raise ValueError(f"k_atoms must be >= 16, got {k_atoms}")
    rule = hermite_rule(quad_order)
    target = phi0(x, p, rule)

    vals = np.empty(n_mc)
    vals_half = np.empty(n_mc)
    for i in range(n_mc):
        vals[i], vals_half[i] = _two_level_replica(x, p, k_atoms,
                                                   _substream(seed, i))
    mc_mean = float(vals.mean())
    mc_stderr = float(vals.std(ddof=1) / np.sqrt(n_mc))
    allowance = 2.0 * abs(float((vals - vals_half).mean()))
    diff = abs(mc_mean - target)
    return {
        "mc_mean": mc_mean,
        "mc_stderr": mc_stderr,
        "quad_value": float(target),
        "abs_diff": diff,
        "truncation_allowance": allowance,
        "within_tolerance": bool(diff <= 3.0 * mc_stderr + allowance),
        "q0": x.q0, "q1": x.q1, "m0": x.m0, "m1": x.m1,
        "beta": p.beta, "h": p.h,
        "n_mc": int(n_mc), "k_atoms": int(k_atoms), "seed": int(seed),
        "quad_order": int(quad_order),
    }
