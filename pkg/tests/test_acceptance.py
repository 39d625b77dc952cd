"""End-to-end acceptance gate.

One test per release criterion, each at its pinned tolerance; the summary
hook in conftest.py prints a PASS/FAIL line per criterion after the run.
Covered: the pointwise expansion identity, the qualitative curvature
(sign) structure of both functionals across the three reference
temperatures, solver self-consistency, the collapse identities tying the
two-level potential to the one-level one, domination of the optimized
two-level value, the exact finite-volume bound with Monte Carlo error
bars, the cascade representation of the nested functional, and the
mean-field benchmark limit.
"""

import time

import numpy as np

from skgibbs import (GridSpec, ModelParams, OneRsbPoint,
                     cascade_functional_mc, cw_free_energy_exact,
                     cw_free_energy_limit, derivative_scan, f_rs, g_1rsb,
                     g_rs, hermite_rule, parisi_1rsb_solve, parisi_1rsb_value,
                     quenched_estimate, rs_solution, smoothing_identity_check,
                     t_overlap)
from skgibbs.cascades import STANDARD_CHECK_POINTS

from conftest import load_golden

GRID = GridSpec(0.005, 0.995, 199)
BETAS = (0.9, 1.15, 1.3)
FIELD = 0.2


def test_criterion_1_expansion_identity_on_grid(rule61):
    t0 = time.perf_counter()
    for beta in BETAS:
        p = ModelParams(beta, FIELD)
        for q in GRID.values():
            gap = f_rs(q, p, rule61) - g_rs(q, p, rule61)
            t = t_overlap(q, p, rule61)
            assert abs(gap - 0.25 * beta**2 * (q - t) ** 2) < 1e-9
    assert time.perf_counter() - t0 < 5.0


def test_criterion_2_curvature_sign_patterns(rule61):
    t0 = time.perf_counter()

    def signs(base_step):
        out = {}
        for beta in BETAS:
            pts = derivative_scan(ModelParams(beta, FIELD), GRID, rule61,
                                  base_step=base_step, threads=4)
            qs = np.array([pt.q for pt in pts])
            d2f = np.array([pt.d2_f for pt in pts])
            d2g = np.array([pt.d2_g for pt in pts])
            out[beta] = (qs, d2f, d2g)
        return out

    for step in (1e-3, 5e-4):  # determinations must survive step halving
        scans = signs(step)

        qs, d2f, d2g = scans[0.9]
        assert np.all(d2f > 0) and np.all(d2g > 0)

        qs, d2f, d2g = scans[1.15]
        assert np.all(d2g > 0)
        assert d2f.min() < 0 and qs[d2f.argmin()] < 0.2

        qs, d2f, d2g = scans[1.3]
        assert d2f.min() < 0 and qs[d2f.argmin()] < 0.2
        assert d2g.min() < 0 and qs[d2g.argmin()] < 0.2
    assert time.perf_counter() - t0 < 30.0


def test_criterion_3_rs_solution_consistency(rule61):
    for beta, h in ((0.5, 0.0), (0.9, 0.2)):
        p = ModelParams(beta, h)
        sol = rs_solution(p, rule61)
        assert sol.residual < 1e-10
        assert abs(sol.value - g_rs(sol.q_hat, p, rule61)) < 1e-9
    flat = rs_solution(ModelParams(0.5, 0.0), rule61)
    assert abs(flat.value - 0.0625) < 1e-12


def test_criterion_4_collapse_identities(rule61):
    rng = np.random.default_rng(2024)
    for _ in range(10):
        q = rng.uniform(0.02, 0.95)
        m1 = rng.uniform(0.05, 1.0)
        p = ModelParams(rng.uniform(0.2, 1.5), rng.uniform(-0.4, 0.4))
        x = OneRsbPoint(q0=q, q1=q, m0=0.0, m1=m1)
        assert abs(g_1rsb(x, p, rule61) - g_rs(q, p, rule61)) < 1e-8
        q0 = rng.uniform(0.02, 0.6)
        q1 = rng.uniform(q0, 0.97)
        assert abs(parisi_1rsb_value(q0, q1, 1.0, p, rule61)
                   - f_rs(q0, p, rule61)) < 1e-8


def test_criterion_5_domination_and_recorded_margin(rule61):
    gold = load_golden("one_rsb")["solve_13_02"]
    for beta, h in ((0.5, 0.0), (0.9, 0.2), (1.3, 0.2)):
        p = ModelParams(beta, h)
        sol = parisi_1rsb_solve(p, rule61, threads=8)
        rs = rs_solution(p, rule61)
        assert sol.value <= rs.value + 1e-9
        if (beta, h) == (1.3, 0.2):
            margin = rs.value - sol.value
            assert abs(margin - gold["margin"]) < 1e-6


def test_criterion_6_finite_volume_bound(rule61):
    p = ModelParams(0.6, 0.2)
    t0 = time.perf_counter()
    est_single = quenched_estimate(12, p, 2000, master_seed=42, threads=1)
    assert time.perf_counter() - t0 < 300.0
    t0 = time.perf_counter()
    est = quenched_estimate(12, p, 2000, master_seed=42, threads=8)
    assert time.perf_counter() - t0 < 60.0
    assert est.mean == est_single.mean

    rs = rs_solution(p, rule61)
    assert est.mean <= rs.value + 3.0 * est.stderr

    by_n = {12: est}
    for n in (8, 16):
        by_n[n] = quenched_estimate(n, p, 2000, master_seed=42, threads=8)
    for lo, hi in ((8, 12), (12, 16)):
        a, b = by_n[lo], by_n[hi]
        assert b.mean >= a.mean - 3.0 * (a.stderr + b.stderr)


def test_criterion_7_cascade_representation():
    rep = smoothing_identity_check(0.5, 0.7, 0.2, 20000, 2048, seed=7)
    assert abs(rep["mc_mean"] - rep["quad_value"]) <= 3.0 * rep["mc_stderr"]
    for seed, (x, p) in zip((11, 12), STANDARD_CHECK_POINTS):
        r = cascade_functional_mc(x, p, 20000, 2048, seed=seed)
        limit = 3.0 * r["mc_stderr"] + r["truncation_allowance"]
        assert abs(r["mc_mean"] - r["quad_value"]) <= limit


def test_criterion_8_mean_field_benchmark():
    p = ModelParams(0.8, 0.1)
    lim = cw_free_energy_limit(p).free_energy
    gaps = {n: abs(cw_free_energy_exact(n, p) - lim)
            for n in (500, 2000, 8000)}
    assert gaps[2000] < 5e-3
    assert gaps[500] > gaps[2000] > gaps[8000]
