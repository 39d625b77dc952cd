import math

import numpy as np
import pytest

from skgibbs import (ModelParams, cw_fixed_point, cw_free_energy_exact,
                     cw_free_energy_limit, rate_function)
from skgibbs.curie_weiss import MAX_N

from conftest import load_golden


def test_rate_function_closed_values():
    assert rate_function(0.0) == 0.0
    x = 0.5
    direct = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    assert abs(rate_function(x) - direct) < 1e-15
    assert abs(rate_function(1.0) - math.log(2.0)) < 1e-15
    assert abs(rate_function(-1.0) - math.log(2.0)) < 1e-15
    assert rate_function(0.3) == rate_function(-0.3)


@pytest.mark.parametrize("bad", [1.0001, -2.0, np.inf])
def test_rate_function_domain(bad):
    with pytest.raises(ValueError):
        rate_function(bad)


def test_fixed_point_residual_and_symmetry():
    for beta, h in [(2.0, 0.0), (0.8, 0.3), (1.5, 0.05), (0.2, 1.0)]:
        m = cw_fixed_point(ModelParams(beta, h))
        assert abs(m - math.tanh(beta * m + h)) < 1e-12
        if h != 0.0:  # at h=0 both signs maximize; the positive root is returned
            m_neg = cw_fixed_point(ModelParams(beta, -h))
            assert abs(m_neg + m) < 1e-12


def test_subcritical_zero_field_magnetization_vanishes():
    assert cw_fixed_point(ModelParams(0.9, 0.0)) == 0.0
    assert cw_fixed_point(ModelParams(1.0, 0.0)) == 0.0


def test_supercritical_golden():
    gold = load_golden("curie_weiss")
    sol = cw_free_energy_limit(ModelParams(2.0, 0.0))
    assert abs(sol.m_hat - gold["m_hat_beta2"]) < 1e-12
    assert abs(sol.free_energy - gold["limit_beta2"]) < 1e-12
    assert sol.constraint_ok


def test_limit_is_local_max_of_variational_objective():
    p = ModelParams(1.3, 0.15)
    sol = cw_free_energy_limit(p)
    obj = lambda m: p.h * m + 0.5 * p.beta * m * m - rate_function(m)
    assert obj(sol.m_hat) >= obj(sol.m_hat + 1e-4)
    assert obj(sol.m_hat) >= obj(sol.m_hat - 1e-4)
    assert abs(sol.free_energy - obj(sol.m_hat)) < 1e-14


def test_exact_n2_against_enumeration():
    # four configurations, pair energy (s1 s2) / 2, per-site normalization
    for beta, h in [(0.8, 0.1), (2.0, 0.0), (1.0, -0.4)]:
        vals = []
        for s1 in (-1, 1):
            for s2 in (-1, 1):
                e = (s1 * s2) / 2.0  # (S^2 - N)/(2N) at N=2
                vals.append(beta * e + h * (s1 + s2))
        direct = 0.5 * (np.log(np.exp(vals).sum()) - 2.0 * np.log(2.0))
        lib = cw_free_energy_exact(2, ModelParams(beta, h))
        assert abs(lib - direct) < 1e-13


def test_exact_matches_goldens():
    gold = load_golden("curie_weiss")
    p = ModelParams(0.8, 0.1)
    for n_str, ref in gold["exact_08_01"].items():
        assert abs(cw_free_energy_exact(int(n_str), p) - ref) < 1e-13


def test_gap_bound_and_monotone_shrink():
    p = ModelParams(0.8, 0.1)
    lim = cw_free_energy_limit(p).free_energy
    gaps = []
    for n in (500, 2000, 8000):
        gap = abs(cw_free_energy_exact(n, p) - lim)
        assert gap <= 5.0 * math.log(n) / n
        gaps.append(gap)
    assert gaps[0] > gaps[1] > gaps[2]


def test_zero_field_finite_size_correction_positive_and_shrinking():
    """At h=0, beta<1 the exact values approach the limit strictly from
    above (the finite-size correction of the Gaussian sum is positive),
    so F_N is decreasing in N here."""
    p = ModelParams(0.8, 0.0)
    lim = cw_free_energy_limit(p).free_energy
    assert lim == 0.0
    vals = [cw_free_energy_exact(n, p) for n in (50, 200, 800, 3200)]
    assert all(v > lim for v in vals)
    assert vals == sorted(vals, reverse=True)


def test_invalid_system_size():
    with pytest.raises(ValueError):
        cw_free_energy_exact(0, ModelParams(1.0, 0.0))
    with pytest.raises(ValueError):
        cw_free_energy_exact(MAX_N + 1, ModelParams(1.0, 0.0))
