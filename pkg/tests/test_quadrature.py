import math

import numpy as np
import pytest

from skgibbs.quadrature import MAX_ORDER, gauss_expect, hermite_rule

ORDERS = [1, 2, 3, 7, 31, 61, 121, 350, 512]


def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def test_order_one_and_two_closed_forms():
    r1 = hermite_rule(1)
    assert r1.nodes.tolist() == [0.0]
    assert r1.weights.tolist() == [1.0]
    r2 = hermite_rule(2)
    np.testing.assert_allclose(r2.nodes, [-1.0, 1.0], atol=1e-15)
    np.testing.assert_allclose(r2.weights, [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("order", ORDERS)
def test_rule_invariants(order):
    r = hermite_rule(order)
    assert len(r.nodes) == order == len(r.weights)
    assert np.all(r.weights > 0.0)
    assert abs(r.weights.sum() - 1.0) < 1e-12
    assert np.all(np.diff(r.nodes) > 0.0)
    # exact symmetry by construction
    np.testing.assert_array_equal(r.nodes, -r.nodes[::-1])
    np.testing.assert_array_equal(r.weights, r.weights[::-1])


@pytest.mark.parametrize("order", [3, 7, 31, 61, 121])
def test_monomial_exactness(order):
    """E[g^k] reproduced for all k <= 2*order - 1 that fit in float64.

    Even references are (k-1)!! computed exactly in integer arithmetic;
    odd moments vanish and are compared against the absolute-value moment
    (the natural scale of the cancellation).
    """
    r = hermite_rule(order)
    nmax = float(r.nodes.max())
    for k in range(2 * order):
        if k > 0 and k * math.log(max(nmax, 1.0)) > 650.0:
            break
        ref = _double_factorial(k - 1) if k % 2 == 0 else 0
        if ref and ref > 1e300:
            break
        powers = r.nodes**k
        mom = float(r.weights @ powers)
        if k % 2 == 1:
            scale = float(r.weights @ np.abs(powers))
            assert abs(mom) <= 1e-10 * max(scale, 1.0), f"odd k={k}"
        else:
            assert abs(mom - ref) <= 1e-10 * max(1.0, ref), f"even k={k}"


@pytest.mark.parametrize("order", [350, 512])
def test_moderate_moments_high_order(order):
    # high orders only need to be accurate on bulk-dominated integrands
    r = hermite_rule(order)
    for k in range(0, 42, 2):
        ref = float(_double_factorial(k - 1)) if k else 1.0
        assert abs(float(r.weights @ r.nodes**k) - ref) <= 1e-10 * ref


def test_convergence_with_order():
    f = lambda x: np.log(np.cosh(0.2 + 0.9 * x))
    r = {o: gauss_expect(f, hermite_rule(o)) for o in (31, 61, 121)}
    d_low = abs(r[31] - r[61])
    d_high = abs(r[61] - r[121])
    assert d_high < 1e-10
    assert d_low >= d_high


def test_odd_integrand_cancels():
    r = hermite_rule(61)
    assert abs(gauss_expect(np.tanh, r)) < 1e-15
    assert abs(gauss_expect(lambda x: x**3 * np.exp(-np.abs(x)), r)) < 1e-15


def test_linearity():
    r = hermite_rule(31)
    f = lambda x: np.cos(x)
    g = lambda x: x * x
    lhs = gauss_expect(lambda x: 2.0 * f(x) - 3.0 * g(x), r)
    rhs = 2.0 * gauss_expect(f, r) - 3.0 * gauss_expect(g, r)
    assert abs(lhs - rhs) < 1e-13


def test_scalar_only_function_falls_back():
    r = hermite_rule(31)
    vector = gauss_expect(lambda x: np.exp(-x * x), r)
    scalar = gauss_expect(lambda x: math.exp(-x * x), r)  # TypeError on arrays
    assert scalar == vector


def test_nonfinite_values_raise():
    r = hermite_rule(31)
    with pytest.raises(FloatingPointError):
        gauss_expect(lambda x: np.where(x > 0, np.inf, 1.0), r)
    with pytest.raises(FloatingPointError):
        gauss_expect(lambda x: np.full_like(x, np.nan), r)


@pytest.mark.parametrize("order", [0, -3, MAX_ORDER + 1, 2.5, "7"])
def test_invalid_order_rejected(order):
    with pytest.raises(ValueError):
        hermite_rule(order)


def test_rules_cached_and_immutable():
    r = hermite_rule(61)
    assert r is hermite_rule(61)
    with pytest.raises(ValueError):
        r.nodes[0] = 0.0
    with pytest.raises(ValueError):
        r.weights[0] = 0.0
