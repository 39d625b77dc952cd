import numpy as np
import pytest

from skgibbs import kernels
from skgibbs._sk_energy_fallback import naive_log_mean_exp

rng = np.random.default_rng(88)


def _random_couplings(n):
    J = np.triu(rng.standard_normal((n, n)), 1)
    return np.ascontiguousarray(J + J.T)


def test_flavor_consistent_with_import():
    flavor = kernels.kernel_flavor()
    assert flavor in ("compiled", "python")
    assert (flavor == "compiled") == kernels.HAVE_COMPILED


def test_dispatch_agrees_with_reference():
    for n in (1, 2, 7, 12):
        J = _random_couplings(n)
        a = kernels.log_mean_exp_configs(J, 0.8, 0.15)
        b = naive_log_mean_exp(J, 0.8, 0.15)
        assert abs(a - b) < 1e-12


@pytest.mark.skipif(not kernels.HAVE_COMPILED,
                    reason="compiled kernel not built")
def test_compiled_kernel_validation():
    from skgibbs._sk_energy import gray_log_mean_exp
    with pytest.raises(ValueError):
        gray_log_mean_exp(np.zeros((25, 25)), 1.0, 0.0)
    J = _random_couplings(6)
    assert abs(gray_log_mean_exp(J, 1.2, -0.3)
               - naive_log_mean_exp(J, 1.2, -0.3)) < 1e-12
