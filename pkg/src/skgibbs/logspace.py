"""Log-space primitives used by every functional.

All nested expectations in this package are of the form

    (1/m) log E[ exp(m f) ]        (smoothed maxima of f)

with f = log cosh(...) of order up to tens; the exponentials span many
decades, so everything is evaluated through the shifted representations
below rather than by exponentiating directly.
"""

import numpy as np

_LOG2 = np.log(2.0)


def log_cosh(x):
    """log(cosh(x)), overflow-safe for any float64 x.

    Uses log cosh x = |x| + log1p(e^{-2|x|}) - log 2.
    """
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax)) - _LOG2


def log_sum_exp(a, axis=None):
    """log(sum(exp(a))) with the usual max shift; handles -inf entries."""
    a = np.asarray(a, dtype=float)
    mx = np.max(a, axis=axis, keepdims=True)
    mx = np.where(np.isfinite(mx), mx, 0.0)
    with np.errstate(divide="ignore"):  # all -inf rows legitimately give -inf
        out = np.log(np.sum(np.exp(a - mx), axis=axis)) + np.squeeze(mx, axis=axis)
    return out


def log_mean_exp(a, log_weights, axis=None):
    """log( sum_i w_i exp(a_i) ) given log-weights (need not be normalized)."""
    return log_sum_exp(np.asarray(a) + log_weights, axis=axis)


def tilted_average(values, log_tilt, axis=None):
    """Average of `values` under the normalized tilt exp(log_tilt).

    Computes sum_i values_i * softmax(log_tilt)_i along `axis`; the shift
    makes it safe for tilts spanning hundreds of decades.
    """
    log_tilt = np.asarray(log_tilt, dtype=float)
    mx = np.max(log_tilt, axis=axis, keepdims=True)
    w = np.exp(log_tilt - mx)
    return np.sum(values * w, axis=axis) / np.sum(w, axis=axis)
