# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Gray-code enumeration of all 2^n Ising configurations.

Visits configurations in Gray-code order so each step flips exactly one
spin; the pair-interaction energy X = sum_{i<j} J_ij s_i s_j and the local
fields lam_i = sum_{j != i} J_ij s_j are updated in O(n) per step.  The
log-mean-exp over configurations is accumulated online (running max with
rescaling), so memory stays O(n) for any n.
"""

from libc.math cimport exp, log, sqrt

import numpy as np

cimport numpy as cnp


def gray_log_mean_exp(double[:, ::1] J, double beta, double h):
    """(1/n) log( 2^-n sum_sigma exp( (beta/sqrt(n)) X(sigma) + h M(sigma) ) )

    J must be the full symmetric coupling matrix with zero diagonal.
    """
    cdef Py_ssize_t n = J.shape[0]
    if J.shape[1] != n:
        raise ValueError("J must be square")
    if n < 1 or n > 24:
        raise ValueError("n must be in 1..24")

    cdef double[::1] lam = np.empty(n)
    cdef signed char[::1] s = np.ones(n, dtype=np.int8)
    cdef double scale = beta / sqrt(<double> n)
    cdef double X = 0.0, M = <double> n
    cdef double val, mx, acc
    cdef double si
    cdef Py_ssize_t i, j, bit
    cdef unsigned long long t, total = (<unsigned long long> 1) << n

    with nogil:
        for i in range(n):
            lam[i] = 0.0
            for j in range(n):
                lam[i] += J[i, j]
        for i in range(n):
            X += 0.5 * lam[i]

        mx = scale * X + h * M
        acc = 1.0

        for t in range(1, total):
            bit = 0
            while not (t >> bit) & 1:
                bit += 1
            si = <double> s[bit]
            X -= 2.0 * si * lam[bit]
            M -= 2.0 * si
            s[bit] = <signed char> (-s[bit])
            for j in range(n):
                lam[j] -= 2.0 * si * J[bit, j]
            val = scale * X + h * M
            if val > mx:
                acc = acc * exp(mx - val) + 1.0
                mx = val
            else:
                acc += exp(val - mx)

    return (mx + log(acc) - n * log(2.0)) / n
