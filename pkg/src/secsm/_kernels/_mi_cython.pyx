# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop for the mutual-information Monte-Carlo average.

Same contract as _mi_numpy.mi_inner_mean; the triple loop fuses the
exponent table, exp and row sums that the numpy path materializes.
"""

from libc.math cimport exp, log2

import numpy as np


cdef double _core(double[:, ::1] dr, double[:, ::1] di, double[:, ::1] sq,
                  double[:, ::1] nr, double[:, ::1] ni) noexcept nogil:
    cdef Py_ssize_t K = dr.shape[0]
    cdef Py_ssize_t T = nr.shape[1]
    cdef Py_ssize_t i, t, j
    cdef double x, y, s
    cdef double acc = 0.0
    for i in range(K):
        for t in range(T):
            x = 2.0 * nr[i, t]
            y = 2.0 * ni[i, t]
            s = 0.0
            for j in range(K):
                s += exp(-sq[i, j] - x * dr[i, j] - y * di[i, j])
            acc += log2(s)
    return acc / (K * T)


def mi_inner_mean(diffs, noise):
    """Mean over entries i and draws t of
    log2 sum_j exp(-|d_ij|^2 - 2 Re(d_ij conj(n_it))).
    """
    diffs = np.asarray(diffs, dtype=np.complex128)
    noise = np.asarray(noise, dtype=np.complex128)
    K = diffs.shape[0]
    if diffs.shape != (K, K) or noise.shape[0] != K or noise.shape[1] < 1:
        raise ValueError(
            f"shape mismatch: diffs {diffs.shape}, noise {noise.shape}")
    cdef double[:, ::1] dr = np.ascontiguousarray(diffs.real)
    cdef double[:, ::1] di = np.ascontiguousarray(diffs.imag)
    cdef double[:, ::1] sq = np.asarray(dr) ** 2 + np.asarray(di) ** 2
    cdef double[:, ::1] nr = np.ascontiguousarray(noise.real)
    cdef double[:, ::1] ni = np.ascontiguousarray(noise.imag)
    cdef double out
    with nogil:
        out = _core(dr, di, sq, nr, ni)
    return out
