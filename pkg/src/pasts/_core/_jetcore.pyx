# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-point hot loops; mirrors ``_jetcore_py`` exactly.

Each phase-space point costs one linear-over-quadratic Taylor division,
one truncated exponential series and one convolution coefficient, all in
C double complex arithmetic.  The point loop releases the GIL.
"""

import numpy as np

from libc.math cimport exp as c_exp, sqrt as c_sqrt

BACKEND_NAME = "cython"

cdef int MAX_ORDER = 64

cdef extern from "complex.h":
    double complex cexp(double complex) nogil
    double creal(double complex) nogil
    double cimag(double complex) nogil


def wigner_batch(
    int m,
    double f0,
    double c,
    double complex b,
    double d,
    double complex[::1] pcoef,
    double pref,
    double[::1] xs,
    double[::1] ys,
):
    if m + 1 > MAX_ORDER:
        raise ValueError(f"jet order {m} exceeds compiled limit {MAX_ORDER - 1}")
    if pcoef.shape[0] != m + 1:
        raise ValueError("pcoef length must be m + 1")
    if xs.shape[0] != ys.shape[0]:
        raise ValueError("xs and ys must have equal length")

    cdef Py_ssize_t npts = xs.shape[0]
    out_arr = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] out = out_arr

    cdef double g0 = f0 * f0 - 4.0 * c * c
    cdef double g1 = 2.0 * f0
    cdef double sqrt2 = c_sqrt(2.0)

    cdef double complex h[64]
    cdef double complex eu[64]
    cdef double complex e_lin, acc, qm
    cdef double x, y, er, ei, e2, re2, h0r
    cdef Py_ssize_t i
    cdef int k, j

    with nogil:
        for i in range(npts):
            x = xs[i]
            y = ys[i]
            # e_lin = b - 2*alpha with alpha = (x + iy)/sqrt(2)
            er = creal(b) - 2.0 * x / sqrt2
            ei = cimag(b) - 2.0 * y / sqrt2
            e2 = er * er + ei * ei
            re2 = er * er - ei * ei

            h[0] = (-f0 * e2 + 2.0 * c * re2) / g0
            if m >= 1:
                h[1] = (-e2 - g1 * h[0]) / g0
            for k in range(2, m + 1):
                h[k] = -(g1 * h[k - 1] + h[k - 2]) / g0
            h0r = creal(h[0])
            h[0] = 0.0

            eu[0] = 1.0
            for k in range(1, m + 1):
                acc = h[1] * eu[k - 1]
                for j in range(2, k + 1):
                    acc = acc + j * h[j] * eu[k - j]
                eu[k] = acc / k

            qm = 0.0
            for j in range(m + 1):
                qm = qm + pcoef[j] * eu[m - j]
            out[i] = pref * c_exp(d + x * x + y * y + h0r) * qm
    return out_arr


def evolved_batch(
    int m,
    double complex[::1] sqrtn,
    double complex[::1] rj,
    double complex[::1] kj,
    double pref,
    double[::1] xs,
    double[::1] ys,
):
    if m + 1 > MAX_ORDER:
        raise ValueError(f"jet order {m} exceeds compiled limit {MAX_ORDER - 1}")
    if sqrtn.shape[0] != m + 1 or rj.shape[0] != m + 1 or kj.shape[0] != m + 1:
        raise ValueError("coefficient arrays must have length m + 1")
    if xs.shape[0] != ys.shape[0]:
        raise ValueError("xs and ys must have equal length")

    cdef Py_ssize_t npts = xs.shape[0]
    out_arr = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] out = out_arr

    cdef double complex h[64]
    cdef double complex eu[64]
    cdef double complex acc, qm, h0
    cdef double x, y, a2, tra
    cdef Py_ssize_t i
    cdef int k, j

    with nogil:
        for i in range(npts):
            x = xs[i]
            y = ys[i]
            a2 = 0.5 * (x * x + y * y)
            tra = x * x - y * y

            for k in range(m + 1):
                h[k] = rj[k] * a2 + kj[k] * tra
            h0 = h[0]
            h[0] = 0.0

            eu[0] = 1.0
            for k in range(1, m + 1):
                acc = h[1] * eu[k - 1]
                for j in range(2, k + 1):
                    acc = acc + j * h[j] * eu[k - j]
                eu[k] = acc / k

            qm = 0.0
            for j in range(m + 1):
                qm = qm + sqrtn[j] * eu[m - j]
            out[i] = pref * cexp(h0) * qm
    return out_arr
