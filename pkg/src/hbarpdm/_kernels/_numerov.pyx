# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov shooting kernels for ``y'' = (f0 - E g) y`` on a uniform grid."""

import numpy as np

from libc.math cimport exp, fabs, sqrt

cdef double RESCALE_AT = 1e200
cdef double RESCALE_BY = 1e-200


def shoot(const double[::1] f0, const double[::1] g, double energy, double h,
          Py_ssize_t start, Py_ssize_t stop):
    """Integrate from ``start`` to ``stop`` (either direction).

    Returns ``(y[stop - step], y[stop], nodes)``. Values are rescaled by
    positive factors to avoid overflow, so only ratios and signs are
    meaningful.
    """
    cdef Py_ssize_t step = 1 if stop > start else -1
    cdef double h12 = h * h / 12.0
    cdef double fa = f0[start] - energy * g[start]
    cdef double fb = f0[start + step] - energy * g[start + step]
    cdef double y0 = 1.0
    cdef double y1 = exp(h * sqrt(fa if fa > 0.0 else 0.0))
    cdef double w0 = 1.0 - h12 * fa
    cdef double w1 = 1.0 - h12 * fb
    cdef double f1 = fb
    cdef double f2, w2, y2
    cdef int sgn = 1
    cdef long nodes = 0
    cdef Py_ssize_t j = start + step
    cdef Py_ssize_t k
    while j != stop:
        k = j + step
        f2 = f0[k] - energy * g[k]
        w2 = 1.0 - h12 * f2
        y2 = ((2.0 + 10.0 * h12 * f1) * y1 - w0 * y0) / w2
        if y2 != 0.0 and ((y2 > 0.0) != (sgn > 0)):
            nodes += 1
            sgn = -sgn
        if fabs(y2) > RESCALE_AT:
            y1 *= RESCALE_BY
            y2 *= RESCALE_BY
        y0 = y1
        y1 = y2
        w0 = w1
        w1 = w2
        f1 = f2
        j = k
    return y0, y1, nodes


def profile(const double[::1] f0, const double[::1] g, double energy, double h,
            Py_ssize_t start, Py_ssize_t stop):
    """Same recurrence as :func:`shoot`, keeping every value (traversal order)."""
    cdef Py_ssize_t step = 1 if stop > start else -1
    cdef Py_ssize_t n = (stop - start) * step + 1
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double h12 = h * h / 12.0
    cdef double fa = f0[start] - energy * g[start]
    cdef double fb = f0[start + step] - energy * g[start + step]
    cdef double w0 = 1.0 - h12 * fa
    cdef double w1 = 1.0 - h12 * fb
    cdef double f1 = fb
    cdef double f2, w2, y2
    cdef Py_ssize_t idx, k, q
    out[0] = 1.0
    out[1] = exp(h * sqrt(fa if fa > 0.0 else 0.0))
    for idx in range(2, n):
        k = start + idx * step
        f2 = f0[k] - energy * g[k]
        w2 = 1.0 - h12 * f2
        y2 = ((2.0 + 10.0 * h12 * f1) * out[idx - 1] - w0 * out[idx - 2]) / w2
        out[idx] = y2
        if fabs(y2) > RESCALE_AT:
            for q in range(idx + 1):
                out[q] *= RESCALE_BY
        w0 = w1
        w1 = w2
        f1 = f2
    return out_arr
