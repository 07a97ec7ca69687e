# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the reference kernels (see reference.py)."""

import numpy as np

from libc.math cimport cos, sin, sqrt

BACKEND = "fast"

cdef double INVPHI = (sqrt(5.0) - 1.0) / 2.0


cdef inline double complex _horner(const double complex[::1] c, double x) noexcept:
    # explicit real/imag recursion (avoids library complex-multiply calls)
    cdef double zr = cos(x), zi = sin(x)
    cdef Py_ssize_t m = c.shape[0]
    cdef double ar = c[m - 1].real, ai = c[m - 1].imag
    cdef double tr
    cdef Py_ssize_t j
    for j in range(m - 2, -1, -1):
        tr = ar * zr - ai * zi + c[j].real
        ai = ar * zi + ai * zr + c[j].imag
        ar = tr
    cdef int n = (<int>m - 1) // 2
    cdef double wr = cos(n * x), wi = -sin(n * x)
    return (ar * wr - ai * wi) + 1j * (ar * wi + ai * wr)


def trig_eval(coeffs, x):
    """Evaluate sum_{k=-n..n} c_k e^{ikx} by Horner recursion in e^{ix}."""
    xa = np.ascontiguousarray(x, dtype=np.float64)
    ca = np.ascontiguousarray(coeffs, dtype=np.complex128)
    shape = xa.shape
    flat = xa.ravel()
    out = np.empty(flat.shape[0], dtype=np.complex128)
    cdef const double[::1] xv = flat
    cdef const double complex[::1] cv = ca
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = _horner(cv, xv[i])
    return out.reshape(shape)


def cheb_eval(coeffs, t):
    """Clenshaw evaluation of a Chebyshev series on t in [-1, 1]."""
    ta = np.ascontiguousarray(t, dtype=np.float64)
    ca = np.ascontiguousarray(coeffs, dtype=np.float64)
    shape = ta.shape
    flat = ta.ravel()
    out = np.empty(flat.shape[0], dtype=np.float64)
    cdef const double[::1] tv = flat
    cdef const double[::1] cv = ca
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, m = cv.shape[0]
    cdef double c0, c1, tmp, t2
    if m == 1:
        out[:] = cv[0]
        return out.reshape(shape)
    for i in range(tv.shape[0]):
        t2 = 2.0 * tv[i]
        c0 = cv[m - 2]
        c1 = cv[m - 1]
        for j in range(m - 3, -1, -1):
            tmp = c0
            c0 = cv[j] - c1
            c1 = tmp + c1 * t2
        ov[i] = c0 + c1 * tv[i]
    return out.reshape(shape)


cdef inline double _abs_trig(const double complex[::1] c, double x) noexcept:
    cdef double complex v = _horner(c, x)
    return sqrt(v.real * v.real + v.imag * v.imag)


cdef double _golden(const double complex[::1] c, double a, double b,
                    int iters, bint want_max) noexcept:
    cdef double x1, x2, f1, f2
    cdef int it
    for it in range(iters):
        x1 = b - INVPHI * (b - a)
        x2 = a + INVPHI * (b - a)
        f1 = _abs_trig(c, x1)
        f2 = _abs_trig(c, x2)
        if (f1 > f2) == want_max:
            b = x2
        else:
            a = x1
    return _abs_trig(c, 0.5 * (a + b))


def trig_window_extrema(coeffs, centers, halfwidths, subdiv=64, polish_iters=40):
    """Max/min of |T| over the windows [c_i - h_i, c_i + h_i].

    Same contract as the reference implementation: an equispaced scan of
    subdiv + 1 points per window followed by a golden-section polish on the
    brackets around the scan extrema.
    """
    ca = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cen = np.ascontiguousarray(centers, dtype=np.float64).ravel()
    hw = np.ascontiguousarray(
        np.broadcast_to(np.asarray(halfwidths, dtype=np.float64),
                        cen.shape)).ravel()
    maxv = np.empty(cen.shape[0], dtype=np.float64)
    minv = np.empty(cen.shape[0], dtype=np.float64)
    cdef const double complex[::1] cv = ca
    cdef const double[::1] cenv = cen
    cdef const double[::1] hv = hw
    cdef double[::1] mx = maxv
    cdef double[::1] mn = minv
    cdef Py_ssize_t m = cenv.shape[0]
    cdef int K = subdiv, iters = polish_iters
    cdef Py_ssize_t i, k, kmax, kmin
    cdef double lo, step, x, v, vmax, vmin, a, b
    for i in range(m):
        lo = cenv[i] - hv[i]
        step = 2.0 * hv[i] / K
        vmax = -1.0
        vmin = 1e308
        kmax = 0
        kmin = 0
        for k in range(K + 1):
            x = lo + step * k
            v = _abs_trig(cv, x)
            if v > vmax:
                vmax = v
                kmax = k
            if v < vmin:
                vmin = v
                kmin = k
        if iters > 0:
            a = lo + step * (kmax - 1 if kmax > 0 else 0)
            b = lo + step * (kmax + 1 if kmax < K else K)
            v = _golden(cv, a, b, iters, True)
            if v > vmax:
                vmax = v
            a = lo + step * (kmin - 1 if kmin > 0 else 0)
            b = lo + step * (kmin + 1 if kmin < K else K)
            v = _golden(cv, a, b, iters, False)
            if v < vmin:
                vmin = v
        mx[i] = vmax
        mn[i] = vmin
    return maxv, minv
