"""Pure-NumPy reference implementations of the hot kernels.

The compiled backend in ``_fast.pyx`` mirrors these signatures exactly; both
must agree to floating-point roundoff.  Everything here is vectorized over
the point axis.
"""

import numpy as np

BACKEND = "reference"

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0  # golden ratio step


def trig_eval(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate sum_{k=-n..n} c_k e^{ikx} by Horner recursion in e^{ix}."""
    x = np.asarray(x, dtype=float)
    z = np.exp(1j * x)
    acc = np.full(x.shape, coeffs[-1], dtype=complex)
    for j in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[j]
    n = (len(coeffs) - 1) // 2
    return acc * np.exp(-1j * n * x)


def cheb_eval(coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Clenshaw evaluation of a Chebyshev series on t in [-1, 1]."""
    t = np.asarray(t, dtype=float)
    if len(coeffs) == 1:
        return np.full(t.shape, coeffs[0], dtype=float)
    t2 = 2.0 * t
    c0 = np.full(t.shape, coeffs[-2], dtype=float)
    c1 = np.full(t.shape, coeffs[-1], dtype=float)
    for j in range(len(coeffs) - 3, -1, -1):
        c0, c1 = coeffs[j] - c1, c0 + c1 * t2
    return c0 + c1 * t


def trig_window_extrema(coeffs, centers, halfwidths, subdiv=64, polish_iters=40):
    """Max/min of |T| over the windows [c_i - h_i, c_i + h_i].

    Scans ``subdiv + 1`` equispaced points per window, then polishes each
    extremum candidate with a golden-section pass on the bracket formed by
    its neighbours.  Returns ``(maxv, minv)`` arrays.
    """
    centers = np.asarray(centers, dtype=float)
    halfwidths = np.broadcast_to(np.asarray(halfwidths, dtype=float),
                                 centers.shape)
    s = np.linspace(-1.0, 1.0, subdiv + 1)
    pts = centers[:, None] + halfwidths[:, None] * s[None, :]
    vals = np.abs(trig_eval(coeffs, pts.ravel())).reshape(pts.shape)

    maxv = vals.max(axis=1)
    minv = vals.min(axis=1)
    if polish_iters > 0:
        step = halfwidths * (2.0 / subdiv)
        for which, best in (("max", vals.argmax(axis=1)),
                            ("min", vals.argmin(axis=1))):
            lo = pts[np.arange(len(centers)), np.maximum(best - 1, 0)]
            hi = pts[np.arange(len(centers)), np.minimum(best + 1, subdiv)]
            v = _golden_abs_trig(coeffs, lo, hi, polish_iters, which)
            if which == "max":
                maxv = np.maximum(maxv, v)
            else:
                minv = np.minimum(minv, v)
    return maxv, minv


def _golden_abs_trig(coeffs, lo, hi, iters, which):
    """Vectorized golden-section extremum of |T| on the brackets [lo, hi]."""
    a = lo.copy()
    b = hi.copy()
    better = np.greater if which == "max" else np.less
    for _ in range(iters):
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        fc = np.abs(trig_eval(coeffs, c))
        fd = np.abs(trig_eval(coeffs, d))
        take_left = better(fc, fd)
        b = np.where(take_left, d, b)
        a = np.where(take_left, a, c)
    mid = 0.5 * (a + b)
    return np.abs(trig_eval(coeffs, mid))
