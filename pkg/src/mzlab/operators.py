"""Fourier partial sums, kernel means, and trigonometric interpolation."""

from __future__ import annotations

import numpy as np

from .grids import SampledFunction, TWO_PI
from .models import TrigPoly


class OperatorError(ValueError):
    pass


def coeffs_from_samples(values: np.ndarray, n: int) -> np.ndarray:
    """Coefficients c_k, |k| <= n, of the trapezoid-grid samples via FFT."""
    values = np.asarray(values)
    m = len(values)
    if m < 2 * n + 1:
        raise OperatorError(f"grid of {m} points cannot resolve degree {n}")
    c = np.fft.fft(values) / m
    out = np.empty(2 * n + 1, dtype=complex)
    out[n:] = c[:n + 1]
    out[:n] = c[m - n:]
    return out


def _as_coeffs(f, n: int) -> np.ndarray:
    if isinstance(f, TrigPoly):
        if f.d != 1:
            raise OperatorError("use the axis variant for 2-D models")
        if f.n >= n:
            return f.coeffs[f.n - n:f.n + n + 1].copy()
        out = np.zeros(2 * n + 1, dtype=complex)
        out[n - f.n:n + f.n + 1] = f.coeffs
        return out
    if isinstance(f, SampledFunction):
        return coeffs_from_samples(f.values, n)
    return coeffs_from_samples(np.asarray(f), n)


def partial_sum(f, n: int) -> TrigPoly:
    """S_n f: truncation to frequencies |k| <= n."""
    return TrigPoly(_as_coeffs(f, n))


def partial_sum_2d(f: TrigPoly, n: int) -> TrigPoly:
    """Per-coordinate truncation of a 2-D model."""
    if not (isinstance(f, TrigPoly) and f.d == 2):
        raise OperatorError("expects a 2-D TrigPoly")
    if f.n <= n:
        return f
    k = f.n
    return TrigPoly(f.coeffs[k - n:k + n + 1, k - n:k + n + 1], d=2)


def fejer_multipliers(n: int) -> np.ndarray:
    """(1 - |k|/n) for |k| <= n-1, zero at |k| = n; table over k = -n..n."""
    if n < 1:
        raise OperatorError("n must be >= 1")
    k = np.arange(-n, n + 1)
    return np.maximum(0.0, 1.0 - np.abs(k) / n)


def fejer_mean(f, n: int) -> TrigPoly:
    """The Fejer mean f * K_{n-1} = average of the partial sums S_0..S_{n-1}."""
    c = _as_coeffs(f, n)
    return TrigPoly(c * fejer_multipliers(n))


def vallee_poussin_coeffs(n: int) -> np.ndarray:
    """Multiplier table over k = -(2n-1)..(2n-1): flat to n, linear taper.

    Equals the coefficient profile of 2 K_{2n-1} - K_{n-1}.
    """
    if n < 1:
        raise OperatorError("n must be >= 1")
    k = np.abs(np.arange(-(2 * n - 1), 2 * n))
    return np.where(k <= n, 1.0, 2.0 * (1.0 - k / (2.0 * n)))


def vallee_poussin_mean(f, n: int) -> TrigPoly:
    """De la Vallee Poussin mean: reproduces degrees <= n, supported <= 2n-1."""
    c = _as_coeffs(f, 2 * n - 1)
    return TrigPoly(c * vallee_poussin_coeffs(n))


def lagrange_nodes(n: int) -> np.ndarray:
    return TWO_PI * np.arange(2 * n + 1) / (2 * n + 1)


def lagrange_interpolate(samples, n: int) -> TrigPoly:
    """The unique T in T_n with T(t_k) = samples at t_k = 2 pi k/(2n+1).

    Implemented by discrete Fourier inversion, which coincides with the
    sine-quotient kernel sum (see lagrange_kernel_eval) while avoiding its
    removable singularities.
    """
    samples = np.asarray(samples)
    if len(samples) != 2 * n + 1:
        raise OperatorError(f"need exactly {2 * n + 1} samples")
    return TrigPoly(coeffs_from_samples(samples, n))


def lagrange_kernel_eval(samples, n: int, x) -> np.ndarray:
    """Direct kernel-sum evaluation of the interpolant (cross-check path)."""
    samples = np.asarray(samples)
    if len(samples) != 2 * n + 1:
        raise OperatorError(f"need exactly {2 * n + 1} samples")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    t = lagrange_nodes(n)
    u = x[:, None] - t[None, :]
    num = np.sin((n + 0.5) * u)
    den = np.sin(0.5 * u)
    with np.errstate(invalid="ignore", divide="ignore"):
        kern = num / den
    kern = np.where(np.abs(den) < 1e-9, _dirichlet_limit(u, n), kern)
    return (samples[None, :] * kern).sum(axis=1) / (2 * n + 1)


def _dirichlet_limit(u, n):
    # near u = 2 pi m the quotient tends to 2n+1 (even multiples) with sign
    m = np.round(u / TWO_PI)
    return (2 * n + 1) * np.cos((n + 0.5) * TWO_PI * m) / np.cos(np.pi * m)
