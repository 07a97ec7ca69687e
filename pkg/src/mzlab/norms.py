"""Continuous and discretized lattice norms.

Supported space catalog, with its canonical CLI text encoding:

==============  ==========================================  =================
variant         norm                                        encoding
==============  ==========================================  =================
Lp, p > 0       weighted power sum                          ``lp:2``
sup             grid supremum                               ``linf``
weighted Lp     power sum against a catalog weight          ``wlp:2:jacobi:-0.5:-0.5``
Orlicz          Luxemburg (bisection on the modular) or     ``orlicz:power:1.5``
                the dual 'sharp' form (golden search)       ``orlicz:power:1.5:sharp``
Lorentz(p, q)   decreasing-rearrangement integral           ``lorentz:2:1``
variable Lp     Luxemburg with exponent p0 + p1 sin^2(x)    ``vlp:2:0.5``
mixed (p1, p2)  inner/outer power sums on a tensor grid     ``mixed:1.5:3``
==============  ==========================================  =================

The aggregation exponent ``q_x`` declares the power triangle inequality
||f+g||^q <= ||f||^q + ||g||^q the space satisfies: 1 for the Banach cases,
min(p, 1) for L_p with p < 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grids import (CONST_WEIGHT, QuadratureGrid, SampledFunction, TensorGrid,
                    weight_cell_mass)

TWO_PI = 2.0 * np.pi


class NormError(ValueError):
    pass


class BracketError(ArithmeticError):
    """A scalar search failed to bracket its target."""


# ---------------------------------------------------------------------------
# Orlicz function catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrliczFunction:
    """Even, convex, non-decreasing Phi with Phi(0) = 0, applied to |t|."""

    kind: str                    # "power" | "power_log" | "exp_minus_one"
    params: tuple = ()

    def __call__(self, t):
        t = np.abs(t)
        if self.kind == "power":
            return t ** self.params[0]
        if self.kind == "power_log":
            p, a = self.params
            return t ** p * np.log(np.e + t) ** a
        if self.kind == "exp_minus_one":
            return np.expm1(t)
        raise NormError(f"unknown Orlicz function {self.kind!r}")

    def inverse(self, y: float) -> float:
        """Phi^{-1}(y) on [0, inf), by closed form or bisection."""
        if y <= 0:
            return 0.0
        if self.kind == "power":
            return y ** (1.0 / self.params[0])
        if self.kind == "exp_minus_one":
            return math.log1p(y)
        lo, hi = 0.0, 1.0
        while self(hi) < y:
            hi *= 2.0
            if hi > 1e300:
                raise BracketError("Orlicz inverse out of range")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if self(mid) < y:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


def make_phi(kind: str, *params) -> OrliczFunction:
    if kind == "power":
        if not params or params[0] < 1:
            raise NormError("power Orlicz function needs p >= 1")
    elif kind == "power_log":
        if len(params) != 2 or params[0] < 1 or params[1] < 0:
            raise NormError("power_log needs p >= 1 and a >= 0")
    elif kind == "exp_minus_one":
        params = ()
    else:
        raise NormError(f"unknown Orlicz function {kind!r}")
    return OrliczFunction(kind, tuple(float(v) for v in params))


# ---------------------------------------------------------------------------
# NormSpec
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormSpec:
    kind: str                           # lp | linf | wlp | orlicz | lorentz | vlp | mixed
    p: float | None = None
    q: float | None = None
    weight: tuple = CONST_WEIGHT
    phi: OrliczFunction | None = None
    mode: str = "lux"                   # orlicz only: lux | sharp
    exponent: tuple | None = None       # vlp: (p0, p1) for p0 + p1 sin^2 x
    p2: float | None = None             # mixed outer exponent

    @property
    def q_x(self) -> float:
        """Declared exponent of the power triangle inequality."""
        if self.kind in ("lp", "wlp"):
            return min(self.p, 1.0)
        if self.kind == "lorentz":
            if self.q <= self.p and min(self.p, self.q) >= 1.0:
                return 1.0
            return min(self.p, self.q, 1.0)
        if self.kind == "mixed":
            return min(self.p, self.p2, 1.0)
        return 1.0

    def encode(self) -> str:
        if self.kind == "lp":
            return f"lp:{_fmt(self.p)}"
        if self.kind == "linf":
            return "linf"
        if self.kind == "wlp":
            w = ":".join(str(v) for v in self.weight)
            return f"wlp:{_fmt(self.p)}:{w}"
        if self.kind == "orlicz":
            parts = ["orlicz", self.phi.kind, *map(_fmt, self.phi.params)]
            if self.mode == "sharp":
                parts.append("sharp")
            return ":".join(parts)
        if self.kind == "lorentz":
            return f"lorentz:{_fmt(self.p)}:{_fmt(self.q)}"
        if self.kind == "vlp":
            return f"vlp:{_fmt(self.exponent[0])}:{_fmt(self.exponent[1])}"
        if self.kind == "mixed":
            return f"mixed:{_fmt(self.p)}:{_fmt(self.p2)}"
        raise NormError(self.kind)


def _fmt(v) -> str:
    f = float(v)
    return str(int(f)) if f == int(f) else repr(f)


def parse_spec(text: str) -> NormSpec:
    """Parse the canonical text encoding, e.g. 'lp:2' or 'orlicz:power:2:sharp'."""
    parts = text.strip().split(":")
    kind = parts[0]
    try:
        if kind == "lp":
            (p,) = map(float, parts[1:])
            if p <= 0:
                raise NormError("lp needs p > 0")
            return NormSpec("lp", p=p)
        if kind == "linf":
            return NormSpec("linf")
        if kind == "wlp":
            p = float(parts[1])
            if p <= 0:
                raise NormError("wlp needs p > 0")
            wkind = parts[2]
            wparams = tuple(map(float, parts[3:]))
            if wkind == "jacobi":
                if len(wparams) != 2 or min(wparams) <= -1:
                    raise NormError("jacobi weight needs alpha, beta > -1")
            elif wkind == "sinabs":
                if len(wparams) != 1 or wparams[0] < 0:
                    raise NormError("sinabs weight needs gamma >= 0")
            elif wkind == "const":
                wparams = ()
            else:
                raise NormError(f"unknown weight {wkind!r}")
            return NormSpec("wlp", p=p, weight=(wkind, *wparams))
        if kind == "orlicz":
            mode = "lux"
            tail = parts[1:]
            if tail and tail[-1] in ("lux", "sharp"):
                mode = tail[-1]
                tail = tail[:-1]
            phi = make_phi(tail[0], *map(float, tail[1:]))
            return NormSpec("orlicz", phi=phi, mode=mode)
        if kind == "lorentz":
            p, q = map(float, parts[1:])
            if p <= 0 or q <= 0:
                raise NormError("lorentz needs p, q > 0")
            return NormSpec("lorentz", p=p, q=q)
        if kind == "vlp":
            p0, p1 = map(float, parts[1:])
            if p0 < 1 or p1 < 0:
                raise NormError("vlp needs p0 >= 1, p1 >= 0")
            return NormSpec("vlp", exponent=(p0, p1))
        if kind == "mixed":
            p1, p2 = map(float, parts[1:])
            if p1 <= 0 or p2 <= 0:
                raise NormError("mixed needs p1, p2 > 0")
            return NormSpec("mixed", p=p1, p2=p2)
    except NormError:
        raise
    except Exception as exc:
        raise NormError(f"cannot parse norm spec {text!r}: {exc}") from exc
    raise NormError(f"unknown norm spec {text!r}")


def variable_exponent(spec: NormSpec, x: np.ndarray) -> np.ndarray:
    p0, p1 = spec.exponent
    return p0 + p1 * np.sin(x) ** 2


# ---------------------------------------------------------------------------
# scalar searches
# ---------------------------------------------------------------------------

def luxemburg_scale(modular, guess: float = 1.0, tol: float = 1e-13,
                    max_iter: int = 200) -> float:
    """Solve modular(lam) = 1 for a decreasing modular, by log-bisection."""
    lo = hi = max(guess, 1e-280)
    for _ in range(2200):
        if modular(hi) <= 1.0:
            break
        hi *= 4.0
    else:
        raise BracketError("luxemburg: no upper bracket")
    for _ in range(2200):
        if modular(lo) >= 1.0:
            break
        lo /= 4.0
        if lo < 1e-290:
            return 0.0
    for _ in range(max_iter):
        mid = math.sqrt(lo * hi)
        if modular(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * hi:
            break
    return math.sqrt(lo * hi)


_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def sharp_minimize(g, kappa0: float, tol: float = 1e-12,
                   max_doublings: int = 60):
    """Minimize g(kappa) over kappa > 0 by golden section on ln(kappa).

    Returns (value, kappa, boundary) where boundary marks a minimum pushed
    to the right bracket end (g still decreasing after max_doublings, which
    happens for Orlicz functions of linear growth).
    """
    u0 = math.log(kappa0)
    lo, hi = u0, u0
    glo = ghi = g(math.exp(u0))
    # walk left until the value rises (it must: g >= 1/kappa); a rise only
    # counts beyond rounding noise so ulp wiggles on a flat tail are ignored
    step = 1.0
    rise = lambda new, old: new > old * (1.0 + 1e-12)
    for _ in range(max_doublings):
        cand = lo - step
        val = g(math.exp(cand))
        if rise(val, glo):
            left = cand
            break
        lo, glo = cand, val
    else:
        raise BracketError("sharp norm: no left bracket")
    # walk right until the value rises; if it never does, boundary optimum
    boundary = False
    for _ in range(max_doublings):
        cand = hi + step
        val = g(math.exp(cand))
        if rise(val, ghi):
            right = cand
            break
        hi, ghi = cand, val
    else:
        boundary = True
        right = hi
    if boundary:
        return ghi, math.exp(hi), True
    a, b = left, right
    for _ in range(400):
        if b - a <= tol:
            break
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        if g(math.exp(c)) < g(math.exp(d)):
            b = d
        else:
            a = c
    u = 0.5 * (a + b)
    return g(math.exp(u)), math.exp(u), False


# ---------------------------------------------------------------------------
# continuous norms
# ---------------------------------------------------------------------------

def continuous_norm(f: SampledFunction, spec: NormSpec) -> float:
    """Norm of a sampled function against its grid's measure."""
    v = np.abs(np.asarray(f.values))
    if isinstance(f.grid, TensorGrid):
        if spec.kind == "mixed":
            return _mixed_norm(v, f.grid, spec.p, spec.p2)
        if spec.kind in ("lp", "orlicz", "lorentz", "linf"):
            w = np.multiply.outer(f.grid.axes[0].weights,
                                  f.grid.axes[1].weights)
            return _measure_norm(v.ravel(), w.ravel(), spec)
        raise NormError(f"{spec.kind} norm not defined on tensor grids")
    _check_measure(f.grid, spec)
    if spec.kind == "vlp":
        if not v.any():
            return 0.0
        px = variable_exponent(spec, f.grid.points)
        return luxemburg_scale(
            lambda lam: float(f.grid.weights @ (v / lam) ** px),
            guess=float(v.max()))
    return _measure_norm(v, f.grid.weights, spec)


def _measure_norm(v, w, spec: NormSpec) -> float:
    """Rearrangement/measure-based norms shared by dense and tensor grids."""
    if spec.kind in ("lp", "wlp"):
        return _power_norm(v, w, spec.p)
    if spec.kind == "linf":
        return float(v.max())
    if spec.kind == "orlicz":
        if spec.mode == "sharp":
            val, _, _ = _sharp_norm(v, w, spec.phi)
            return val
        return _luxemburg_norm(v, w, spec.phi)
    if spec.kind == "lorentz":
        sv, cw = rearrangement(v, w)
        return lorentz_from_rearrangement(spec.p, spec.q, sv, cw)
    raise NormError(f"unknown norm spec kind {spec.kind!r}")


def _check_measure(grid: QuadratureGrid, spec: NormSpec):
    gw = getattr(grid, "weight", CONST_WEIGHT)
    if spec.kind == "wlp":
        if gw != spec.weight:
            raise NormError(
                f"grid measure {gw} does not match weighted spec {spec.weight}")
    elif gw != CONST_WEIGHT:
        raise NormError(f"spec {spec.kind} needs a Lebesgue grid, got {gw}")


def _power_norm(v, w, p) -> float:
    if math.isinf(p):
        return float(v.max())
    s = v.max()
    if s == 0.0:
        return 0.0
    return float(s * (w @ (v / s) ** p) ** (1.0 / p))


def _mixed_norm(v, grid: TensorGrid, p1, p2) -> float:
    w1, w2 = grid.axes[0].weights, grid.axes[1].weights
    inner = (w1 @ v ** p1) ** (1.0 / p1)          # integrate x1 first
    return float((w2 @ inner ** p2) ** (1.0 / p2))


def _luxemburg_norm(v, w, phi) -> float:
    if not v.any():
        return 0.0
    return luxemburg_scale(lambda lam: float(w @ phi(v / lam)),
                           guess=float(v.max()))


def _sharp_norm(v, w, phi):
    if not v.any():
        return 0.0, 0.0, False
    scale = float((w @ v) / w.sum()) or float(v.max())
    return sharp_minimize(lambda k: (1.0 + float(w @ phi(k * v))) / k,
                          kappa0=1.0 / scale)


def orlicz_sharp_norm(f: SampledFunction, phi: OrliczFunction) -> float:
    """inf_k (1 + integral Phi(k f) dmu) / k (the dual Orlicz norm)."""
    val, _, _ = orlicz_sharp_norm_ex(f, phi)
    return val


def orlicz_sharp_norm_ex(f: SampledFunction, phi: OrliczFunction):
    """Sharp norm plus (kappa, boundary-optimum flag)."""
    v = np.abs(np.asarray(f.values)).ravel()
    if isinstance(f.grid, TensorGrid):
        w = np.multiply.outer(f.grid.axes[0].weights,
                              f.grid.axes[1].weights).ravel()
    else:
        w = f.grid.weights
    val, kappa, boundary = _sharp_norm(v, w, phi)
    return val, kappa, boundary


# ---------------------------------------------------------------------------
# rearrangement / Lorentz
# ---------------------------------------------------------------------------

def rearrangement(values, weights):
    """Decreasing rearrangement of |values| with ties kept in input order.

    Returns (sorted_abs_values, cumulative_weights); the step function equal
    to sorted[i] on (cum[i-1], cum[i]] is equimeasurable with the input.
    """
    v = np.abs(np.asarray(values)).ravel()
    w = np.asarray(weights, dtype=float).ravel()
    if np.any(w <= 0):
        raise NormError("rearrangement weights must be positive")
    order = np.lexsort((np.arange(len(v)), -v))
    return v[order], np.cumsum(w[order])


def lorentz_from_rearrangement(p: float, q: float, sorted_vals,
                               cum_weights) -> float:
    """||f||_{p,q}^q = sum v_i^q * (p/q) (T_i^{q/p} - T_{i-1}^{q/p})."""
    t = np.concatenate(([0.0], cum_weights))
    blocks = (p / q) * (t[1:] ** (q / p) - t[:-1] ** (q / p))
    s = sorted_vals.max(initial=0.0)
    if s == 0.0:
        return 0.0
    return float(s * ((sorted_vals / s) ** q @ blocks) ** (1.0 / q))


# ---------------------------------------------------------------------------
# discretized (sampling) norms
# ---------------------------------------------------------------------------

def cell_measures(cells, weight: tuple = CONST_WEIGHT,
                  tol: float = 1e-12) -> np.ndarray:
    """Measures of half-open cells [lo, hi); rejects overlapping cells."""
    cells = np.asarray(cells, dtype=float)
    if cells.ndim != 2 or cells.shape[1] != 2:
        raise NormError("cells must be an (N, 2) array of [lo, hi)")
    if np.any(cells[:, 1] <= cells[:, 0]):
        raise NormError("cells must have positive measure")
    order = np.argsort(cells[:, 0])
    lo, hi = cells[order, 0], cells[order, 1]
    if np.any(lo[1:] < hi[:-1] - tol):
        raise NormError("cells overlap beyond tolerance")
    if weight == CONST_WEIGHT:
        return cells[:, 1] - cells[:, 0]
    return np.array([weight_cell_mass(weight, a, b) for a, b in cells])


def discrete_mz_norm(values, cells, spec: NormSpec, *,
                     measures=None) -> float:
    """Norm of the simple function sum_k |F(x_k)| chi_{cell_k}.

    Closed form per spec variant; no dense grid is involved.  cells is an
    (N, 2) array of disjoint half-open intervals (2-D callers pass the
    precomputed box measures instead).
    """
    v = np.abs(np.asarray(values, dtype=complex)).ravel()
    if measures is None:
        measures = cell_measures(cells, spec.weight
                                 if spec.kind == "wlp" else CONST_WEIGHT)
    m = np.asarray(measures, dtype=float).ravel()
    if len(v) != len(m):
        raise NormError("values and cells must align")
    if spec.kind == "vlp":
        return _vlp_step_norm(v, np.asarray(cells, dtype=float), spec)
    if spec.kind == "mixed":
        raise NormError("discrete norm not defined for mixed specs")
    return _measure_norm(v, m, spec)


def _vlp_step_norm(v, cells, spec, q: int = 8) -> float:
    """Variable-exponent norm of a step function via per-cell panels."""
    if not v.any():
        return 0.0
    x, w = np.polynomial.legendre.leggauss(q)
    mid = 0.5 * (cells[:, 0] + cells[:, 1])
    half = 0.5 * (cells[:, 1] - cells[:, 0])
    pts = mid[:, None] + half[:, None] * x[None, :]
    px = variable_exponent(spec, pts % TWO_PI)
    wts = half[:, None] * w[None, :]

    def modular(lam):
        return float(np.sum(wts * (v[:, None] / lam) ** px))

    return luxemburg_scale(modular, guess=float(v.max()))


def discrete_orlicz_sharp_norm(values, m: int, phi: OrliczFunction):
    """Sharp norm of node values with the canonical (2 pi / m) node weight.

    Returns (value, boundary-optimum flag).
    """
    if m < 1:
        raise NormError("need at least one node")
    v = np.abs(np.asarray(values, dtype=complex)).ravel()
    w = np.full(len(v), TWO_PI / m)
    val, _, boundary = _sharp_norm(v, w, phi)
    return val, boundary


def chi_norm(spec: NormSpec, measure: float, point: float = 0.0) -> float:
    """Norm of the indicator of a set of the given measure.

    For the variable-exponent space the set is anchored at the given point
    (the norm is not rearrangement invariant).
    """
    if measure <= 0:
        return 0.0
    if spec.kind in ("lp", "wlp"):
        return measure ** (1.0 / spec.p)
    if spec.kind == "linf":
        return 1.0
    if spec.kind == "orlicz":
        if spec.mode == "sharp":
            val, _, _ = _sharp_norm(np.ones(1), np.array([measure]), spec.phi)
            return val
        return 1.0 / spec.phi.inverse(1.0 / measure)
    if spec.kind == "lorentz":
        return lorentz_from_rearrangement(spec.p, spec.q, np.ones(1),
                                          np.array([measure]))
    if spec.kind == "vlp":
        cells = np.array([[point, point + measure]])
        return _vlp_step_norm(np.ones(1), cells, spec)
    if spec.kind == "mixed":
        side = math.sqrt(measure)
        return side ** (1.0 / spec.p) * side ** (1.0 / spec.p2)
    raise NormError(spec.kind)
