"""Function families: representation, evaluation, differentiation, random draws.

Four families are supported, each an immutable value object:

* :class:`TrigPoly` -- trigonometric polynomials on the 2*pi torus (1-D or
  tensor 2-D), coefficients indexed k = -n..n;
* :class:`AlgPoly` -- algebraic polynomials in the Chebyshev basis of an
  interval [a, b];
* :class:`PeriodicSpline` -- 1-periodic splines of order r (degree r-1) with
  uniform knots j/n, stored in the cardinal B-spline basis;
* :class:`ExpSum` -- exponential sums sum c_j e^{lambda_j t} on [a, b], with a
  power-basis variant (sum c_j x^{lambda_j}, evaluated as exp(lambda_j ln x),
  domain restricted to 0 < a < b).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """A point falls outside the model's domain."""


class UnsupportedOrderError(ValueError):
    """Requested derivative order exceeds the family's smoothness."""


# ---------------------------------------------------------------------------
# model types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrigPoly:
    """T(x) = sum_{k=-n..n} c_k e^{ikx}; 2-D uses a (2n+1) x (2n+1) tensor."""

    coeffs: np.ndarray
    d: int = 1

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "coeffs", c)
        if self.d == 1:
            if c.ndim != 1 or len(c) % 2 != 1:
                raise ValueError("1-D coefficients must have odd length 2n+1")
        elif self.d == 2:
            if c.ndim != 2 or c.shape[0] != c.shape[1] or c.shape[0] % 2 != 1:
                raise ValueError("2-D coefficients must be square odd-sized")
        else:
            raise ValueError("only d in {1, 2}")

    @property
    def n(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    def is_real_valued(self, tol: float = 1e-12) -> bool:
        c = self.coeffs
        flipped = c[::-1] if self.d == 1 else c[::-1, ::-1]
        scale = np.abs(c).max() or 1.0
        return bool(np.abs(flipped.conj() - c).max() <= tol * scale)


@dataclass(frozen=True)
class AlgPoly:
    """P(x) = sum a_k T_k(t), t the affine map of [a, b] onto [-1, 1]."""

    cheb: np.ndarray
    a: float = -1.0
    b: float = 1.0

    def __post_init__(self):
        c = np.ascontiguousarray(self.cheb, dtype=float)
        object.__setattr__(self, "cheb", c)
        if c.ndim != 1 or len(c) == 0:
            raise ValueError("need at least one Chebyshev coefficient")
        if not self.b > self.a:
            raise ValueError("domain requires b > a")

    @property
    def n(self) -> int:
        return len(self.cheb) - 1


@dataclass(frozen=True)
class PeriodicSpline:
    """1-periodic spline of order r (degree r-1, r >= 2), knots j/n."""

    order: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", c)
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if c.ndim != 1 or len(c) < self.order:
            raise ValueError("need n >= r B-spline coefficients")

    @property
    def n(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class ExpSum:
    """sum c_j e^{lambda_j t} on [a, b]; power basis when muntz is set."""

    lambdas: np.ndarray
    coeffs: np.ndarray
    a: float = 0.0
    b: float = 1.0
    muntz: bool = False

    def __post_init__(self):
        lam = np.ascontiguousarray(self.lambdas, dtype=float)
        c = np.ascontiguousarray(self.coeffs, dtype=complex)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "coeffs", c)
        if lam.ndim != 1 or len(lam) != len(c):
            raise ValueError("lambdas and coeffs must match in length")
        if np.any(np.diff(lam) <= 0):
            raise ValueError("lambdas must be strictly increasing")
        if not self.b > self.a:
            raise ValueError("domain requires b > a")
        if self.muntz and not self.a > 0:
            raise DomainError("power basis requires 0 < a < b")

    @property
    def n(self) -> int:
        return len(self.lambdas) - 1


FunctionModel = TrigPoly | AlgPoly | PeriodicSpline | ExpSum


def domain_of(model: FunctionModel) -> tuple[float, float] | str:
    """Natural domain: 'torus' for TrigPoly, [0,1) for splines, else (a, b)."""
    if isinstance(model, TrigPoly):
        return "torus"
    if isinstance(model, PeriodicSpline):
        return "unit_torus"
    return (model.a, model.b)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _cardinal_bspline(r: int, t: np.ndarray) -> np.ndarray:
    """Cardinal B-spline of order r, supported on [0, r), right-continuous."""
    if r == 1:
        return ((t >= 0.0) & (t < 1.0)).astype(float)
    return (t * _cardinal_bspline(r - 1, t)
            + (r - t) * _cardinal_bspline(r - 1, t - 1.0)) / (r - 1)


def evaluate(model: FunctionModel, points) -> np.ndarray:
    """Evaluate the model at the given points (complex for TrigPoly/ExpSum)."""
    x = np.asarray(points, dtype=float)
    if isinstance(model, TrigPoly):
        if model.d == 1:
            return _kernels.trig_eval(model.coeffs, x)
        return _trig_eval_2d(model.coeffs, x)
    if isinstance(model, AlgPoly):
        _check_interval(x, model.a, model.b)
        t = (2.0 * x - (model.a + model.b)) / (model.b - model.a)
        t = np.clip(t, -1.0, 1.0)
        return _kernels.cheb_eval(model.cheb, t)
    if isinstance(model, PeriodicSpline):
        return _spline_eval(model, x)
    if isinstance(model, ExpSum):
        _check_interval(x, model.a, model.b)
        if model.muntz:
            expo = np.log(x)[..., None] * model.lambdas
        else:
            expo = x[..., None] * model.lambdas
        return np.exp(expo) @ model.coeffs
    raise TypeError(f"not a FunctionModel: {type(model)!r}")


def _check_interval(x, a, b, tol=1e-12):
    pad = tol * (abs(a) + abs(b) + 1.0)
    if np.any(x < a - pad) or np.any(x > b + pad):
        raise DomainError(f"points outside [{a}, {b}]")


def _trig_eval_2d(coeffs, pts):
    pts = np.atleast_2d(pts)
    if pts.shape[-1] != 2:
        raise ValueError("2-D evaluation expects points of shape (..., 2)")
    n = (coeffs.shape[0] - 1) // 2
    k = np.arange(-n, n + 1)
    e1 = np.exp(1j * np.multiply.outer(pts[..., 0], k))
    e2 = np.exp(1j * np.multiply.outer(pts[..., 1], k))
    return np.einsum("...j,jk,...k->...", e1, coeffs, e2)


def _spline_eval(model: PeriodicSpline, x: np.ndarray) -> np.ndarray:
    r, n = model.order, model.n
    u = (np.asarray(x, dtype=float) % 1.0) * n
    base = np.floor(u).astype(int)
    acc = np.zeros_like(u, dtype=float)
    for i in range(r):
        j = (base - i) % n
        acc += model.coeffs[j] * _cardinal_bspline(r, u - (base - i))
    return acc


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------

def _cheb_der(c: np.ndarray) -> np.ndarray:
    """Derivative coefficients of a Chebyshev series on [-1, 1]."""
    m = len(c) - 1
    if m == 0:
        return np.zeros(1)
    d = np.zeros(m)
    for k in range(m, 0, -1):
        if k + 1 <= m - 1:
            d[k - 1] = d[k + 1] + 2.0 * k * c[k]
        else:
            d[k - 1] = 2.0 * k * c[k]
    d[0] /= 2.0
    return d


def differentiate(model: FunctionModel, order: int = 1, *,
                  piecewise: bool = False) -> FunctionModel:
    """Return the order-th derivative in the same representation family.

    Splines admit classical derivatives up to order r-2; order r-1 is the
    piecewise-constant derivative and must be requested with piecewise=True
    (it is evaluated one-sidedly from the right at the knots).
    """
    if order < 1:
        raise ValueError("order must be a positive integer")
    if isinstance(model, TrigPoly):
        if model.d != 1:
            raise UnsupportedOrderError("use axis derivatives for 2-D models")
        k = np.arange(-model.n, model.n + 1)
        return TrigPoly(model.coeffs * (1j * k) ** order)
    if isinstance(model, AlgPoly):
        c = model.cheb
        scale = 2.0 / (model.b - model.a)
        for _ in range(order):
            c = _cheb_der(c) * scale
        return AlgPoly(c, model.a, model.b)
    if isinstance(model, PeriodicSpline):
        r = model.order
        allowed = r - 2 if not piecewise else r - 1
        if order > allowed:
            raise UnsupportedOrderError(
                f"order {order} exceeds smoothness of an order-{r} spline"
                + ("" if piecewise else " (pass piecewise=True for r-1)"))
        c = model.coeffs
        for step in range(order):
            c = (c - np.roll(c, 1)) * model.n
        return PeriodicSpline(r - order, c)
    if isinstance(model, ExpSum):
        if not model.muntz:
            return replace(model, coeffs=model.coeffs * model.lambdas ** order)
        lam = model.lambdas
        fall = np.ones(len(lam))
        for i in range(order):
            fall = fall * (lam - i)
        return replace(model, lambdas=lam - order, coeffs=model.coeffs * fall)
    raise TypeError(f"not a FunctionModel: {type(model)!r}")


def partial_derivative(model: TrigPoly, axis: int, order: int = 1) -> TrigPoly:
    """Coordinate partial derivative of a 2-D trigonometric polynomial."""
    if not (isinstance(model, TrigPoly) and model.d == 2):
        raise TypeError("partial_derivative expects a 2-D TrigPoly")
    k = (1j * np.arange(-model.n, model.n + 1)) ** order
    c = model.coeffs * (k[:, None] if axis == 0 else k[None, :])
    return TrigPoly(c, d=2)


# ---------------------------------------------------------------------------
# random models and misc
# ---------------------------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    """Counter-based generator (Philox 4x64) so draws are platform-stable."""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def random_model(family: str, n: int, seed, *, real_valued: bool = False,
                 d: int = 1, r: int = 3, lambdas=None, domain=(0.0, 1.0),
                 muntz: bool = False) -> FunctionModel:
    """Draw a random model with i.i.d. standard complex normal coefficients.

    Deterministic for a fixed (family, n, seed); real-coefficient families
    use standard real normals.  real_valued conjugate-symmetrizes the
    trigonometric coefficients.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    g = _rng(seed)
    if family == "trig":
        if d == 1:
            c = _complex_normal(g, 2 * n + 1)
            if real_valued:
                c[n] = c[n].real * math.sqrt(2.0)
                c[:n] = c[2 * n:n:-1].conj()
            return TrigPoly(c)
        if d == 2:
            c = _complex_normal(g, (2 * n + 1) ** 2).reshape(2 * n + 1, -1)
            if real_valued:
                c = (c + c[::-1, ::-1].conj()) / 2.0
            return TrigPoly(c, d=2)
        raise ValueError("trig supports d in {1, 2}")
    if family == "alg":
        return AlgPoly(g.standard_normal(n + 1))
    if family == "spline":
        return PeriodicSpline(r, g.standard_normal(n))
    if family in ("expsum", "muntz"):
        lam = np.arange(n + 1, dtype=float) if lambdas is None else np.asarray(
            lambdas, dtype=float)
        c = _complex_normal(g, len(lam))
        if real_valued:
            c = c.real.astype(complex) * math.sqrt(2.0)
        is_muntz = muntz or family == "muntz"
        a, b = domain if not is_muntz or domain[0] > 0 else (0.5, 2.0)
        return ExpSum(lam, c, a, b, muntz=is_muntz)
    raise ValueError(f"unknown family {family!r}")


def _complex_normal(g: np.random.Generator, size) -> np.ndarray:
    z = g.standard_normal(size) + 1j * g.standard_normal(size)
    return z / math.sqrt(2.0)


def gamma_lambda(lambdas) -> float:
    """Growth parameter n^2 + sum(lambda_j) of an exponent set of size n+1."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or len(lam) == 0:
        raise ValueError("need a non-empty 1-D exponent set")
    if np.any(np.diff(lam) <= 0):
        raise ValueError("exponents must be strictly increasing")
    n = len(lam) - 1
    return float(n * n + lam.sum())


def scale_model(model: FunctionModel, alpha: complex) -> FunctionModel:
    """alpha * model, same family."""
    if isinstance(model, (TrigPoly, PeriodicSpline)):
        return replace(model, coeffs=model.coeffs * alpha)
    if isinstance(model, AlgPoly):
        return replace(model, cheb=model.cheb * alpha)
    return replace(model, coeffs=model.coeffs * alpha)


def add_models(f: FunctionModel, g: FunctionModel) -> FunctionModel:
    """f + g for two models of the same family and shape."""
    if type(f) is not type(g):
        raise TypeError("can only add models of the same family")
    if isinstance(f, TrigPoly):
        if f.coeffs.shape != g.coeffs.shape:
            nmax = max(f.n, g.n)
            return add_models(_pad_trig(f, nmax), _pad_trig(g, nmax))
        return TrigPoly(f.coeffs + g.coeffs, d=f.d)
    if isinstance(f, AlgPoly):
        m = max(len(f.cheb), len(g.cheb))
        c = np.zeros(m)
        c[:len(f.cheb)] += f.cheb
        c[:len(g.cheb)] += g.cheb
        return AlgPoly(c, f.a, f.b)
    if isinstance(f, PeriodicSpline):
        if (f.order, f.n) != (g.order, g.n):
            raise ValueError("splines must share order and knot count")
        return PeriodicSpline(f.order, f.coeffs + g.coeffs)
    if isinstance(f, ExpSum):
        if not np.array_equal(f.lambdas, g.lambdas) or f.muntz != g.muntz:
            raise ValueError("exponential sums must share exponents")
        return replace(f, coeffs=f.coeffs + g.coeffs)
    raise TypeError(type(f))


def _pad_trig(t: TrigPoly, n: int) -> TrigPoly:
    if t.d != 1:
        raise ValueError("padding implemented for 1-D only")
    c = np.zeros(2 * n + 1, dtype=complex)
    c[n - t.n:n + t.n + 1] = t.coeffs
    return TrigPoly(c)
