"""Dense quadrature grids: the numerical oracle for continuous norms.

Grid weights always represent the *measure* of the target space, so a norm
is a plain weighted reduction of sampled values:

* torus grids are periodic trapezoid rules (spectrally exact for
  trigonometric polynomials below the grid's Nyquist frequency);
* unweighted intervals use composite Gauss-Legendre panels;
* Jacobi-weighted intervals (1-x)^alpha (1+x)^beta are integrated through
  the substitution x = cos(theta), which turns the weight into
  2^(a+b+1) sin^(2a+1)(theta/2) cos^(2b+1)(theta/2) -- analytic for the
  half-integer catalog exponents -- on geometrically graded panels;
* the periodic toy weight |sin x|^gamma is folded into trapezoid weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * np.pi

Weight = tuple  # ("const",) | ("jacobi", a, b) | ("sinabs", g)
CONST_WEIGHT: Weight = ("const",)


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureGrid:
    """Point set plus weights integrating against the grid's measure."""

    points: np.ndarray
    weights: np.ndarray
    domain: str                 # "torus" | "unit_torus" | "interval"
    bounds: tuple = (0.0, TWO_PI)
    weight: Weight = CONST_WEIGHT
    oversample: float = 0.0     # points per unit target degree, informational

    def __post_init__(self):
        p = np.ascontiguousarray(self.points, dtype=float)
        w = np.ascontiguousarray(self.weights, dtype=float)
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "weights", w)
        if len(p) == 0 or len(p) != len(w):
            raise GridError("points/weights must be non-empty and aligned")
        if np.any(w <= 0):
            raise GridError("weights must be positive")

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def period(self) -> float:
        return {"torus": TWO_PI, "unit_torus": 1.0}.get(self.domain, 0.0)

    def integrate(self, values) -> complex:
        return np.asarray(values).ravel() @ self.weights


@dataclass(frozen=True)
class TensorGrid:
    """Tensor product of two 1-D torus grids (for mixed-norm work)."""

    axes: tuple[QuadratureGrid, QuadratureGrid]

    @property
    def shape(self):
        return tuple(g.size for g in self.axes)

    def mesh(self):
        x, y = (g.points for g in self.axes)
        return np.stack(np.meshgrid(x, y, indexing="ij"), axis=-1)

    def integrate(self, values) -> complex:
        v = np.asarray(values)
        return self.axes[0].weights @ v @ self.axes[1].weights


@dataclass(frozen=True)
class SampledFunction:
    """Values of a function on a quadrature grid."""

    values: np.ndarray
    grid: QuadratureGrid | TensorGrid

    def __post_init__(self):
        v = np.asarray(self.values)
        object.__setattr__(self, "values", v)
        shape = (self.grid.shape if isinstance(self.grid, TensorGrid)
                 else (self.grid.size,))
        if v.shape != shape:
            raise GridError(f"values shape {v.shape} != grid shape {shape}")
        if not np.all(np.isfinite(v)):
            raise GridError("values must be finite")


def sample(model_or_fn, grid):
    """Sample a FunctionModel or plain callable on a grid."""
    from . import models
    if isinstance(grid, TensorGrid):
        pts = grid.mesh()
    else:
        pts = grid.points
    if callable(model_or_fn) and not hasattr(model_or_fn, "coeffs"):
        vals = model_or_fn(pts)
    else:
        vals = models.evaluate(model_or_fn, pts)
    return SampledFunction(np.asarray(vals), grid)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def default_size(n: int) -> int:
    """Default dense-grid size for target degree n."""
    return max(4096, 64 * int(n))


def trapezoid_grid(m: int, period: float = TWO_PI,
                   oversample: float = 0.0) -> QuadratureGrid:
    pts = np.arange(m) * (period / m)
    w = np.full(m, period / m)
    domain = "torus" if period == TWO_PI else "unit_torus"
    return QuadratureGrid(pts, w, domain, (0.0, period), CONST_WEIGHT,
                          oversample)


def torus_grid_for_degree(n: int, m: int | None = None) -> QuadratureGrid:
    m = default_size(n) if m is None else m
    return trapezoid_grid(m, oversample=m / max(n, 1))


def tensor_trapezoid_grid(m: int) -> TensorGrid:
    return TensorGrid((trapezoid_grid(m), trapezoid_grid(m)))


@lru_cache(maxsize=64)
def _leg_nodes(q: int):
    x, w = np.polynomial.legendre.leggauss(q)
    return x, w


def _panels_to_grid(edges: np.ndarray, q: int):
    """Composite q-point Gauss-Legendre rule over consecutive panel edges."""
    x, w = _leg_nodes(q)
    lo, hi = edges[:-1], edges[1:]
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    return pts, wts


def legendre_panel_grid(m: int, a: float, b: float, q: int = 16) -> QuadratureGrid:
    """Composite Gauss-Legendre grid with >= m points on [a, b]."""
    k = max(1, -(-m // q))
    edges = np.linspace(a, b, k + 1)
    pts, wts = _panels_to_grid(edges, q)
    return QuadratureGrid(pts, wts, "interval", (a, b))


def interval_grid_for_degree(n: int, a: float, b: float) -> QuadratureGrid:
    g = legendre_panel_grid(default_size(n), a, b)
    return QuadratureGrid(g.points, g.weights, "interval", (a, b),
                          CONST_WEIGHT, g.size / max(n, 1))


def _graded_theta_edges(degree: int, levels: int = 52) -> np.ndarray:
    """Panel edges on [0, pi]: geometric stacks at both ends, uniform middle.

    The middle panel count scales with the target polynomial degree so each
    panel sees at most ~2 oscillations of cos(k theta), k <= degree.
    """
    mid_panels = max(8, int(0.75 * degree) + 8)
    stack = np.pi / 2.0 ** np.arange(2, levels + 2)
    left = stack[::-1]                       # ascending tiny -> pi/4
    inner = np.linspace(np.pi / 4, 3 * np.pi / 4, mid_panels + 1)
    right = np.pi - stack                    # ascending 3pi/4 -> pi - tiny
    edges = np.concatenate(([0.0], left, inner[1:-1], right, [np.pi]))
    return np.unique(edges)


def jacobi_weighted_grid(degree: int, alpha: float, beta: float,
                         q: int = 12) -> QuadratureGrid:
    """Grid on (-1, 1) whose weights integrate against (1-x)^a (1+x)^b dx.

    Accurate to ~1e-12 for alpha, beta >= -1/2 (the catalog range); for
    exponents in (-1, -1/2) the graded stacks still converge but only to
    roughly 1e-8.
    """
    if alpha <= -1 or beta <= -1:
        raise GridError("Jacobi exponents must exceed -1")
    edges = _graded_theta_edges(degree)
    # panel sizes follow the local oscillation count of cos(degree * theta)
    pts_list, wts_list = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        qq = max(q, int(0.7 * degree * (hi - lo)) + q)
        x, w = _leg_nodes(qq)
        th = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
        ww = 0.5 * (hi - lo) * w
        pts_list.append(th)
        wts_list.append(ww)
    theta = np.concatenate(pts_list)
    wth = np.concatenate(wts_list)
    s, c = np.sin(theta / 2.0), np.cos(theta / 2.0)
    jac = 2.0 ** (alpha + beta + 1) * s ** (2 * alpha + 1) * c ** (2 * beta + 1)
    x = np.cos(theta)
    order = np.argsort(x)
    return QuadratureGrid(x[order], (wth * jac)[order], "interval",
                          (-1.0, 1.0), ("jacobi", float(alpha), float(beta)))


def sinabs_weighted_grid(m: int, gamma: float) -> QuadratureGrid:
    """Trapezoid grid on the torus with the toy doubling weight |sin x|^g."""
    base = trapezoid_grid(m)
    # offset half a step so the weight's zeros fall between nodes
    pts = base.points + np.pi / m
    w = base.weights * np.abs(np.sin(pts)) ** gamma
    return QuadratureGrid(pts, w, "torus", (0.0, TWO_PI),
                          ("sinabs", float(gamma)))


def grid_for_weight(weight: Weight, degree: int,
                    bounds=None) -> QuadratureGrid:
    """Measure-matched grid for a weight-catalog entry."""
    if weight == CONST_WEIGHT or weight is None:
        if bounds is None:
            return torus_grid_for_degree(degree)
        return interval_grid_for_degree(degree, *bounds)
    kind = weight[0]
    if kind == "jacobi":
        return jacobi_weighted_grid(max(4 * degree + 16, 64), *weight[1:])
    if kind == "sinabs":
        return sinabs_weighted_grid(default_size(degree), weight[1])
    raise GridError(f"unknown weight {weight!r}")


def weight_cell_mass(weight: Weight, lo: float, hi: float, q: int = 32) -> float:
    """Measure of the cell [lo, hi] under a catalog weight."""
    if hi <= lo:
        return 0.0
    if weight == CONST_WEIGHT or weight is None:
        return hi - lo
    kind = weight[0]
    if kind == "jacobi":
        alpha, beta = weight[1], weight[2]
        t0, t1 = np.arccos(np.clip(hi, -1, 1)), np.arccos(np.clip(lo, -1, 1))
        x, w = _leg_nodes(q)
        th = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x
        s, c = np.sin(th / 2.0), np.cos(th / 2.0)
        jac = 2.0 ** (alpha + beta + 1) * s ** (2 * alpha + 1) * c ** (2 * beta + 1)
        return float(0.5 * (t1 - t0) * (w @ jac))
    if kind == "sinabs":
        x, w = _leg_nodes(q)
        # split at multiples of pi where |sin| kinks
        edges = [lo] + [t for t in np.arange(np.ceil(lo / np.pi) * np.pi, hi,
                                             np.pi)] + [hi]
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            if b <= a:
                continue
            t = 0.5 * (a + b) + 0.5 * (b - a) * x
            total += 0.5 * (b - a) * (w @ np.abs(np.sin(t)) ** weight[1])
        return float(total)
    raise GridError(f"unknown weight {weight!r}")


def weight_values(weight: Weight, x: np.ndarray) -> np.ndarray:
    if weight == CONST_WEIGHT or weight is None:
        return np.ones_like(x)
    if weight[0] == "jacobi":
        return (1.0 - x) ** weight[1] * (1.0 + x) ** weight[2]
    if weight[0] == "sinabs":
        return np.abs(np.sin(x)) ** weight[1]
    raise GridError(f"unknown weight {weight!r}")
