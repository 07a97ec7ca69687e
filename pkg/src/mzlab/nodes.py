"""Node/cell systems and Gauss-Jacobi quadrature.

Node systems pair ordered sample points with cells covering the domain
(multiplicity between 1 and c_d).  Gauss rules come from the symmetric
tridiagonal recurrence matrix; its eigen-decomposition is an in-module
implicit-shift QL iteration so the core has no external dependency, and the
Christoffel weights are first-eigenvector components scaled by the total
mass obtained from dense quadrature (not from a Gamma-function closed form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import grids
from .grids import CONST_WEIGHT, TWO_PI, weight_cell_mass


class NodeError(ValueError):
    pass


@dataclass(frozen=True)
class MeshGauges:
    delta: float        # min adjacent gap
    lam: float          # max adjacent gap

    def __post_init__(self):
        if not (0.0 < self.delta <= self.lam):
            raise NodeError("gauges require 0 < delta <= lambda")


@dataclass(frozen=True)
class NodeSystem:
    """Ordered nodes x_k with cells Omega_k (and optional reference cells)."""

    nodes: np.ndarray            # (N,) or (N, 2) for tensor systems
    cells: np.ndarray            # (N, 2) intervals or (N, 2, 2) boxes
    domain: str                  # "torus" | "unit_torus" | "interval"
    bounds: tuple = (0.0, TWO_PI)
    multiplicity: int = 1        # covering bound c_d
    weights: np.ndarray | None = None
    ref_cells: np.ndarray | None = None
    weight: tuple = CONST_WEIGHT
    meta: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.nodes)

    def cell_measures(self) -> np.ndarray:
        if self.cells.ndim == 3:
            side = self.cells[:, :, 1] - self.cells[:, :, 0]
            return side.prod(axis=1)
        if self.weight == CONST_WEIGHT:
            return self.cells[:, 1] - self.cells[:, 0]
        return np.array([weight_cell_mass(self.weight, lo, hi)
                         for lo, hi in self.cells])

    def to_csv_rows(self):
        """Rows (k, x_k, cell_lo, cell_hi, weight) for serialization."""
        w = self.weights if self.weights is not None else [""] * self.count
        for k in range(self.count):
            node = self.nodes[k]
            cell = self.cells[k]
            if np.ndim(node) > 0:
                node = ";".join(repr(float(v)) for v in node)
                lo = ";".join(repr(float(v)) for v in cell[:, 0])
                hi = ";".join(repr(float(v)) for v in cell[:, 1])
            else:
                lo, hi = cell[0], cell[1]
            yield (k, node, lo, hi, w[k])


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def equispaced_nodes(count: int, d: int = 1, offset: float = 0.0,
                     period: float = TWO_PI) -> NodeSystem:
    """Uniform partition with node anywhere inside its cell (offset in [0,1))."""
    if count < 1:
        raise NodeError("need at least one node per axis")
    if not 0.0 <= offset < 1.0:
        raise NodeError("offset must lie in [0, 1)")
    h = period / count
    edges = np.arange(count + 1) * h
    nodes1 = edges[:-1] + offset * h
    cells1 = np.stack([edges[:-1], edges[1:]], axis=1)
    domain = "torus" if period == TWO_PI else "unit_torus"
    if d == 1:
        return NodeSystem(nodes1, cells1, domain, (0.0, period))
    if d == 2:
        ii, jj = np.meshgrid(np.arange(count), np.arange(count),
                             indexing="ij")
        nodes = np.stack([nodes1[ii.ravel()], nodes1[jj.ravel()]], axis=1)
        boxes = np.stack([cells1[ii.ravel()], cells1[jj.ravel()]], axis=1)
        return NodeSystem(nodes, boxes, domain, (0.0, period))
    raise NodeError("only d in {1, 2}")


def minimal_trig_nodes(n: int, d: int = 1) -> NodeSystem:
    """The 2n+1 equispaced nodes t_k = 2 pi k / (2n+1) per axis."""
    return equispaced_nodes(2 * n + 1, d=d)


def perturbed_nodes(n: int, sigma: float, seed) -> NodeSystem:
    """Nodes jittered by at most sigma cells around the minimal grid.

    y_j is uniform on [2 pi (j - sigma)/(2n+1), 2 pi (j + sigma)/(2n+1));
    cells are the midpoint partition.  Deterministic per seed.
    """
    if not 0.0 < sigma < 0.25:
        raise NodeError("sigma must lie in (0, 1/4)")
    m = 2 * n + 1
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    g = np.random.Generator(np.random.Philox(seed))
    base = TWO_PI * np.arange(m) / m
    y = base + (TWO_PI / m) * g.uniform(-sigma, sigma, size=m)
    # windows are disjoint for sigma < 1/4, so y is strictly increasing;
    # y[0] may be slightly negative, which periodic evaluation handles
    mid = 0.5 * (y[:-1] + y[1:])
    wrap = 0.5 * (y[-1] + y[0] + TWO_PI)
    lo = np.concatenate(([wrap - TWO_PI], mid))
    hi = np.concatenate((mid, [wrap]))
    cells = np.stack([lo, hi], axis=1)
    return NodeSystem(y, cells, "torus", meta={"sigma": sigma})


def mesh_gauges(nodes, periodic: bool = True,
                period: float = TWO_PI) -> MeshGauges:
    """Min/max adjacent gaps, with wraparound tau_{m+1} = period + tau_1."""
    x = np.sort(np.asarray(nodes, dtype=float))
    if len(x) < 2:
        raise NodeError("need at least two nodes")
    gaps = np.diff(x)
    if periodic:
        gaps = np.append(gaps, period + x[0] - x[-1])
    if np.any(gaps <= 0):
        raise NodeError("duplicate nodes")
    return MeshGauges(float(gaps.min()), float(gaps.max()))


# ---------------------------------------------------------------------------
# Gauss-Jacobi quadrature
# ---------------------------------------------------------------------------

def jacobi_recurrence(n: int, alpha: float, beta: float):
    """Monic three-term recurrence coefficients (a_k, b_k), Gautschi style."""
    a = np.zeros(n)
    b = np.zeros(n)            # b[0] unused (total mass comes from quadrature)
    apb = alpha + beta
    a[0] = (beta - alpha) / (apb + 2.0)
    if n > 1:
        a[1] = (beta * beta - alpha * alpha) / ((apb + 2.0) * (apb + 4.0))
        b[1] = (4.0 * (alpha + 1.0) * (beta + 1.0)
                / ((apb + 2.0) ** 2 * (apb + 3.0)))
    for k in range(2, n):
        den = 2.0 * k + apb
        a[k] = (beta * beta - alpha * alpha) / (den * (den + 2.0))
        b[k] = (4.0 * k * (k + alpha) * (k + beta) * (k + apb)
                / (den * den * (den + 1.0) * (den - 1.0)))
    return a, b


def tridiag_eigen_first(diag, offdiag, max_sweeps: int = 60):
    """Eigenvalues of a symmetric tridiagonal matrix plus first-row vector
    components, by implicit-shift QL iteration.

    Returns (eigenvalues ascending, first components of the normalized
    eigenvectors in the same order).
    """
    d = np.asarray(diag, dtype=float).copy()
    n = len(d)
    e = np.zeros(n)
    e[:n - 1] = offdiag
    z = np.zeros(n)
    z[0] = 1.0
    eps = np.finfo(float).eps
    for l in range(n):
        iters = 0
        while True:
            m = n - 1
            for mm in range(l, n - 1):
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= eps * dd:
                    m = mm
                    break
            if m == l:
                break
            iters += 1
            if iters > max_sweeps:
                raise ArithmeticError("tridiagonal QL did not converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    idx = np.argsort(d)
    return d[idx], z[idx]


def gauss_jacobi(n: int, alpha: float, beta: float):
    """Gauss nodes (Jacobi-polynomial zeros) and Christoffel weights.

    Exact for polynomial integrands of degree <= 2n-1 against
    (1-x)^alpha (1+x)^beta on [-1, 1].
    """
    if n < 1:
        raise NodeError("need n >= 1 nodes")
    if alpha <= -1 or beta <= -1:
        raise NodeError("Jacobi exponents must exceed -1")
    a, b = jacobi_recurrence(n, alpha, beta)
    nodes, first = tridiag_eigen_first(a, np.sqrt(b[1:n])) if n > 1 else (
        a[:1].copy(), np.ones(1))
    mass = grids.jacobi_weighted_grid(max(2 * n, 32), alpha, beta).weights.sum()
    weights = mass * first ** 2
    return nodes, weights


def jacobi_polynomial_values(n: int, alpha: float, beta: float, x):
    """Monic Jacobi polynomial pi_n(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    a, b = jacobi_recurrence(max(n, 1), alpha, beta)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    for k in range(n):
        p_next = (x - a[k]) * p - (b[k] if k > 0 else 0.0) * p_prev
        p_prev, p = p, p_next
    return p


def orthonormal_jacobi_values(n: int, alpha: float, beta: float, x):
    """Orthonormal Jacobi polynomials psi_0..psi_n evaluated at x.

    Built from the monic recurrence; normalization constants come from the
    recurrence b_k and the dense-quadrature total mass.
    """
    x = np.asarray(x, dtype=float)
    a, b = jacobi_recurrence(n + 1, alpha, beta)
    mass = grids.jacobi_weighted_grid(max(2 * n + 2, 32), alpha,
                                      beta).weights.sum()
    out = np.empty((n + 1,) + x.shape)
    p_prev = np.zeros_like(x)
    p = np.ones_like(x)
    norm2 = mass                      # ||pi_0||^2 = b_0
    out[0] = p / math.sqrt(norm2)
    for k in range(n):
        p_next = (x - a[k]) * p - (b[k] if k > 0 else 0.0) * p_prev
        p_prev, p = p, p_next
        norm2 *= b[k + 1]             # ||pi_{k+1}||^2 = b_0 b_1 ... b_{k+1}
        out[k + 1] = p / math.sqrt(norm2)
    return out


def cms_cells(n: int, alpha: float, beta: float) -> NodeSystem:
    """Gauss nodes with the overlapping cells (x_{k-1}, x_{k+1}).

    The separation property mu_k <= integral of the weight over the cell is
    validated and reported in meta["cms_max_ratio"]; multiplicity is 2.
    """
    nodes, mu = gauss_jacobi(n, alpha, beta)
    aug = np.concatenate(([-1.0], nodes, [1.0]))
    cells = np.stack([aug[:-2], aug[2:]], axis=1)
    w = ("jacobi", float(alpha), float(beta))
    masses = np.array([weight_cell_mass(w, lo, hi) for lo, hi in cells])
    ratio = float((mu / masses).max())
    return NodeSystem(nodes, cells, "interval", (-1.0, 1.0), multiplicity=2,
                      weights=mu, weight=w,
                      meta={"cms_max_ratio": ratio, "alpha": alpha,
                            "beta": beta})


def chebyshev_like_nodes(N: int) -> NodeSystem:
    """Nodes x_j = cos((N-j) pi / N), j = 0..N, with midpoint cells.

    Node weights are a_j = integral of |sin t| over (t_j - 1/N, t_j + 1/N),
    the arc-length masses of the cosine-mapped uniform mesh.
    """
    if N < 2:
        raise NodeError("need N >= 2")
    j = np.arange(N + 1)
    t = (N - j) * np.pi / N
    x = np.cos(t)
    mid = 0.5 * (x[:-1] + x[1:])
    lo = np.concatenate(([-1.0], mid))
    hi = np.concatenate((mid, [1.0]))
    cells = np.stack([lo, hi], axis=1)
    a_j = np.array([_abs_sin_integral(tj - 1.0 / N, tj + 1.0 / N)
                    for tj in t])
    return NodeSystem(x, cells, "interval", (-1.0, 1.0), weights=a_j,
                      meta={"N": N})


def _abs_sin_integral(a: float, b: float) -> float:
    """integral of |sin t| dt, exactly, splitting at multiples of pi."""
    if b < a:
        return -_abs_sin_integral(b, a)
    total = 0.0
    k = math.floor(a / math.pi)
    lo = a
    while lo < b:
        hi = min(b, (k + 1) * math.pi)
        piece = abs(math.cos(lo) - math.cos(hi))
        total += piece
        lo = hi
        k += 1
    return total


# ---------------------------------------------------------------------------
# diagnostics
# ---------------------------------------------------------------------------

def covering_multiplicity(system: NodeSystem, probes: int = 10_000):
    """(min, max) of sum_k chi_{cell_k} over a dense probe grid."""
    if system.cells.ndim == 3:
        # tensor boxes: probe a coarser 2-D grid
        period = system.bounds[1]
        p = np.linspace(0, period, max(int(math.isqrt(probes)), 16),
                        endpoint=False)
        px, py = np.meshgrid(p, p, indexing="ij")
        counts = np.zeros(px.shape, dtype=int)
        for box in system.cells:
            counts += ((px >= box[0, 0]) & (px < box[0, 1])
                       & (py >= box[1, 0]) & (py < box[1, 1]))
        return int(counts.min()), int(counts.max())
    a, b = system.bounds
    counts = np.zeros(probes, dtype=int)
    if system.domain in ("torus", "unit_torus"):
        period = b - a
        p = np.linspace(a, b, probes, endpoint=False)
        for lo, hi in system.cells:
            counts += ((p - lo) % period) < (hi - lo)
    else:
        p = np.linspace(a, b, probes + 2)[1:-1]   # strictly interior probes
        for lo, hi in system.cells:
            counts += (p > lo) & (p < hi)
    return int(counts.min()), int(counts.max())
