"""Core laboratory: window maximal/minimal functions, contraction constants,
two-sided sampling-discretization ratios, the explicit-constant catalog,
inequality margin checks, and extremal-ratio search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, models, nodes as nodes_mod, norms, operators
from .grids import (QuadratureGrid, SampledFunction, TWO_PI,
                    grid_for_weight, torus_grid_for_degree, sample)
from .models import (AlgPoly, ExpSum, FunctionModel, PeriodicSpline, TrigPoly,
                     differentiate, evaluate)
from .norms import NormSpec, chi_norm, continuous_norm, discrete_mz_norm

E = math.e
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class EtaResult:
    value: float
    contractive: bool          # eta < 1, so the two-sided bound applies
    tail_bound: float = 0.0


@dataclass
class RatioReport:
    lower_ratio: float
    upper_ratio: float
    bound_low: float | None
    bound_high: float | None
    violations: int
    trials: int
    seed: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.trials and self.lower_ratio > self.upper_ratio:
            raise ValueError("lower_ratio must not exceed upper_ratio")
        if self.violations > self.trials:
            raise ValueError("violations cannot exceed trials")


# ---------------------------------------------------------------------------
# contraction constants
# ---------------------------------------------------------------------------

def eta_banach(A: float, B: float, d: int) -> EtaResult:
    """(1 + 2AB)^d - 1, the first-order window contraction constant."""
    if A <= 0 or B <= 0 or d < 1:
        raise ValueError("need A, B > 0 and d >= 1")
    val = (1.0 + 2.0 * A * B) ** d - 1.0
    return EtaResult(val, val < 1.0)


def eta_quasi(A: float, b_alpha, q: float, d: int, *, majorant: float,
              truncation: int = 60) -> EtaResult:
    """Taylor-series contraction constant for quasi-Banach lattices.

    Sums (A^{|a|} B_a / a!)^q over non-zero multi-indices a up to total
    order ``truncation``.  ``b_alpha`` is a scalar B (meaning B_a = B^{|a|})
    or a callable on the multi-index tuple; ``majorant`` must satisfy
    B_a <= majorant^{|a|} with A * majorant < 1 so the geometric tail bound
    certifies the truncation.
    """
    if not (0 < q <= 1) or d not in (1, 2):
        raise ValueError("need 0 < q <= 1 and d in {1, 2}")
    if A * majorant >= 1.0:
        raise ValueError("tail bound requires A * majorant < 1")
    if callable(b_alpha):
        get = b_alpha
    else:
        get = lambda a: float(b_alpha) ** sum(a)
    total = 0.0
    for r in range(1, truncation + 1):
        for a in _multi_indices(r, d):
            fact = math.prod(math.factorial(ai) for ai in a)
            total += (A ** r * get(a) / fact) ** q
    # counting bound: #{|a| = r} <= (r+1)^{d-1}, (1/a!)^q <= 1
    x = (A * majorant) ** q
    tail = 0.0
    r = truncation + 1
    term = (r + 1) ** (d - 1) * x ** r
    ratio_cap = 2.0 ** (d - 1) * x
    if ratio_cap < 1.0:
        tail = term / (1.0 - ratio_cap)
    else:
        while term > 1e-18 and r < 10_000:
            tail += term
            r += 1
            term = (r + 1) ** (d - 1) * x ** r
        tail += term / max(1e-9, 1.0 - x)
    return EtaResult(total, total + tail < 1.0, tail)


def _multi_indices(total: int, d: int):
    if d == 1:
        yield (total,)
    else:
        for i in range(total + 1):
            yield (i, total - i)


# ---------------------------------------------------------------------------
# window extrema
# ---------------------------------------------------------------------------

def golden_extremum(fn, lo, hi, iters: int = 40, mode: str = "max"):
    """Vectorized golden-section extremum of fn over brackets [lo, hi]."""
    a = np.array(lo, dtype=float, copy=True)
    b = np.array(hi, dtype=float, copy=True)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    better = np.greater if mode == "max" else np.less
    for _ in range(iters):
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        take_left = better(fn(c), fn(d))
        b = np.where(take_left, d, b)
        a = np.where(take_left, a, c)
    return fn(0.5 * (a + b))


def window_extrema(model: FunctionModel, centers, halfwidths, *,
                   subdiv: int = 64, polish: int = 40, clip=None):
    """Per-window max and min of |model| over [c - h, c + h].

    Windows are clipped to ``clip = (a, b)`` for interval families (periodic
    families wrap naturally).  Scans subdiv + 1 points per window, then
    polishes each extremum candidate by golden section.
    """
    centers = np.asarray(centers, dtype=float)
    halfwidths = np.broadcast_to(np.asarray(halfwidths, dtype=float),
                                 centers.shape).copy()
    if clip is not None:
        a, b = clip
        lo = np.maximum(centers - halfwidths, a)
        hi = np.minimum(centers + halfwidths, b)
        centers = 0.5 * (lo + hi)
        halfwidths = 0.5 * (hi - lo)
    if isinstance(model, TrigPoly) and model.d == 1:
        return _kernels.trig_window_extrema(model.coeffs, centers, halfwidths,
                                            subdiv, polish)
    fn = lambda x: np.abs(evaluate(model, x))
    s = np.linspace(-1.0, 1.0, subdiv + 1)
    pts = centers[:, None] + halfwidths[:, None] * s[None, :]
    vals = fn(pts.ravel()).reshape(pts.shape)
    maxv, minv = vals.max(axis=1), vals.min(axis=1)
    if polish > 0:
        idx = np.arange(len(centers))
        for which, best in (("max", vals.argmax(axis=1)),
                            ("min", vals.argmin(axis=1))):
            lo = pts[idx, np.maximum(best - 1, 0)]
            hi = pts[idx, np.minimum(best + 1, subdiv)]
            v = golden_extremum(fn, lo, hi, polish, which)
            if which == "max":
                maxv = np.maximum(maxv, v)
            else:
                minv = np.minimum(minv, v)
    return maxv, minv


def phi_weight(kind: str, x: np.ndarray, n: int) -> np.ndarray:
    """Window-width weight: 1, or sqrt(1 - x^2) + 1/n on [-1, 1]."""
    if kind in ("1", "one", "const"):
        return np.ones_like(x)
    if kind in ("sqrt1mx2", "endpoint"):
        return np.sqrt(np.maximum(0.0, 1.0 - x * x)) + 1.0 / n
    raise ValueError(f"unknown weight choice {kind!r}")


def max_min_function(model: FunctionModel, A: float, beta: float,
                     phi_kind: str, grid: QuadratureGrid, *,
                     subdiv: int = 64, polish: int = 40):
    """Sampled window-maximal and window-minimal functions of |model|.

    Window at x has half-width A * phi(x) / n^beta.  Interval families clip
    windows at the domain endpoints; periodic families wrap.
    """
    n = _degree_parameter(model)
    h = A * phi_weight(phi_kind, grid.points, n) / n ** beta
    clip = None
    if isinstance(model, (AlgPoly, ExpSum)):
        clip = (model.a, model.b)
    maxv, minv = window_extrema(model, grid.points, h,
                                subdiv=subdiv, polish=polish, clip=clip)
    return SampledFunction(maxv, grid), SampledFunction(minv, grid)


def _degree_parameter(model: FunctionModel) -> float:
    if isinstance(model, ExpSum):
        return models.gamma_lambda(model.lambdas) or 1.0
    return max(model.n, 1)


# ---------------------------------------------------------------------------
# sup norms with refinement
# ---------------------------------------------------------------------------

def sup_norm(model: FunctionModel, *, m: int | None = None,
             polish: int = 45) -> float:
    """Supremum of |model| over its domain: dense scan plus golden polish."""
    fn = lambda x: np.abs(evaluate(model, x))
    if isinstance(model, TrigPoly):
        if model.d == 2:
            g = np.linspace(0, TWO_PI, 256, endpoint=False)
            mesh = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1)
            return float(np.abs(evaluate(model, mesh.reshape(-1, 2))).max())
        m = m or max(1024, 64 * model.n)
        x = np.arange(m) * (TWO_PI / m)
        periodic = True
    elif isinstance(model, PeriodicSpline):
        m = m or max(256, 32 * model.n)
        x = np.arange(m) / m
        x = np.sort(np.concatenate([x, np.arange(model.n) / model.n]))
        periodic = True
    else:
        a, b = model.a, model.b
        m = m or max(1024, 64 * (_degree_parameter(model) or 1))
        # endpoint-clustered scan plus the endpoints themselves
        t = np.cos(np.linspace(0, np.pi, int(m)))
        x = a + (b - a) * 0.5 * (1.0 - t)
        periodic = False
    v = fn(x)
    best = float(v.max())
    if polish <= 0:
        return best
    order = np.argsort(v)[-8:]
    lo = x[np.maximum(order - 1, 0)]
    hi = x[np.minimum(order + 1, len(x) - 1)]
    if periodic:
        step = x[1] - x[0] if len(x) > 1 else 0.1
        lo, hi = x[order] - step, x[order] + step
    ref = golden_extremum(fn, lo, hi, polish, "max")
    return float(max(best, ref.max()))


# ---------------------------------------------------------------------------
# two-sided MZ ratios
# ---------------------------------------------------------------------------

def mz_two_sided_ratio(model: FunctionModel, system: nodes_mod.NodeSystem,
                       spec: NormSpec, grid: QuadratureGrid | None = None
                       ) -> float | None:
    """rho = discrete sampling norm / continuous norm (None if the latter is 0)."""
    if grid is None:
        grid = _default_grid(model, spec)
    cont = continuous_norm(sample(model, grid), spec)
    if cont == 0.0:
        return None
    vals = evaluate(model, system.nodes)
    disc = discrete_mz_norm(vals, system.cells, spec,
                            measures=system.cell_measures())
    return float(disc / cont)


def _default_grid(model: FunctionModel, spec: NormSpec) -> QuadratureGrid:
    n = int(math.ceil(_degree_parameter(model)))
    if isinstance(model, TrigPoly):
        if spec.kind == "wlp":
            return grid_for_weight(spec.weight, n)
        return torus_grid_for_degree(n)
    if isinstance(model, PeriodicSpline):
        from .grids import trapezoid_grid
        return trapezoid_grid(max(4096, 64 * model.n), period=1.0)
    if spec.kind == "wlp":
        return grid_for_weight(spec.weight, n, bounds=(model.a, model.b))
    from .grids import interval_grid_for_degree
    return interval_grid_for_degree(n, model.a, model.b)


def mz_ratio_batch(family: str, n: int, system: nodes_mod.NodeSystem,
                   spec: NormSpec, *, trials: int = 100, seed: int = 0,
                   bounds: tuple | None = None, **model_kw) -> RatioReport:
    """Min/max sampling-discretization ratio over seeded random draws.

    ``bounds = (low, high)`` counts violations outside the closed interval;
    zero-norm draws are excluded from the ratios.
    """
    grid = None
    lo, hi = math.inf, -math.inf
    used = violations = 0
    for i in range(trials):
        m = models.random_model(family, n,
                                np.random.SeedSequence(seed, spawn_key=(i,)),
                                real_valued=True, **model_kw)
        if grid is None:
            grid = _default_grid(m, spec)
        rho = mz_two_sided_ratio(m, system, spec, grid)
        if rho is None:
            continue
        used += 1
        lo, hi = min(lo, rho), max(hi, rho)
        if bounds is not None:
            violations += not (bounds[0] <= rho <= bounds[1])
    b_lo, b_hi = bounds if bounds is not None else (None, None)
    return RatioReport(lo, hi, b_lo, b_hi, violations, used, seed,
                       {"family": family, "n": n, "spec": spec.encode()})


def grid_mz_extrema_ratios(model: TrigPoly, system: nodes_mod.NodeSystem,
                           spec: NormSpec, *, subdiv: int = 64,
                           polish: int = 30):
    """(min-based, max-based) discretization ratios over the system's cells.

    The discrete norms use the per-cell minimum resp. maximum of |T| instead
    of point values; any point-evaluation ratio lies between them by lattice
    monotonicity.
    """
    grid = _default_grid(model, spec)
    cont = continuous_norm(sample(model, grid), spec)
    if cont == 0.0:
        return None, None
    cells = system.cells
    centers = 0.5 * (cells[:, 0] + cells[:, 1])
    halfw = 0.5 * (cells[:, 1] - cells[:, 0])
    maxv, minv = window_extrema(model, centers, halfw, subdiv=subdiv,
                                polish=polish)
    measures = system.cell_measures()
    lo = discrete_mz_norm(minv, cells, spec, measures=measures) / cont
    hi = discrete_mz_norm(maxv, cells, spec, measures=measures) / cont
    return float(lo), float(hi)


# ---------------------------------------------------------------------------
# explicit-constant catalog
# ---------------------------------------------------------------------------

def constant_bounds(bound_id: str, **params) -> dict:
    """Closed-form constants from the theorem catalog.

    Every entry returns a dict with an ``applicable`` flag and named
    constants; lower/upper always mean lower * D <= ||F|| <= upper * D for
    the relevant discrete quantity D unless noted in the entry docline.
    """
    fn = _BOUNDS.get(bound_id)
    if fn is None:
        raise KeyError(f"unknown bound id {bound_id!r}; "
                       f"known: {sorted(_BOUNDS)}")
    return fn(**params)


def _b_trig_explicit(C: float, translation_invariant: bool = False) -> dict:
    # minimal 2n+1 grid with partial-sum constant C
    expo = 2.0 * math.pi / 3.0 if translation_invariant else 4.0 * math.pi * C / 3.0
    return {"applicable": True, "lower": math.exp(-expo),
            "upper": C * math.exp(expo)}


def _b_orlicz_grid_3d(d: int = 1, C_phi: float | None = None) -> dict:
    out = {"applicable": True, "upper_factor": 3.0 ** d}
    if C_phi is not None:
        out["lower"] = 1.0 / (3.0 ** d * C_phi)
    return out


def _b_orlicz_sharp_upper(n: int, N: int, delta: float) -> dict:
    # discrete sharp norm <= factor * continuous sharp norm
    return {"applicable": True,
            "factor": E * (n + 1 + TWO_PI / delta) / N}


def _b_orlicz_sharp_lower(n: int, N: int, delta: float, lam: float) -> dict:
    head = min(1.0, 4.0 * math.pi / (lam * N))
    loss = 4.0 * E * lam * n * (n + 1 + TWO_PI / delta) / N
    ok = head > loss
    return {"applicable": ok,
            "factor": 2.0 / (head - loss) if ok else math.inf}


def _b_orlicz_jitter_upper() -> dict:
    return {"applicable": True, "factor": 8.0 * E / 3.0}


def _b_orlicz_jitter_lower(C_phi: float, sigma: float) -> dict:
    ok = sigma < 1.0 / (16.0 * E * math.pi * C_phi)
    return {"applicable": ok,
            "factor": (1.0 / (2.0 * C_phi) - 8.0 * E * math.pi * sigma) / 3.0}


def _b_nikolskii_sup(gamma: float, d: int, chi: float) -> dict:
    # sup norm <= factor * lattice norm, chi = ||indicator of (0, 2pi/N)^d||
    return {"applicable": True, "factor": math.exp(TWO_PI * d / gamma) / chi}


def _b_grid_mz(A: float, B: float = 1.0, d: int = 1) -> dict:
    ok = 0.0 < A < LOG2 / (d * B)
    up = math.exp(d * A * B)
    return {"applicable": ok, "min_based_lower": 2.0 - up,
            "max_based_upper": up}


def _b_grid_mz_nodes(B: float = 1.0, d: int = 1, eps: float = 0.0) -> dict:
    return {"applicable": True,
            "nodes_per_degree": TWO_PI * d * B / LOG2 + eps}


def _b_markov(n: int, a: float = -1.0, b: float = 1.0) -> dict:
    return {"applicable": True, "factor": 2.0 * n * n / (b - a)}


def _b_markov_lattice(n: int, r: int = 1, a: float = -1.0,
                      b: float = 1.0) -> dict:
    return {"applicable": True, "factor": (8.0 * n * n / (b - a)) ** r}


def _b_alg_mz_nodes(eps: float = 0.0) -> dict:
    return {"applicable": True, "nodes_per_sq_degree": 8.0 / LOG2 + eps}


def _b_spline_bernstein(r: int, n: int) -> dict:
    return {"applicable": True, "factor": 2.0 * r * r * n}


def _b_spline_mz_nodes(r: int, eps: float = 0.0) -> dict:
    return {"applicable": True, "nodes_per_degree": 2.0 * r * r + eps}


def _b_bernstein_trig(n: int, r: int = 1) -> dict:
    return {"applicable": True, "factor": float(n) ** r}


def _b_expsum_mz_nodes(c2: float = 1.0, eps: float = 0.0) -> dict:
    return {"applicable": True, "nodes_per_gamma": c2 / LOG2 + eps}


_BOUNDS = {
    "trig_explicit": _b_trig_explicit,
    "orlicz_grid_3d": _b_orlicz_grid_3d,
    "orlicz_sharp_upper": _b_orlicz_sharp_upper,
    "orlicz_sharp_lower": _b_orlicz_sharp_lower,
    "orlicz_jitter_upper": _b_orlicz_jitter_upper,
    "orlicz_jitter_lower": _b_orlicz_jitter_lower,
    "nikolskii_sup": _b_nikolskii_sup,
    "grid_mz": _b_grid_mz,
    "grid_mz_nodes": _b_grid_mz_nodes,
    "markov": _b_markov,
    "markov_lattice": _b_markov_lattice,
    "alg_mz_nodes": _b_alg_mz_nodes,
    "spline_bernstein": _b_spline_bernstein,
    "spline_mz_nodes": _b_spline_mz_nodes,
    "bernstein_trig": _b_bernstein_trig,
    "expsum_mz_nodes": _b_expsum_mz_nodes,
}


# ---------------------------------------------------------------------------
# inequality margin checks
# ---------------------------------------------------------------------------

def zygmund_discrete_bound_check(model: TrigPoly, node_points,
                                 phi: norms.OrliczFunction,
                                 grid: QuadratureGrid | None = None) -> dict:
    """Margin of  sum_k Phi(T(tau_k)) <= ((n+1)/2pi + 1/delta) int Phi(e T)."""
    node_points = np.asarray(node_points, dtype=float)
    gauges = nodes_mod.mesh_gauges(node_points, periodic=True)
    lhs = float(np.sum(phi(np.abs(evaluate(model, node_points)))))
    if grid is None:
        grid = torus_grid_for_degree(model.n)
    integrand = phi(E * np.abs(evaluate(model, grid.points)))
    rhs = float(((model.n + 1) / TWO_PI + 1.0 / gauges.delta)
                * grid.integrate(integrand).real)
    return {"lhs": lhs, "rhs": rhs, "margin": rhs - lhs,
            "delta": gauges.delta}


def nikolskii_check(model: TrigPoly, spec: NormSpec, N: int, gamma: float,
                    grid: QuadratureGrid | None = None) -> dict:
    """Margin of  sup|T| <= e^{2 pi d / gamma} / ||chi_box|| * ||T||_X."""
    d = model.d
    n = model.n
    if N < gamma * n:
        raise ValueError(f"need N >= gamma * n = {gamma * n}")
    chi = chi_norm(spec, (TWO_PI / N) ** d)
    factor = constant_bounds("nikolskii_sup", gamma=gamma, d=d,
                             chi=chi)["factor"]
    if d == 1:
        if grid is None:
            grid = _default_grid(model, spec)
        xnorm = continuous_norm(sample(model, grid), spec)
    else:
        g = np.linspace(0, TWO_PI, 128, endpoint=False)
        mesh = np.stack(np.meshgrid(g, g, indexing="ij"), axis=-1)
        vals = np.abs(evaluate(model, mesh.reshape(-1, 2)))
        if spec.kind != "lp":
            raise ValueError("2-D margin check supports lp specs")
        xnorm = float(((TWO_PI / 128) ** 2 * np.sum(vals ** spec.p))
                      ** (1 / spec.p))
    sup = sup_norm(model)
    return {"sup": sup, "bound": factor * xnorm, "factor": factor,
            "margin": factor * xnorm - sup, "x_norm": xnorm}


def nikolskii_transfer_check(model: TrigPoly, p: float, q: float, N: int,
                             gamma: float) -> dict:
    """Margin of the L_p -> L_q transfer bound (exponent 1 - p/q)."""
    if not 0 < p < q:
        raise ValueError("need 0 < p < q")
    n = model.n
    if N < gamma * n:
        raise ValueError("need N >= gamma * n")
    d = model.d
    grid = torus_grid_for_degree(n)
    f = sample(model, grid)
    lp = continuous_norm(f, NormSpec("lp", p=p))
    lq = continuous_norm(f, NormSpec("lp", p=q))
    C = math.exp(TWO_PI * d / gamma) / (TWO_PI / N) ** (d / p)
    bound = C ** (1.0 - p / q) * lp
    return {"lhs": lq, "bound": bound, "margin": bound - lq}


# ---------------------------------------------------------------------------
# extremal-ratio search
# ---------------------------------------------------------------------------

def _bernstein_ratio(model: FunctionModel, spec: NormSpec, r: int,
                     phi_kind: str, n_scale: float) -> float:
    """||phi^r F^(r)|| / (n_scale * ||F||) for the given spec."""
    piecewise = isinstance(model, PeriodicSpline) and r == model.order - 1
    deriv = differentiate(model, r, piecewise=piecewise)
    if spec.kind == "linf":
        if phi_kind in ("1", "one", "const"):
            num = sup_norm(deriv)
        else:
            n = _degree_parameter(model)
            fn = lambda x: (phi_weight(phi_kind, x, int(n)) ** r
                            * np.abs(evaluate(deriv, x)))
            num = _weighted_sup(fn, deriv)
        den = sup_norm(model)
    else:
        grid = _default_grid(model, spec)
        w = phi_weight(phi_kind, grid.points, int(_degree_parameter(model)))
        dv = np.abs(evaluate(deriv, grid.points)) * w ** r
        num = continuous_norm(SampledFunction(dv, grid), spec)
        den = continuous_norm(sample(model, grid), spec)
    if den == 0.0:
        return 0.0
    return float(num / (n_scale * den))


def _weighted_sup(fn, model) -> float:
    if isinstance(model, (AlgPoly, ExpSum)):
        t = np.cos(np.linspace(0, np.pi, 4097))
        x = model.a + (model.b - model.a) * 0.5 * (1.0 - t)
    else:
        x = np.arange(8192) * (TWO_PI / 8192)
    v = fn(x)
    order = np.argsort(v)[-8:]
    lo = x[np.maximum(order - 1, 0)]
    hi = x[np.minimum(order + 1, len(x) - 1)]
    ref = golden_extremum(fn, lo, hi, 45, "max")
    return float(max(v.max(), ref.max()))


@dataclass
class BernsteinReport:
    raw_sup: float             # sup ||phi^r F^(r)|| / ||F||
    normalized: float          # raw_sup / n^{r beta}
    bound: float | None        # matching closed-form constant, if any
    trials: int
    seed: int
    meta: dict = field(default_factory=dict)


def _extremal_candidates(family: str, n: int, r: int = 3) -> list:
    if family == "trig":
        c = np.zeros(2 * n + 1, dtype=complex)
        c[0], c[2 * n] = 0.5j, -0.5j           # sin(nx)
        return [TrigPoly(c)]
    if family == "alg":
        c = np.zeros(n + 1)
        c[n] = 1.0                              # Chebyshev T_n
        return [AlgPoly(c)]
    if family == "spline":
        return [PeriodicSpline(r, (-1.0) ** np.arange(n))]
    if family in ("expsum", "muntz"):
        lam = np.arange(n + 1, dtype=float)
        c = np.zeros(n + 1, dtype=complex)
        c[-1] = 1.0
        out = [ExpSum(lam, c, 0.0, 1.0)]
        # Chebyshev polynomial transplanted through u = e^t: extremal for
        # the endpoint derivative, representable exactly in the basis
        A, B = math.exp(0.0), math.exp(1.0)
        mono = np.polynomial.chebyshev.cheb2poly(np.eye(n + 1)[n])
        lin = np.polynomial.Polynomial([-(B + A) / (B - A), 2.0 / (B - A)])
        comp = np.polynomial.Polynomial(mono)(lin)
        coefs = np.zeros(n + 1, dtype=complex)
        coefs[:len(comp.coef)] = comp.coef
        out.append(ExpSum(lam, coefs, 0.0, 1.0))
        return out
    raise ValueError(family)


def bernstein_estimate(family: str, n: int, spec: NormSpec, *,
                       phi_kind: str = "1", r: int = 1, beta: float = 1.0,
                       trials: int = 50, seed: int = 0,
                       ascent_steps: int = 50, spline_order: int = 3,
                       lambdas=None) -> BernsteinReport:
    """Empirical extremal derivative/function norm ratio.

    Seeds the trial set with the family's classical extremal candidate
    (sin(nx), the top Chebyshev polynomial, the alternating-knot spline),
    adds seeded random draws, then hill-climbs from the best trial with a
    numerical gradient on the coefficient sphere.
    """
    if family == "spline":
        n_scale = float(n) ** (r * beta)
    elif family in ("expsum", "muntz"):
        lam = np.asarray(lambdas if lambdas is not None
                         else np.arange(n + 1, dtype=float))
        n_scale = models.gamma_lambda(lam) ** r
    else:
        n_scale = float(n) ** (r * beta)
    candidates = _extremal_candidates(family, n, spline_order)
    for i in range(trials):
        ss = np.random.SeedSequence(seed, spawn_key=(i,))
        candidates.append(models.random_model(
            family, n, ss, real_valued=True, r=spline_order,
            lambdas=lambdas))
    ratios = [_bernstein_ratio(m, spec, r, phi_kind, n_scale)
              for m in candidates]
    best_i = int(np.argmax(ratios))
    best, best_ratio = candidates[best_i], ratios[best_i]
    if ascent_steps > 0:
        best_ratio = _hill_climb(best, best_ratio, spec, r, phi_kind,
                                 n_scale, ascent_steps, seed)
    bound = _matching_bound(family, n, r, beta, spec, phi_kind,
                            lambdas=lambdas, spline_order=spline_order)
    return BernsteinReport(best_ratio * n_scale, best_ratio, bound,
                           trials, seed, {"family": family, "n": n, "r": r})


def _matching_bound(family, n, r, beta, spec, phi_kind, lambdas=None,
                    spline_order=3):
    if family == "trig" and phi_kind in ("1", "one", "const"):
        return constant_bounds("bernstein_trig", n=n, r=r)["factor"]
    if family == "alg" and beta == 2 and spec.kind == "linf":
        if r == 1:
            return constant_bounds("markov", n=n)["factor"]
        return constant_bounds("markov_lattice", n=n, r=r)["factor"]
    if family == "spline" and r == 1 and spec.kind == "linf":
        return constant_bounds("spline_bernstein", r=spline_order,
                               n=n)["factor"]
    return None


def _coeff_vector(model: FunctionModel) -> np.ndarray:
    if isinstance(model, TrigPoly):
        return np.concatenate([model.coeffs.real, model.coeffs.imag])
    if isinstance(model, AlgPoly):
        return model.cheb.copy()
    if isinstance(model, PeriodicSpline):
        return model.coeffs.copy()
    return np.concatenate([model.coeffs.real, model.coeffs.imag])


def _from_vector(model: FunctionModel, v: np.ndarray) -> FunctionModel:
    from dataclasses import replace
    if isinstance(model, TrigPoly):
        m = len(v) // 2
        return TrigPoly(v[:m] + 1j * v[m:])
    if isinstance(model, AlgPoly):
        return replace(model, cheb=v)
    if isinstance(model, PeriodicSpline):
        return replace(model, coeffs=v)
    m = len(v) // 2
    return replace(model, coeffs=v[:m] + 1j * v[m:])


def _hill_climb(model, ratio, spec, r, phi_kind, n_scale, steps, seed):
    theta = _coeff_vector(model)
    norm = np.linalg.norm(theta)
    if norm == 0:
        return ratio
    theta = theta / norm
    obj = lambda t: _bernstein_ratio(_from_vector(model, t), spec, r,
                                     phi_kind, n_scale)
    cur = ratio
    h = 1e-6
    step = 0.1
    for _ in range(steps):
        grad = np.zeros_like(theta)
        for i in range(len(theta)):
            e = np.zeros_like(theta)
            e[i] = h
            grad[i] = (obj(theta + e) - cur) / h
        grad -= (grad @ theta) * theta        # tangent to the unit sphere
        gn = np.linalg.norm(grad)
        if gn == 0:
            break
        improved = False
        for s in (step, step / 3, step / 9):
            cand = theta + s * grad / gn
            cand /= np.linalg.norm(cand)
            val = obj(cand)
            if val > cur + 1e-14:
                theta, cur = cand, val
                improved = True
                break
        if not improved:
            step /= 3
            if step < 1e-6:
                break
    return cur


# ---------------------------------------------------------------------------
# Gauss-node sampling discretization sweep
# ---------------------------------------------------------------------------

def jacobi_mz_certified(alpha: float, beta: float, p: float) -> bool:
    """Parameter window in which the two-sided Gauss-node equivalence is
    certified (otherwise the sweep runs flagged 'uncertified')."""
    if not 1 < p < math.inf:
        return False
    for ex in (alpha, beta):
        if abs((ex + 1) * (0.5 - 1.0 / p)) >= min(0.25, (ex + 1) / 2):
            return False
    return True


def quadrature_mz_experiment(n: int, alpha: float, beta: float, *,
                             p: float = 2.0, trials: int = 100,
                             seed: int = 0) -> RatioReport:
    """Two-sided ratios of the Christoffel-weighted node sums against the
    weighted integral, over random polynomials of degree <= n - 1.

    Degree n - 1 is the exactness range of the n-node Gauss rule (the top
    orthonormal polynomial vanishes at every node, so degree n admits no
    lower bound).
    """
    system = nodes_mod.cms_cells(n, alpha, beta)
    xk, mu = system.nodes, system.weights
    weight = ("jacobi", float(alpha), float(beta))
    spec = NormSpec("wlp", p=p, weight=weight)
    grid = grid_for_weight(weight, max(2 * n, 8))
    g = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    lo, hi = math.inf, -math.inf
    used = 0
    for _ in range(trials):
        poly = AlgPoly(g.standard_normal(n))          # degree n - 1
        cont = continuous_norm(sample(poly, grid), spec)
        if cont == 0.0:
            continue
        disc = float((np.abs(evaluate(poly, xk)) ** p @ mu) ** (1.0 / p))
        rho = disc / cont
        lo, hi = min(lo, rho), max(hi, rho)
        used += 1
    return RatioReport(lo, hi, None, None, 0, used, seed,
                       {"alpha": alpha, "beta": beta, "p": p,
                        "certified": jacobi_mz_certified(alpha, beta, p),
                        "cms_max_ratio": system.meta["cms_max_ratio"]})


def estimate_partial_sum_norm(n: int, spec: NormSpec, *, trials: int = 200,
                              seed: int = 0, degree_factor: int = 3) -> dict:
    """Empirical lower estimate of the partial-sum operator norm on X.

    sup ||S_n f|| / ||f|| over random polynomials of degree degree_factor*n;
    this can only certify a lower bound, and is labeled as such.
    """
    grid = torus_grid_for_degree(degree_factor * n)
    best = 0.0
    for i in range(trials):
        ss = np.random.SeedSequence(seed, spawn_key=(i,))
        f = models.random_model("trig", degree_factor * n, ss,
                                real_valued=True)
        den = continuous_norm(sample(f, grid), spec)
        if den == 0.0:
            continue
        num = continuous_norm(sample(operators.partial_sum(f, n), grid), spec)
        best = max(best, num / den)
    return {"lower_estimate": float(best), "certified": False,
            "trials": trials, "seed": seed}
