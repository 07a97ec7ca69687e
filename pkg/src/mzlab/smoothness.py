"""Moduli of smoothness, best and one-sided approximation, and the
interpolation-error / norm-transfer checkers built on them.

Target functions come from a closed catalog; every entry either ships
explicit Fourier coefficients (so best-approximation tails have an exact
oracle) or carries a known decay class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import operators, simplex
from .grids import QuadratureGrid, SampledFunction, TWO_PI, trapezoid_grid
from .models import TrigPoly, evaluate
from .norms import NormSpec, chi_norm, continuous_norm


class SmoothnessError(ValueError):
    pass


# ---------------------------------------------------------------------------
# target catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TargetFunction:
    id: str
    fn: object                      # vectorized callable on the torus
    smoothness: str                 # informal class tag
    decay_exponent: float | None    # s with E_nu(f)_{L2} = O(nu^{-s}), if known

    def __call__(self, x):
        return self.fn(np.asarray(x, dtype=float))


def _abs_cos(x):
    return np.abs(np.cos(x))


def _power_cusp(theta):
    return lambda x: np.abs(np.sin(0.5 * x)) ** theta


def _lacunary(depth):
    def f(x):
        acc = np.zeros_like(x)
        for j in range(depth + 1):
            acc += 2.0 ** (-j) * np.cos(2.0 ** j * x)
        return acc
    return f


def target(id: str, **kw) -> TargetFunction:
    if id == "abs_cos":
        return TargetFunction("abs_cos", _abs_cos, "derivative of bounded variation", 1.5)
    if id == "power_cusp":
        theta = kw.get("theta", 0.5)
        return TargetFunction(f"power_cusp:{theta}", _power_cusp(theta),
                              f"Hoelder-{min(theta, 1.0)} cusp", None)
    if id == "lacunary":
        depth = kw.get("depth", 10)
        return TargetFunction(f"lacunary:{depth}", _lacunary(depth),
                              "lacunary series", 1.0)
    if id == "smooth_test":
        return TargetFunction("smooth_test", lambda x: np.exp(np.cos(x)),
                              "analytic", math.inf)
    raise SmoothnessError(f"unknown target {id!r}")


@lru_cache(maxsize=None)
def abs_cos_l2_tail(n: int, terms: int = 200_000) -> float:
    """E_n(|cos|)_{L_2} from the explicit Fourier coefficients.

    c_{2k} = (2/pi)(-1)^{k+1}/(4k^2-1); the squared tail is
    (16/pi) sum_{2k > n} (4k^2-1)^{-2}.
    """
    k0 = n // 2 + 1
    k = np.arange(k0, k0 + terms, dtype=float)
    s = np.sum((4.0 * k * k - 1.0) ** -2)
    s += 1.0 / (48.0 * (k0 + terms - 1.0) ** 3)   # integral remainder
    return math.sqrt(16.0 / math.pi * s)


def lacunary_l2_tail(n: int, depth: int) -> float:
    js = [j for j in range(depth + 1) if 2 ** j > n]
    return math.sqrt(math.pi * sum(4.0 ** (-j) for j in js))


def l2_best_approx_exact(tgt: TargetFunction, n: int) -> float:
    if tgt.id == "abs_cos":
        return abs_cos_l2_tail(n)
    if tgt.id.startswith("lacunary:"):
        return lacunary_l2_tail(n, int(tgt.id.split(":")[1]))
    raise SmoothnessError(f"no explicit tail for target {tgt.id!r}")


# ---------------------------------------------------------------------------
# differences and moduli
# ---------------------------------------------------------------------------

def difference(f: SampledFunction, h: float, r: int) -> SampledFunction:
    """r-th forward difference with periodic wraparound.

    ``h`` must be an exact multiple of the grid step (no silent
    interpolation); otherwise a validation error is raised.
    """
    grid = f.grid
    step = grid.period / grid.size
    s = h / step
    si = int(round(s))
    if si < 1 or abs(s - si) > 1e-9:
        raise SmoothnessError(f"h = {h} is not a grid multiple of {step}")
    vals = np.zeros_like(np.asarray(f.values, dtype=complex))
    for nu in range(r + 1):
        vals += (math.comb(r, nu) * (-1) ** nu
                 * np.roll(f.values, -(r - nu) * si))
    return SampledFunction(vals, grid)


def modulus(f: SampledFunction, delta: float, r: int, spec: NormSpec,
            coarse: int = 256) -> float:
    """omega_r(f, delta): sup over grid-aligned steps h in (0, delta].

    Scans at most ``coarse`` candidate shifts, then refines exhaustively
    around the best one, so the result is the exact maximum over all grid
    shifts below delta.
    """
    if delta <= 0:
        raise SmoothnessError("delta must be positive")
    grid = f.grid
    step = grid.period / grid.size
    smax = int(math.floor(delta / step + 1e-9))
    if smax < 1:
        return 0.0
    if smax <= coarse:
        cand = np.arange(1, smax + 1)
        stride = 1
    else:
        stride = max(1, smax // coarse)
        cand = np.unique(np.concatenate([np.arange(stride, smax + 1, stride),
                                         [smax]]))

    def norm_at(si: int) -> float:
        return continuous_norm(difference(f, si * step, r), spec)

    vals = [norm_at(int(si)) for si in cand]
    best_i = int(np.argmax(vals))
    best = vals[best_i]
    if stride > 1:
        center = int(cand[best_i])
        for si in range(max(1, center - stride), min(smax, center + stride) + 1):
            best = max(best, norm_at(si))
    return float(best)


def local_modulus(tgt, x: np.ndarray, delta: float, r: int,
                  sub: int = 32) -> np.ndarray:
    """omega_r(f, x, delta): sup |Delta_h^r f(t)| over t, t + rh in the
    window [x - r delta/2, x + r delta/2], by a (sub x sub) double sweep."""
    x = np.asarray(x, dtype=float)
    hs = np.linspace(delta / sub, delta, sub)
    us = np.linspace(0.0, 1.0, sub)
    out = np.zeros_like(x)
    half = 0.5 * r * delta
    for h in hs:
        span = r * delta - r * h
        t = (x[:, None] - half) + us[None, :] * span        # (P, sub)
        acc = np.zeros_like(t)
        for nu in range(r + 1):
            acc += math.comb(r, nu) * (-1) ** nu * tgt(t + (r - nu) * h)
        out = np.maximum(out, np.abs(acc).max(axis=1))
    return out


def tau_modulus(tgt, delta: float, r: int, spec: NormSpec,
                grid: QuadratureGrid, sub: int = 32) -> float:
    """Averaged modulus: the X-norm of the local modulus on the grid."""
    lm = local_modulus(tgt, grid.points, delta, r, sub)
    return continuous_norm(SampledFunction(lm, grid), spec)


# ---------------------------------------------------------------------------
# best approximation
# ---------------------------------------------------------------------------

def _real_trig_design(n: int, x: np.ndarray) -> np.ndarray:
    cols = [np.ones_like(x)]
    for k in range(1, n + 1):
        cols.append(np.cos(k * x))
        cols.append(np.sin(k * x))
    return np.stack(cols, axis=1)


def _theta_to_poly(theta: np.ndarray, n: int) -> TrigPoly:
    c = np.zeros(2 * n + 1, dtype=complex)
    c[n] = theta[0]
    for k in range(1, n + 1):
        a, b = theta[2 * k - 1], theta[2 * k]
        c[n + k] = 0.5 * (a - 1j * b)
        c[n - k] = 0.5 * (a + 1j * b)
    return TrigPoly(c)


def best_approx(f: SampledFunction, n: int, spec: NormSpec, *,
                restarts: int = 3, tol: float = 1e-8, seed: int = 0):
    """(E_n value, minimizer) in the given space.

    L_2 uses the exact orthogonal projection.  Other Banach specs run
    coordinate descent from the projection with seeded restarts; for
    quasi-Banach targets (p < 1) the result is flagged a local optimum.
    """
    grid = f.grid
    vals = np.asarray(f.values, dtype=float)
    proj = operators.partial_sum(f, n) if grid.size >= 2 * n + 1 else None
    if proj is None:
        raise SmoothnessError("grid too coarse for the requested degree")
    if spec.kind == "lp" and spec.p == 2:
        resid = vals - evaluate(proj, grid.points).real
        return continuous_norm(SampledFunction(resid, grid), spec), proj, {
            "method": "projection"}
    design = _real_trig_design(n, grid.points)
    theta0 = _poly_to_theta(proj, n)

    def objective_curve(theta):
        return vals - design @ theta

    best_val, best_theta = math.inf, theta0
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    for attempt in range(restarts):
        theta = theta0 + (0.0 if attempt == 0 else
                          0.3 * rng.standard_normal(theta0.shape)
                          * (np.abs(theta0).max() + 1e-3))
        val, theta = _coordinate_descent(objective_curve, theta, design,
                                         grid, spec, tol)
        if val < best_val:
            best_val, best_theta = val, theta
    status = {"method": "descent",
              "local_only": spec.q_x < 1.0}
    return best_val, _theta_to_poly(best_theta, n), status


def _poly_to_theta(t: TrigPoly, n: int) -> np.ndarray:
    theta = np.zeros(2 * n + 1)
    c = np.zeros(2 * n + 1, dtype=complex)
    c[n - t.n: n + t.n + 1] = t.coeffs if t.n <= n else t.coeffs[t.n - n: t.n + n + 1]
    theta[0] = c[n].real
    for k in range(1, n + 1):
        theta[2 * k - 1] = (c[n + k] + c[n - k]).real
        theta[2 * k] = (1j * (c[n + k] - c[n - k])).real
    return theta


def _coordinate_descent(curve, theta, design, grid, spec, tol,
                        max_sweeps: int = 40):
    theta = theta.copy()
    resid = curve(theta)
    nrm = lambda res: continuous_norm(SampledFunction(np.abs(res), grid), spec)
    cur = nrm(resid)
    scale = max(np.abs(theta).max(), 1.0)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    for _ in range(max_sweeps):
        prev = cur
        for j in range(len(theta)):
            col = design[:, j]
            a, b = -2.0 * scale, 2.0 * scale
            for _ in range(48):
                c1 = b - invphi * (b - a)
                c2 = a + invphi * (b - a)
                if nrm(resid - c1 * col) < nrm(resid - c2 * col):
                    b = c2
                else:
                    a = c1
            t = 0.5 * (a + b)
            cand = nrm(resid - t * col)
            if cand < cur:
                theta[j] += t
                resid = resid - t * col
                cur = cand
        if prev - cur <= tol * max(prev, 1e-30):
            break
    return cur, theta


# ---------------------------------------------------------------------------
# one-sided approximation
# ---------------------------------------------------------------------------

def one_sided_approx(tgt, n: int, spec: NormSpec, *, grid_points: int = 0,
                     dense_factor: int = 4):
    """Envelope pair q <= f <= Q in T_n and the achieved gap norm.

    The constraint grid is finite, so the raw optimum is a lower bound of
    the true one-sided error; the returned pair is then shifted by the
    maximum constraint violation on a ``dense_factor`` x finer grid, giving
    a certified feasible pair.  Both numbers are reported.
    L_1 uses the in-module simplex; other Banach specs run the penalty
    descent engine.
    """
    G = grid_points or max(64 * n, 128)
    x = np.arange(G) * (TWO_PI / G)
    fx = np.asarray(tgt(x), dtype=float)
    if spec.kind == "lp" and spec.p == 1:
        q_poly, Q_poly, raw = _one_sided_lp(x, fx, n)
    else:
        q_poly, Q_poly, raw = _one_sided_penalty(x, fx, n, spec)
    xd = np.arange(dense_factor * G) * (TWO_PI / (dense_factor * G))
    fd = np.asarray(tgt(xd), dtype=float)
    qv = evaluate(q_poly, xd).real
    Qv = evaluate(Q_poly, xd).real
    shift_q = max(0.0, float((qv - fd).max()))
    shift_Q = max(0.0, float((fd - Qv).max()))
    q_poly = TrigPoly(q_poly.coeffs - np.eye(2 * n + 1)[n] * shift_q)
    Q_poly = TrigPoly(Q_poly.coeffs + np.eye(2 * n + 1)[n] * shift_Q)
    dense = trapezoid_grid(dense_factor * G)
    gap = SampledFunction(np.abs(Qv + shift_Q - (qv - shift_q)), dense)
    certified = continuous_norm(gap, spec)
    return {"grid_value": raw, "certified_value": float(certified),
            "lower": q_poly, "upper": Q_poly}


def _one_sided_lp(x, fx, n):
    G = len(x)
    D = 2 * n + 1
    design = _real_trig_design(n, x)
    # variables: [aq+, aq-, aQ+, aQ-]
    A = np.zeros((2 * G, 4 * D))
    b = np.concatenate([fx, -fx])
    A[:G, 0:D] = design
    A[:G, D:2 * D] = -design
    A[G:, 2 * D:3 * D] = -design
    A[G:, 3 * D:4 * D] = design
    c = np.zeros(4 * D)
    c[2 * D] = TWO_PI      # + aQ_0
    c[3 * D] = -TWO_PI
    c[0] = -TWO_PI         # - aq_0
    c[D] = TWO_PI
    sol, val = simplex.solve_lp(c, A, b)
    aq = sol[0:D] - sol[D:2 * D]
    aQ = sol[2 * D:3 * D] - sol[3 * D:4 * D]
    return _theta_to_poly(aq, n), _theta_to_poly(aQ, n), float(val)


def _one_sided_penalty(x, fx, n, spec, rho: float = 50.0):
    G = len(x)
    design = _real_trig_design(n, x)
    grid = trapezoid_grid(G)
    proj = operators.partial_sum(SampledFunction(fx, grid), n)
    th0 = _poly_to_theta(proj, n)
    spread = float(np.abs(fx - design @ th0).max())
    theta = np.concatenate([th0, th0])
    theta[0] -= spread
    theta[2 * n + 1] += spread
    scale = max(1.0, np.abs(theta).max())
    fscale = max(1.0, float(np.abs(fx).max()))

    def objective(t):
        q = design @ t[:2 * n + 1]
        Q = design @ t[2 * n + 1:]
        gap = continuous_norm(SampledFunction(np.abs(Q - q), grid), spec)
        viol = (np.maximum(q - fx, 0.0).max()
                + np.maximum(fx - Q, 0.0).max())
        return gap + rho * viol / fscale * (1.0 + gap)

    cur = objective(theta)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    for _ in range(30):
        prev = cur
        for j in range(len(theta)):
            a, b = -0.5 * scale, 0.5 * scale
            base = theta[j]
            for _ in range(36):
                c1 = b - invphi * (b - a)
                c2 = a + invphi * (b - a)
                theta[j] = base + c1
                v1 = objective(theta)
                theta[j] = base + c2
                v2 = objective(theta)
                if v1 < v2:
                    b = c2
                else:
                    a = c1
            theta[j] = base + 0.5 * (a + b)
            v = objective(theta)
            if v <= cur:
                cur = v
            else:
                theta[j] = base
        if prev - cur <= 1e-8 * max(prev, 1e-30):
            break
    q_poly = _theta_to_poly(theta[:2 * n + 1], n)
    Q_poly = _theta_to_poly(theta[2 * n + 1:], n)
    gap = continuous_norm(SampledFunction(
        np.abs(design @ theta[2 * n + 1:] - design @ theta[:2 * n + 1]),
        grid), spec)
    return q_poly, Q_poly, float(gap)


# ---------------------------------------------------------------------------
# checkers
# ---------------------------------------------------------------------------

def best_uniform_error(tgt, n: int, grid_points: int = 0) -> float:
    """E_n(f) in the sup norm on a dense grid, by single-point exchange.

    Maintains a 2n+2-point alternation reference, levels the residual on it,
    and swaps in the worst grid point until the grid residual matches the
    levelled value (the finite-grid uniform-approximation optimum).
    """
    G = grid_points or max(16 * n + 32, 128)
    x = np.arange(G) * (TWO_PI / G)
    fx = np.asarray(tgt(x), dtype=float)
    D = 2 * n + 1
    design = _real_trig_design(n, x)
    ref = np.unique(np.round(np.linspace(0, G - 1, D + 1)).astype(int))
    while len(ref) < D + 1:
        extra = np.setdiff1d(np.arange(G), ref)[:D + 1 - len(ref)]
        ref = np.sort(np.concatenate([ref, extra]))
    sigma = (-1.0) ** np.arange(D + 1)
    for _ in range(120):
        m = np.hstack([design[ref], sigma[:, None]])
        sol = np.linalg.solve(m, fx[ref])
        theta, h = sol[:D], sol[D]
        r = fx - design @ theta
        dev = float(np.abs(r).max())
        if dev <= abs(h) * (1.0 + 1e-11) + 1e-15:
            return dev
        new_ref = _alternating_extrema(r, D + 1)
        if new_ref is None or np.array_equal(new_ref, ref):
            return dev                    # no further exchange possible
        ref = new_ref
        sigma = np.sign(r[ref])
        sigma[sigma == 0] = 1.0
    raise SmoothnessError("alternation exchange did not settle")


def _alternating_extrema(r, need):
    """Indices of the largest |r| in each sign run, trimmed to ``need``
    alternating entries (keeping the biggest deviations)."""
    s = np.where(r >= 0, 1, -1)
    change = np.flatnonzero(s[1:] != s[:-1]) + 1
    starts = np.concatenate([[0], change])
    ends = np.concatenate([change, [len(r)]])
    cands = [int(st + np.argmax(np.abs(r[st:en])))
             for st, en in zip(starts, ends)]
    if len(cands) < need:
        return None
    while len(cands) > need:
        devs = np.abs(r[cands])
        if (len(cands) - need) % 2 == 1:
            if devs[0] <= devs[-1]:
                cands.pop(0)
            else:
                cands.pop()
        else:
            pair = int(np.argmin(np.maximum(devs[:-1], devs[1:])))
            del cands[pair:pair + 2]
    return np.array(cands)


@dataclass
class DecayRow:
    n: int
    error: float
    tau: float
    ratio: float


def lagrange_error_check(tgt, n_list, spec: NormSpec, r: int = 1, *,
                         dense: int = 8192, tau_sub: int = 32) -> dict:
    """Interpolation error against the averaged modulus across a degree sweep.

    Returns the per-n table, the fitted log-log slope of the error, and the
    spread (max/min) of error / tau ratios.
    """
    dense_grid = trapezoid_grid(dense)
    fd = np.asarray(tgt(dense_grid.points), dtype=float)
    rows = []
    for n in n_list:
        t = operators.lagrange_nodes(n)
        ln = operators.lagrange_interpolate(tgt(t), n)
        err = continuous_norm(SampledFunction(
            np.abs(fd - evaluate(ln, dense_grid.points).real), dense_grid),
            spec)
        tau_grid = trapezoid_grid(2048)
        tau = tau_modulus(tgt, 1.0 / n, r, spec, tau_grid, sub=tau_sub)
        rows.append(DecayRow(n, float(err), float(tau),
                             float(err / tau) if tau else math.inf))
    ns = np.array([row.n for row in rows], dtype=float)
    errs = np.array([row.error for row in rows])
    slope = float(np.polyfit(np.log(ns), np.log(errs), 1)[0])
    ratios = [row.ratio for row in rows if math.isfinite(row.ratio)]
    spread = max(ratios) / min(ratios) if ratios else math.inf
    return {"rows": rows, "slope": slope, "ratio_spread": float(spread)}


def stechkin_boas_ratio(model: TrigPoly, h: float, r: int) -> float | None:
    """h^r ||T^(r)||_2 / ||Delta_h^r T||_2 from the coefficient formulas.

    Valid for 0 < h < pi/n; per frequency the ratio is
    ((kh/2)/sin(kh/2))^r, so mixtures stay inside [1, (pi/2)^r].
    """
    n = model.n
    if not 0.0 < h < math.pi / max(n, 1):
        raise SmoothnessError("need 0 < h < pi/n")
    k = np.arange(-n, n + 1)
    c2 = np.abs(model.coeffs) ** 2
    num = h ** (2 * r) * float(c2 @ (k.astype(float) ** (2 * r)))
    den = float(c2 @ (2.0 * np.abs(np.sin(k * h / 2.0))) ** (2 * r))
    if den == 0.0:
        return None
    return math.sqrt(num / den)


def ulyanov_check(tgt: TargetFunction, n: int, spec_x: NormSpec,
                  target_norm: str = "linf", M: int | None = None) -> dict:
    """Coarse-to-fine best-approximation transfer bound.

    LHS is E_n(f) in the target metric; RHS is
    sigma_{2n} E_n(f)_X + sum_{nu=n+1}^{M} sigma_{4 nu} E_nu(f)_X / nu plus
    a tail bound from the target's known decay.  Requires a target with an
    explicit L_2 tail (refuses otherwise) and X = L_2.
    """
    if not (spec_x.kind == "lp" and spec_x.p == 2):
        raise SmoothnessError("sigma sums implemented for X = L_2")
    if tgt.decay_exponent is None:
        raise SmoothnessError(f"target {tgt.id!r} has no known decay; refusing")
    M = M or 4 * n
    if M < 4 * n:
        raise SmoothnessError("truncation must reach at least 4n")
    sigma = lambda nu: 1.0 / chi_norm(spec_x, TWO_PI / nu)
    e_x = lambda nu: l2_best_approx_exact(tgt, nu)
    rhs = sigma(2 * n) * e_x(n)
    for nu in range(n + 1, M + 1):
        rhs += sigma(4 * nu) * e_x(nu) / nu
    s = tgt.decay_exponent
    if s <= 0.5:
        raise SmoothnessError("decay too slow for a convergent sigma sum")
    cM = e_x(M) * M ** s
    tail = cM * math.sqrt(4.0 / TWO_PI) * (M ** (0.5 - s)) / (s - 0.5)
    rhs += tail
    if target_norm == "linf":
        lhs = best_uniform_error(tgt, n)
    else:
        raise SmoothnessError("only the sup-norm target is implemented")
    return {"lhs": lhs, "rhs": float(rhs), "tail_bound": float(tail),
            "implied_constant": lhs / rhs if rhs else math.inf}
