"""Configuration-driven experiment harness.

Every checker is exposed as a named experiment producing deterministic CSV
rows with the schema

    experiment, family, spec, n, N, lower_ratio, upper_ratio,
    bound_low, bound_high, violations, trials, seed, wall_ms

(wall_ms is informational and excluded from byte-comparison contracts; a
pass-marked experiment requires zero violations in every row).
"""

from __future__ import annotations

import fnmatch
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import lab, models, nodes, norms, operators, smoothness
from .grids import (TWO_PI, grid_for_weight, torus_grid_for_degree, sample,
                    trapezoid_grid)
from .lab import constant_bounds
from .norms import NormSpec, parse_spec

CSV_COLUMNS = ("experiment", "family", "spec", "n", "N", "lower_ratio",
               "upper_ratio", "bound_low", "bound_high", "violations",
               "trials", "seed", "wall_ms")


class ConfigError(ValueError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line, self.col = line, col


def _seed_for(master: int, trial: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(master, spawn_key=(trial,))


def _fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def make_row(experiment, *, family="", spec="", n="", N="", lower_ratio="",
             upper_ratio="", bound_low="", bound_high="", violations=0,
             trials=0, seed=0, wall_ms=0.0) -> dict:
    return {k: v for k, v in locals().items() if k in CSV_COLUMNS}


def _cycle(values, i):
    return values[i % len(values)]


# ---------------------------------------------------------------------------
# experiment runners (each returns a list of row dicts; violations per row)
# ---------------------------------------------------------------------------

def run_quad_exactness_trig(cfg):
    """Node-sum inner products reproduce integrals on the minimal grid."""
    tol = cfg["tol"]
    rows = []
    for n in cfg["n"]:
        grid = torus_grid_for_degree(n)
        t_k = operators.lagrange_nodes(n)
        worst, bad = 0.0, 0
        per_n = max(1, cfg["trials"] // len(cfg["n"]))
        for i in range(per_n):
            t = models.random_model("trig", n, _seed_for(cfg["seed"], 2 * i + 100 * n))
            q = models.random_model("trig", n, _seed_for(cfg["seed"], 2 * i + 100 * n + 1))
            tv = models.evaluate(t, grid.points)
            qv = models.evaluate(q, grid.points)
            cont = grid.integrate(tv * np.conj(qv))
            disc = (TWO_PI / (2 * n + 1)) * np.sum(
                models.evaluate(t, t_k) * np.conj(models.evaluate(q, t_k)))
            scale = (math.sqrt(abs(grid.integrate(np.abs(tv) ** 2)))
                     * math.sqrt(abs(grid.integrate(np.abs(qv) ** 2))))
            err = abs(cont - disc) / scale
            worst = max(worst, err)
            bad += err > tol
        rows.append(make_row("quad_exactness_trig", family="trig", spec="l2",
                             n=n, N=2 * n + 1, upper_ratio=worst,
                             bound_high=tol, violations=bad, trials=per_n,
                             seed=cfg["seed"]))
    return rows


def run_mz_l2_exact(cfg):
    """Uniform-cell sampling norm equals the L2 norm on the minimal grid."""
    spec = parse_spec("lp:2")
    tol = cfg["tol"]
    rows = []
    for n in cfg["n"]:
        system = nodes.minimal_trig_nodes(n)
        grid = torus_grid_for_degree(n)
        lo, hi, bad = math.inf, -math.inf, 0
        per_n = max(1, cfg["trials"] // len(cfg["n"]))
        for i in range(per_n):
            t = models.random_model("trig", n, _seed_for(cfg["seed"], i + 7919 * n))
            rho = lab.mz_two_sided_ratio(t, system, spec, grid)
            lo, hi = min(lo, rho), max(hi, rho)
            bad += abs(rho - 1.0) > tol
        rows.append(make_row("mz_l2_exact", family="trig", spec="lp:2", n=n,
                             N=2 * n + 1, lower_ratio=lo, upper_ratio=hi,
                             bound_low=1 - tol, bound_high=1 + tol,
                             violations=bad, trials=per_n, seed=cfg["seed"]))
    return rows


def run_mz_orlicz_3d(cfg):
    """Discrete Luxemburg norm on the minimal grid is at most 3^d times the
    continuous one (d = 1 here)."""
    tol = cfg["tol"]
    rows = []
    for spec_text in cfg["specs"]:
        spec = parse_spec(spec_text)
        for n in cfg["n"]:
            system = nodes.minimal_trig_nodes(n)
            grid = torus_grid_for_degree(n)
            per = max(1, cfg["trials"] // len(cfg["n"]))
            hi, bad = -math.inf, 0
            for i in range(per):
                t = models.random_model("trig", n, _seed_for(cfg["seed"], i + 104729 * n),
                                        real_valued=True)
                cont = norms.continuous_norm(sample(t, grid), spec)
                if cont == 0.0:
                    continue
                disc = norms.discrete_mz_norm(
                    models.evaluate(t, system.nodes), system.cells, spec,
                    measures=system.cell_measures())
                rho = disc / cont
                hi = max(hi, rho)
                bad += rho > 3.0 * (1.0 + tol)
            rows.append(make_row("mz_orlicz_3d", family="trig",
                                 spec=spec_text, n=n, N=2 * n + 1,
                                 upper_ratio=hi, bound_high=3.0,
                                 violations=bad, trials=per,
                                 seed=cfg["seed"]))
    return rows


def run_zygmund_node_bound(cfg):
    """Node sums of Phi(T) against the mesh-dependent integral bound."""
    n = cfg["n"][0]
    rows = []
    grid = torus_grid_for_degree(n)
    for phi_idx, phi_text in enumerate(cfg["phis"]):
        phi = norms.make_phi(*_parse_phi(phi_text))
        bad, worst = 0, math.inf
        g = np.random.Generator(np.random.Philox(
            _seed_for(cfg["seed"], 900_000 + phi_idx)))
        node_sets = []
        for _ in range(cfg["node_sets"]):
            m = int(g.integers(3, cfg["max_nodes"] + 1))
            pts = np.sort(g.uniform(0.0, TWO_PI, size=m))
            while np.min(np.diff(pts, append=pts[0] + TWO_PI)) < 1e-6:
                pts = np.sort(g.uniform(0.0, TWO_PI, size=m))
            node_sets.append(pts)
        for i in range(cfg["trials"]):
            t = models.random_model("trig", n, _seed_for(cfg["seed"], 31 * i),
                                    real_valued=True)
            res = lab.zygmund_discrete_bound_check(
                t, node_sets[i % len(node_sets)], phi, grid)
            rel = res["margin"] / max(res["rhs"], 1e-300)
            worst = min(worst, rel)
            bad += res["margin"] < -1e-9 * res["rhs"]
        rows.append(make_row("zygmund_node_bound", family="trig",
                             spec=f"orlicz:{phi_text}", n=n,
                             N=cfg["max_nodes"], lower_ratio=worst,
                             bound_low=0.0, violations=bad,
                             trials=cfg["trials"], seed=cfg["seed"]))
    return rows


def _parse_phi(text):
    parts = text.split(":")
    return (parts[0], *map(float, parts[1:]))


def run_orlicz_sharp_upper(cfg):
    """Discrete sharp Orlicz norms on arbitrary meshes against the
    mesh-gauge constant."""
    tol = cfg["tol"]
    rows = []
    for phi_text in cfg["phis"]:
        phi = norms.make_phi(*_parse_phi(phi_text))
        bad, worst = 0, 0.0
        for i in range(cfg["trials"]):
            g = np.random.Generator(np.random.Philox(
                _seed_for(cfg["seed"], i + 5000)))
            n = int(_cycle(cfg["n"], i))
            N = int(g.integers(2 * n + 1, 6 * n + 2))
            pts = np.sort(g.uniform(0.0, TWO_PI, size=N))
            if np.min(np.diff(pts, append=pts[0] + TWO_PI)) < 1e-9:
                continue
            t = models.random_model("trig", n, _seed_for(cfg["seed"], i),
                                    real_valued=True)
            delta = nodes.mesh_gauges(pts).delta
            factor = constant_bounds("orlicz_sharp_upper", n=n, N=N,
                                     delta=delta)["factor"]
            disc, _ = norms.discrete_orlicz_sharp_norm(
                models.evaluate(t, pts), N, phi)
            cont = norms.orlicz_sharp_norm(
                sample(t, torus_grid_for_degree(n)), phi)
            ratio = disc / (factor * cont)
            worst = max(worst, ratio)
            bad += disc > factor * cont * (1.0 + tol)
        rows.append(make_row("orlicz_sharp_upper", family="trig",
                             spec=f"orlicz:{phi_text}:sharp",
                             n=max(cfg["n"]), N=0, upper_ratio=worst,
                             bound_high=1.0, violations=bad,
                             trials=cfg["trials"], seed=cfg["seed"]))
    return rows


def run_extremal_equalities(cfg):
    """sin(nx) attains the derivative-growth constant; the top Chebyshev
    polynomial attains the endpoint-degree-squared constant."""
    rows = []
    for n in cfg["n"]:
        rep = lab.bernstein_estimate("trig", n, NormSpec("linf"), r=1,
                                     trials=0, ascent_steps=0)
        bad = int(abs(rep.normalized - 1.0) > cfg["tol_trig"])
        bad += int(rep.raw_sup > rep.bound * (1.0 + cfg["tol_trig"]))
        rows.append(make_row("extremal_equalities", family="trig",
                             spec="linf", n=n, lower_ratio=rep.normalized,
                             upper_ratio=rep.normalized, bound_high=1.0,
                             violations=bad, trials=1, seed=cfg["seed"]))
        rep = lab.bernstein_estimate("alg", n, NormSpec("linf"), r=1,
                                     beta=2.0, trials=0, ascent_steps=0)
        bad = int(abs(rep.raw_sup - n * n) > cfg["tol_markov"] * n * n)
        bad += int(rep.raw_sup > rep.bound * (1.0 + cfg["tol_markov"]))
        rows.append(make_row("extremal_equalities", family="alg",
                             spec="linf", n=n, lower_ratio=rep.raw_sup,
                             upper_ratio=rep.raw_sup, bound_high=rep.bound,
                             violations=bad, trials=1, seed=cfg["seed"]))
    return rows


def _maxmin_trial(args):
    seed, i, n_list, A, m = args
    n = int(_cycle(n_list, i))
    t = models.random_model("trig", n, _seed_for(seed, i), real_valued=True)
    grid = trapezoid_grid(max(m, 64 * n))
    spec = NormSpec("lp", p=2.0)
    fmax, fmin = lab.max_min_function(t, A, 1.0, "1", grid)
    tn = norms.continuous_norm(sample(t, grid), spec)
    return (norms.continuous_norm(fmax, spec), norms.continuous_norm(fmin, spec), tn)


def run_maxmin_sandwich(cfg):
    """Window maximal/minimal function sandwich at contraction 0.4."""
    A, eta = cfg["A"], cfg["eta"]
    tol = cfg["tol"]
    args = [(cfg["seed"], i, cfg["n"], A, cfg["grid"])
            for i in range(cfg["trials"])]
    results = _map_trials(_maxmin_trial, args, cfg.get("jobs", 1))
    bad = 0
    worst_up, worst_lo = 0.0, math.inf
    for vmax, vmin, tn in results:
        if tn == 0.0:
            continue
        bad += vmax > (1.0 + eta) * tn + tol
        bad += tn > vmin / (1.0 - eta) + tol
        worst_up = max(worst_up, vmax / tn)
        worst_lo = min(worst_lo, vmin / tn)
    row = make_row("maxmin_sandwich", family="trig", spec="lp:2",
                   n=max(cfg["n"]), lower_ratio=worst_lo,
                   upper_ratio=worst_up, bound_low=1.0 - eta,
                   bound_high=1.0 + eta, violations=bad,
                   trials=cfg["trials"], seed=cfg["seed"])
    return [row]


def _grid_mz_trial(args):
    seed, i, n_list, rule, spec_text = args
    n = int(_cycle(n_list, i))
    N = eval_n_rule(rule, n)
    t = models.random_model("trig", n, _seed_for(seed, i), real_valued=True)
    system = nodes.equispaced_nodes(N)
    lo, hi = lab.grid_mz_extrema_ratios(t, system, parse_spec(spec_text),
                                        subdiv=48, polish=12)
    return n, N, lo, hi


def run_grid_mz_constants(cfg):
    """Cell-extrema sampling norms against the explicit window constants."""
    args = [(cfg["seed"], i, cfg["n"], cfg["nodes_rule"], cfg["spec"])
            for i in range(cfg["trials"])]
    results = _map_trials(_grid_mz_trial, args, cfg.get("jobs", 1))
    rows = []
    per_n: dict = {}
    for n, N, lo, hi in results:
        per_n.setdefault((n, N), []).append((lo, hi))
    for (n, N), vals in sorted(per_n.items()):
        A = TWO_PI * n / N
        b = constant_bounds("grid_mz", A=A)
        lo_b = max(b["min_based_lower"], cfg["bound_low"])
        hi_b = min(b["max_based_upper"], cfg["bound_high"])
        lo = min(v[0] for v in vals)
        hi = max(v[1] for v in vals)
        bad = sum((v[0] < lo_b) + (v[1] > hi_b) for v in vals)
        rows.append(make_row("grid_mz_constants", family="trig",
                             spec=cfg["spec"], n=n, N=N, lower_ratio=lo,
                             upper_ratio=hi, bound_low=lo_b, bound_high=hi_b,
                             violations=bad, trials=len(vals),
                             seed=cfg["seed"]))
    return rows


def run_gauss_jacobi_cms(cfg):
    """Gauss rules: positivity, exactness, cell separation, p = 2 stability."""
    rows = []
    for alpha, beta in cfg["ab"]:
        bad = 0
        for n in cfg["n"]:
            xk, mu = nodes.gauss_jacobi(n, alpha, beta)
            if np.any(mu <= 0):
                bad += 1
            system = nodes.cms_cells(n, alpha, beta)
            if system.meta["cms_max_ratio"] > 1.0 + cfg["tol_cms"]:
                bad += 1
            grid = grid_for_weight(("jacobi", alpha, beta), 2 * n + 8)
            per = max(1, cfg["pairs"] // len(cfg["n"]))
            for i in range(per):
                g = np.random.Generator(np.random.Philox(
                    _seed_for(cfg["seed"], 1000 * n + i)))
                p = models.AlgPoly(g.standard_normal(n))
                q = models.AlgPoly(g.standard_normal(n))
                pv = models.evaluate(p, grid.points)
                qv = models.evaluate(q, grid.points)
                cont = grid.integrate(pv * qv)
                disc = float(models.evaluate(p, xk) @ (mu * models.evaluate(q, xk)))
                scale = math.sqrt(abs(grid.integrate(pv ** 2))) * math.sqrt(
                    abs(grid.integrate(qv ** 2)))
                bad += abs(cont - disc) > cfg["tol_exact"] * max(scale, 1e-30)
        # p = 2 ratio stability across the drift sweep
        los, his = [], []
        for n in cfg["drift_n"]:
            rep = lab.quadrature_mz_experiment(n, alpha, beta, p=2.0,
                                               trials=cfg["drift_trials"],
                                               seed=cfg["seed"])
            los.append(rep.lower_ratio)
            his.append(rep.upper_ratio)
        drift = max(his) / min(los)
        bad += drift > 1.0 + cfg["max_drift"]
        rows.append(make_row("gauss_jacobi_cms", family="alg",
                             spec=f"wlp:2:jacobi:{alpha}:{beta}",
                             n=max(cfg["n"]), N=max(cfg["n"]),
                             lower_ratio=min(los), upper_ratio=max(his),
                             bound_high=1.0 + cfg["max_drift"],
                             violations=bad,
                             trials=cfg["pairs"] + cfg["drift_trials"],
                             seed=cfg["seed"]))
    return rows


def run_stechkin_boas(cfg):
    """Difference-to-derivative norm ratio stays in [1, (pi/2)^r] in L2."""
    n = cfg["n"][0]
    tol = cfg["tol"]
    rows = []
    for r in cfg["orders"]:
        lo, hi, bad = math.inf, -math.inf, 0
        cap = (math.pi / 2.0) ** r
        for i in range(cfg["trials"]):
            ss = _seed_for(cfg["seed"], 100 * r + i)
            t = models.random_model("trig", n, ss)
            g = np.random.Generator(np.random.Philox(
                _seed_for(cfg["seed"], 100 * r + i + 1_000_000)))
            h = g.uniform(0.05, 0.999) * math.pi / n
            ratio = smoothness.stechkin_boas_ratio(t, h, r)
            if ratio is None:
                continue
            lo, hi = min(lo, ratio), max(hi, ratio)
            bad += not (1.0 - tol <= ratio <= cap * (1.0 + tol))
        rows.append(make_row("stechkin_boas", family="trig", spec="lp:2",
                             n=n, lower_ratio=lo, upper_ratio=hi,
                             bound_low=1.0, bound_high=cap, violations=bad,
                             trials=cfg["trials"], seed=cfg["seed"]))
    return rows


def _nikolskii_trial(args):
    seed, i, n_list, gamma, rule = args
    n = int(_cycle(n_list, i))
    N = eval_n_rule(rule, n)
    t = models.random_model("trig", n, _seed_for(seed, i), real_valued=True)
    res = lab.nikolskii_check(t, NormSpec("lp", p=2.0), N, gamma)
    return res["margin"], res["sup"], res["bound"]


def run_nikolskii(cfg):
    """Sup-norm transfer bound with the explicit exponential constant."""
    args = [(cfg["seed"], i, cfg["n"], cfg["gamma"], cfg["nodes_rule"])
            for i in range(cfg["trials"])]
    results = _map_trials(_nikolskii_trial, args, cfg.get("jobs", 1))
    bad = sum(m < 0 for m, _, _ in results)
    worst = min((m / b for m, _, b in results if b > 0), default=math.inf)
    row = make_row("nikolskii", family="trig", spec="lp:2", n=max(cfg["n"]),
                   N=eval_n_rule(cfg["nodes_rule"], max(cfg["n"])),
                   lower_ratio=worst, bound_low=0.0, violations=bad,
                   trials=cfg["trials"], seed=cfg["seed"])
    return [row]


def run_spline_bernstein(cfg):
    """Derivative growth of periodic splines against 2 r^2 n."""
    tol = cfg["tol"]
    rows = []
    for r in cfg["orders"]:
        hi, bad = 0.0, 0
        per = max(1, cfg["trials"] // len(cfg["orders"]))
        for i in range(per):
            g = np.random.Generator(np.random.Philox(
                _seed_for(cfg["seed"], 97 * r + i)))
            n = int(g.integers(max(r, 2), cfg["max_n"] + 1))
            s = models.random_model("spline", n, _seed_for(cfg["seed"], 7 * i + r),
                                    r=r)
            ds = models.differentiate(s, 1, piecewise=(r == 2))
            num = lab.sup_norm(ds)
            den = lab.sup_norm(s)
            if den == 0.0:
                continue
            bound = constant_bounds("spline_bernstein", r=r, n=n)["factor"]
            ratio = num / (den * bound)
            hi = max(hi, ratio)
            bad += num > bound * den * (1.0 + tol)
        rows.append(make_row("spline_bernstein", family="spline",
                             spec="linf", n=cfg["max_n"], lower_ratio=hi,
                             upper_ratio=hi, bound_high=1.0, violations=bad,
                             trials=per, seed=cfg["seed"]))
    return rows


def run_lagrange_error(cfg):
    """Interpolation error decay and its ratio to the averaged modulus."""
    tgt = smoothness.target(cfg["target"])
    spec = parse_spec(cfg["spec"])
    res = smoothness.lagrange_error_check(tgt, cfg["n"], spec, r=1)
    ok_slope = cfg["slope_lo"] <= res["slope"] <= cfg["slope_hi"]
    ok_spread = res["ratio_spread"] <= cfg["max_spread"]
    rows = []
    for i, row_ in enumerate(res["rows"]):
        rows.append(make_row("lagrange_error", family="target:" + cfg["target"],
                             spec=cfg["spec"], n=row_.n,
                             lower_ratio=row_.error, upper_ratio=row_.ratio,
                             bound_low=res["slope"],
                             bound_high=cfg["max_spread"],
                             violations=(int(not ok_slope) + int(not ok_spread)
                                         if i == 0 else 0),
                             trials=len(cfg["n"]), seed=cfg["seed"]))
    return rows


def run_expsum_bernstein(cfg):
    """Exponential-sum derivative growth tracks the exponent-set parameter."""
    consts = []
    rows = []
    for n in cfg["n"]:
        rep = lab.bernstein_estimate("expsum", n, NormSpec("linf"), r=1,
                                     trials=cfg["trials"],
                                     seed=cfg["seed"],
                                     ascent_steps=cfg["ascent"])
        consts.append(rep.normalized)
        rows.append(make_row("expsum_bernstein", family="expsum",
                             spec="linf", n=n, lower_ratio=rep.normalized,
                             upper_ratio=rep.raw_sup,
                             violations=0, trials=cfg["trials"],
                             seed=cfg["seed"]))
    spread = max(consts) / min(consts)
    bad = int(spread > cfg["max_spread"])
    for r in rows:
        r["bound_high"] = cfg["max_spread"]
        r["violations"] = bad
    return rows


def run_orlicz_jitter(cfg):
    """Jittered minimal grids keep the sharp-norm constant 8e/3."""
    tol = cfg["tol"]
    phi = norms.make_phi(*_parse_phi(cfg["phi"]))
    factor = constant_bounds("orlicz_jitter_upper")["factor"]
    hi, bad = 0.0, 0
    for i in range(cfg["trials"]):
        g = np.random.Generator(np.random.Philox(
            _seed_for(cfg["seed"], 70_000 + i)))
        n = int(_cycle(cfg["n"], i))
        sigma = float(g.uniform(0.01, 0.24))
        system = nodes.perturbed_nodes(n, sigma, _seed_for(cfg["seed"], i + 17))
        t = models.random_model("trig", n, _seed_for(cfg["seed"], i),
                                real_valued=True)
        disc, _ = norms.discrete_orlicz_sharp_norm(
            models.evaluate(t, system.nodes), 2 * n + 1, phi)
        cont = norms.orlicz_sharp_norm(sample(t, torus_grid_for_degree(n)), phi)
        ratio = disc / (factor * cont)
        hi = max(hi, ratio)
        bad += disc > factor * cont * (1.0 + tol)
    return [make_row("orlicz_jitter", family="trig",
                     spec=f"orlicz:{cfg['phi']}:sharp", n=max(cfg["n"]),
                     N=0, upper_ratio=hi, bound_high=1.0, violations=bad,
                     trials=cfg["trials"], seed=cfg["seed"])]


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Experiment:
    id: str
    summary: str
    runner: object
    defaults: dict


REGISTRY = {e.id: e for e in [
    Experiment("quad_exactness_trig",
               "minimal-grid node sums reproduce polynomial inner products",
               run_quad_exactness_trig,
               {"n": [1, 2, 4, 8, 16, 32, 64], "trials": 100, "seed": 20_240_001,
                "tol": 1e-10}),
    Experiment("mz_l2_exact",
               "uniform-cell sampling norm equals the L2 norm (discrete Parseval)",
               run_mz_l2_exact,
               {"n": [1, 2, 4, 8, 16, 32, 64], "trials": 500, "seed": 20_240_002,
                "tol": 1e-10}),
    Experiment("mz_orlicz_3d",
               "minimal-grid discrete Luxemburg norm bounded by 3 x continuous",
               run_mz_orlicz_3d,
               {"n": [2, 4, 8, 16, 32], "trials": 500, "seed": 20_240_003,
                "tol": 1e-8, "specs": ["orlicz:power:1.5", "orlicz:power:2",
                                       "orlicz:power:4"]}),
    Experiment("zygmund_node_bound",
               "node sums of a convex gauge against the mesh-gap integral bound",
               run_zygmund_node_bound,
               {"n": [8], "trials": 200, "node_sets": 50, "max_nodes": 40,
                "seed": 20_240_004, "phis": ["power:1", "power:2"]}),
    Experiment("orlicz_sharp_upper",
               "discrete sharp Orlicz norm bounded via the minimal-gap constant",
               run_orlicz_sharp_upper,
               {"n": [2, 4, 8, 16], "trials": 100, "seed": 20_240_005,
                "tol": 1e-6, "phis": ["power:1.5", "power:2",
                                      "exp_minus_one"]}),
    Experiment("extremal_equalities",
               "classical extremal polynomials attain their derivative-growth constants",
               run_extremal_equalities,
               {"n": [2, 3, 4, 6, 8, 10], "seed": 20_240_006,
                "tol_trig": 1e-9, "tol_markov": 1e-6}),
    Experiment("maxmin_sandwich",
               "window maximal/minimal function norms sandwich the function norm",
               run_maxmin_sandwich,
               {"n": [2, 4, 8, 16, 32], "trials": 200, "seed": 20_240_007,
                "A": 0.2, "eta": 0.4, "tol": 1e-6, "grid": 2048}),
    Experiment("grid_mz_constants",
               "oversampled-grid cell-extrema ratios within the explicit window constants",
               run_grid_mz_constants,
               {"n": [2, 4, 8, 16, 32], "trials": 500, "seed": 20_240_008,
                "nodes_rule": "10n", "spec": "lp:4",
                "bound_low": 1.0 / 7.97, "bound_high": 1.875}),
    Experiment("gauss_jacobi_cms",
               "Gauss-node rules: positive weights, exactness, cell separation, stability",
               run_gauss_jacobi_cms,
               {"ab": [(-0.5, -0.5), (0.0, 0.0), (0.5, 0.5)],
                "n": [1, 2, 4, 8, 12, 16, 20], "pairs": 100,
                "drift_n": [8, 12, 16, 20, 24], "drift_trials": 40,
                "seed": 20_240_009, "tol_exact": 1e-9, "tol_cms": 1e-10,
                "max_drift": 0.25}),
    Experiment("stechkin_boas",
               "difference quotient versus derivative norm ratio window in L2",
               run_stechkin_boas,
               {"n": [16], "orders": [1, 2, 3], "trials": 500,
                "seed": 20_240_010, "tol": 1e-9}),
    Experiment("nikolskii",
               "sup norm bounded by the explicit density-constant multiple of the L2 norm",
               run_nikolskii,
               {"n": [2, 4, 8, 16, 32, 64], "gamma": 2.0, "nodes_rule": "2n",
                "trials": 1000, "seed": 20_240_011}),
    Experiment("spline_bernstein",
               "periodic-spline derivative growth bounded by 2 r^2 n",
               run_spline_bernstein,
               {"orders": [2, 3, 4], "max_n": 64, "trials": 500,
                "seed": 20_240_012, "tol": 1e-9}),
    Experiment("lagrange_error",
               "interpolation error decay rate and averaged-modulus ratio",
               run_lagrange_error,
               {"n": [8, 16, 32, 64, 128], "target": "abs_cos", "spec": "lp:2",
                "slope_lo": -1.3, "slope_hi": -0.8, "max_spread": 4.0,
                "seed": 20_240_013}),
    Experiment("expsum_bernstein",
               "exponential-sum derivative growth fits a stable multiple of n^2 + sum(lambda)",
               run_expsum_bernstein,
               {"n": [2, 3, 4, 5, 6, 7, 8], "trials": 24, "ascent": 8,
                "max_spread": 3.0, "seed": 20_240_014}),
    Experiment("orlicz_jitter",
               "jittered minimal grids keep the 8e/3 sharp-norm constant",
               run_orlicz_jitter,
               {"n": [2, 4, 8, 16], "trials": 100, "seed": 20_240_015,
                "tol": 1e-6, "phi": "power:2"}),
]}


def eval_n_rule(rule: str, n: int) -> int:
    """Node-count rules: '10n', '2n+1', 'abs:40'."""
    rule = str(rule).strip().replace(" ", "")
    if rule.startswith("abs:"):
        return int(rule[4:])
    if rule.endswith("n"):
        return int(float(rule[:-1]) * n)
    if "n+" in rule:
        a, b = rule.split("n+")
        return int(float(a) * n) + int(b)
    raise ConfigError(f"cannot parse node rule {rule!r}")


def _map_trials(fn, args, jobs: int):
    if jobs <= 1:
        return [fn(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, args, chunksize=max(1, len(args) // (4 * jobs))))


# ---------------------------------------------------------------------------
# config parsing and the run loop
# ---------------------------------------------------------------------------

def parse_config(text: str) -> dict:
    """Flat 'key = value' sections under bracketed experiment names."""
    sections: dict = {}
    current = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.lstrip().startswith("["):
            name = line.strip()
            if not name.endswith("]"):
                raise ConfigError("unterminated section header", ln,
                                  len(raw))
            current = name[1:-1].strip()
            if not current:
                raise ConfigError("empty section name", ln, 2)
            sections[current] = {}
            continue
        if current is None:
            raise ConfigError("key outside of a section", ln, 1)
        if "=" not in line:
            raise ConfigError("expected 'key = value'", ln,
                              len(line.rstrip()) + 1)
        key, _, value = line.partition("=")
        sections[current][key.strip()] = _parse_value(value.strip(), ln)
    return sections


def _parse_value(text: str, ln: int):
    if "," in text:
        return [_parse_scalar(v.strip(), ln) for v in text.split(",") if v.strip()]
    return _parse_scalar(text, ln)


def _parse_scalar(text: str, ln: int):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        pass
    return text


def _merge_config(exp: Experiment, overrides: dict, seed_override=None) -> dict:
    cfg = dict(exp.defaults)
    for k, v in overrides.items():
        if k == "experiment":
            continue
        if k in ("n", "orders", "drift_n", "specs", "phis") and not isinstance(v, list):
            v = [v]
        cfg[k] = v
    if seed_override is not None:
        cfg["seed"] = int(seed_override)
    return cfg


def run_experiments(config: dict | None, out_dir, jobs: int = 1,
                    seed_override=None, name_filter: str | None = None):
    """Run experiments (config sections or full registry) and write CSVs.

    Returns (all_passed, summary_lines).  Raises ConfigError for bad
    references; numerical failures propagate to the caller.
    """
    import os
    os.makedirs(out_dir, exist_ok=True)
    if config:
        plan = []
        for section, body in config.items():
            exp_id = body.get("experiment", section)
            if exp_id not in REGISTRY:
                raise ConfigError(f"unknown experiment {exp_id!r}")
            plan.append((section, REGISTRY[exp_id], body))
    else:
        plan = [(e.id, e, {}) for e in REGISTRY.values()]
    if name_filter:
        plan = [p for p in plan if fnmatch.fnmatch(p[0], name_filter)]
    summary = []
    all_ok = True
    for section, exp, body in plan:
        cfg = _merge_config(exp, body, seed_override)
        _validate_cfg(cfg)
        cfg.setdefault("jobs", jobs)
        t0 = time.perf_counter()
        try:
            rows = exp.runner(cfg)
        except ArithmeticError as exc:
            raise ArithmeticError(f"experiment {section!r}: {exc}") from exc
        wall = (time.perf_counter() - t0) * 1000.0
        violations = sum(int(r["violations"]) for r in rows)
        for r in rows:
            r["experiment"] = section
            r["wall_ms"] = wall / max(len(rows), 1)
        _write_csv(os.path.join(out_dir, f"{section}.csv"), rows)
        ok = violations == 0
        all_ok &= ok
        summary.append(f"{section}: {'PASS' if ok else 'FAIL'} "
                       f"(violations={violations}, rows={len(rows)})")
    with open(os.path.join(out_dir, "summary.txt"), "w") as fh:
        fh.write("\n".join(summary) + "\n")
    return all_ok, summary


def _validate_cfg(cfg: dict):
    for key in ("spec",):
        if key in cfg and isinstance(cfg[key], str):
            parse_spec(cfg[key])
    for key in ("specs",):
        if key in cfg:
            for s in cfg[key]:
                parse_spec(s)
    if "n" in cfg and not cfg["n"]:
        raise ConfigError("empty degree list")


def _write_csv(path: str, rows):
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join(_fmt(r.get(c, "")) for c in CSV_COLUMNS))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def list_experiments() -> str:
    width = max(len(e.id) for e in REGISTRY.values())
    lines = ["available experiments:"]
    for e in REGISTRY.values():
        lines.append(f"  {e.id:<{width}}  {e.summary}")
    return "\n".join(lines)
