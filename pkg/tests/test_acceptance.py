"""Acceptance suite: one test per criterion, at the stated tolerances and
runtime budgets, each printing a PASS/FAIL line.

Criterion 13's slope window is expected red: two independent oracles (the
dense-grid error norm and the exact coefficient-space aliasing formula) put
the interpolation-error decay for |cos x| in L2 at slope -1.44,
asymptotically -3/2, outside the stated [-1.3, -0.8].  The rate follows
from the k^{-2} coefficient decay: both the projection tail and the aliasing
mass scale like n^{-3}.  The companion ratio-spread sub-check passes and is
tested separately.
"""

import time

import numpy as np

from mzlab import norms, smoothness
from mzlab.experiments import REGISTRY

TWO_PI = 2 * np.pi


def _run(name, budget_s, **overrides):
    exp = REGISTRY[name]
    cfg = dict(exp.defaults)
    cfg.update(overrides)
    cfg.setdefault("jobs", 1)
    t0 = time.perf_counter()
    rows = exp.runner(cfg)
    elapsed = time.perf_counter() - t0
    violations = sum(int(r["violations"]) for r in rows)
    return rows, violations, elapsed


def _report(k, ok, detail, elapsed, budget):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {k}: {status} ({detail}; {elapsed:.1f}s / "
          f"budget {budget:.0f}s)")


def test_criterion_01_quadrature_exactness():
    rows, violations, elapsed = _run("quad_exactness_trig", 5.0)
    worst = max(float(r["upper_ratio"]) for r in rows)
    _report(1, violations == 0 and elapsed < 5,
            f"max normalized error {worst:.2e} <= 1e-10", elapsed, 5)
    assert violations == 0
    assert elapsed < 5.0


def test_criterion_02_l2_sampling_exactness():
    rows, violations, elapsed = _run("mz_l2_exact", 10.0)
    lo = min(float(r["lower_ratio"]) for r in rows)
    hi = max(float(r["upper_ratio"]) for r in rows)
    _report(2, violations == 0 and elapsed < 10,
            f"ratios in [{lo:.12f}, {hi:.12f}]", elapsed, 10)
    assert violations == 0
    assert elapsed < 10.0


def test_criterion_03_orlicz_factor_three():
    rows, violations, elapsed = _run("mz_orlicz_3d", 60.0)
    hi = max(float(r["upper_ratio"]) for r in rows)
    _report(3, violations == 0 and elapsed < 60,
            f"max discrete/continuous {hi:.4f} <= 3", elapsed, 60)
    assert violations == 0
    assert elapsed < 60.0


def test_criterion_04_node_sum_gauge_bound():
    rows, violations, elapsed = _run("zygmund_node_bound", 30.0)
    _report(4, violations == 0 and elapsed < 30, "zero margin violations",
            elapsed, 30)
    assert violations == 0
    assert elapsed < 30.0


def test_criterion_05_sharp_norm_mesh_bound():
    rows, violations, elapsed = _run("orlicz_sharp_upper", 60.0)
    hi = max(float(r["upper_ratio"]) for r in rows)
    _report(5, violations == 0 and elapsed < 60,
            f"max disc/(bound*cont) {hi:.4f} <= 1", elapsed, 60)
    assert violations == 0
    assert elapsed < 60.0


def test_criterion_06_extremal_equalities():
    rows, violations, elapsed = _run("extremal_equalities", 5.0)
    _report(6, violations == 0 and elapsed < 5,
            "sin(nx) and the top Chebyshev polynomial attain their constants",
            elapsed, 5)
    assert violations == 0
    assert elapsed < 5.0


def test_criterion_07_window_sandwich():
    rows, violations, elapsed = _run("maxmin_sandwich", 120.0)
    row = rows[0]
    _report(7, violations == 0 and elapsed < 120,
            f"ratios within [{float(row['lower_ratio']):.3f}, "
            f"{float(row['upper_ratio']):.3f}] against [0.6, 1.4]",
            elapsed, 120)
    assert violations == 0
    assert elapsed < 120.0


def test_criterion_08_grid_window_constants():
    rows, violations, elapsed = _run("grid_mz_constants", 120.0)
    lo = min(float(r["lower_ratio"]) for r in rows)
    hi = max(float(r["upper_ratio"]) for r in rows)
    _report(8, violations == 0 and elapsed < 120,
            f"extrema ratios in [{lo:.4f}, {hi:.4f}] against "
            f"[1/7.97, 1.875]", elapsed, 120)
    assert violations == 0
    assert lo >= 1 / 7.97 and hi <= 1.875
    assert elapsed < 120.0


def test_criterion_09_gauss_nodes_cells():
    rows, violations, elapsed = _run("gauss_jacobi_cms", 60.0)
    _report(9, violations == 0 and elapsed < 60,
            "positive weights, 1e-9 exactness, cell separation, "
            "p=2 drift <= 25%", elapsed, 60)
    assert violations == 0
    assert elapsed < 60.0


def test_criterion_10_difference_derivative_window():
    rows, violations, elapsed = _run("stechkin_boas", 10.0)
    _report(10, violations == 0 and elapsed < 10,
            "ratios inside [1, (pi/2)^r] for r in {1,2,3}", elapsed, 10)
    assert violations == 0
    assert elapsed < 10.0


def test_criterion_11_sup_norm_transfer():
    rows, violations, elapsed = _run("nikolskii", 30.0)
    _report(11, violations == 0 and elapsed < 30,
            "margins nonnegative at the explicit constant", elapsed, 30)
    assert violations == 0
    assert elapsed < 30.0


def test_criterion_12_spline_derivative_growth():
    rows, violations, elapsed = _run("spline_bernstein", 30.0)
    _report(12, violations == 0 and elapsed < 30,
            "||S'|| <= 2 r^2 n ||S|| for r in {2,3,4}", elapsed, 30)
    assert violations == 0
    assert elapsed < 30.0


def test_criterion_13_interpolation_error_slope():
    """Expected red: the pinned slope window conflicts with the oracle rate.

    Implemented exactly as stated; both the dense-grid oracle and the
    coefficient-space aliasing oracle give slope -1.44 for |cos x| in L2
    over n in {8..128} (see the module docstring).
    """
    t0 = time.perf_counter()
    res = smoothness.lagrange_error_check(
        smoothness.target("abs_cos"), [8, 16, 32, 64, 128],
        norms.parse_spec("lp:2"), r=1)
    elapsed = time.perf_counter() - t0
    ok = -1.3 <= res["slope"] <= -0.8
    _report("13 (slope)", ok,
            f"fitted slope {res['slope']:.3f} vs stated [-1.3, -0.8]",
            elapsed, 60)
    assert elapsed < 60.0
    assert -1.3 <= res["slope"] <= -0.8, (
        "pinned window is unattainable: oracle slope is "
        f"{res['slope']:.3f}; see the module docstring")


def test_criterion_13_tau_ratio_spread():
    t0 = time.perf_counter()
    res = smoothness.lagrange_error_check(
        smoothness.target("abs_cos"), [8, 16, 32, 64, 128],
        norms.parse_spec("lp:2"), r=1)
    elapsed = time.perf_counter() - t0
    ok = res["ratio_spread"] <= 4.0
    _report("13 (ratio spread)", ok,
            f"error/tau spread {res['ratio_spread']:.3f} <= 4", elapsed, 60)
    assert ok
    assert elapsed < 60.0


def test_criterion_14_exponential_sum_growth():
    rows, violations, elapsed = _run("expsum_bernstein", 30.0)
    consts = [float(r["lower_ratio"]) for r in rows]
    spread = max(consts) / min(consts)
    _report(14, violations == 0 and elapsed < 30,
            f"fitted constant spread {spread:.3f} <= 3", elapsed, 30)
    assert violations == 0
    assert elapsed < 30.0
