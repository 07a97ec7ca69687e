import numpy as np
import pytest
from scipy.optimize import linprog

from mzlab.simplex import LPError, solve_lp


def test_tiny_known_solution():
    # min -x - y  s.t.  x + y <= 1, x <= 0.5
    c = np.array([-1.0, -1.0])
    A = np.array([[1.0, 1.0], [1.0, 0.0]])
    b = np.array([1.0, 0.5])
    x, val = solve_lp(c, A, b)
    assert val == pytest.approx(-1.0)
    assert np.all(A @ x <= b + 1e-12)


def test_unbounded_detected():
    c = np.array([-1.0])
    A = np.array([[-1.0]])
    b = np.array([1.0])
    with pytest.raises(LPError):
        solve_lp(c, A, b)


def test_phase_one_negative_rhs():
    # force x1 >= 1 via -x1 <= -1
    c = np.array([1.0, 2.0])
    A = np.array([[-1.0, 0.0], [1.0, 1.0]])
    b = np.array([-1.0, 3.0])
    x, val = solve_lp(c, A, b)
    assert val == pytest.approx(1.0)
    assert x[0] == pytest.approx(1.0)


def test_infeasible_detected():
    # x1 >= 2 and x1 <= 1
    c = np.array([1.0])
    A = np.array([[-1.0], [1.0]])
    b = np.array([-2.0, 1.0])
    with pytest.raises(LPError):
        solve_lp(c, A, b)


@pytest.mark.parametrize("seed", range(8))
def test_random_against_scipy(seed):
    rng = np.random.default_rng(seed)
    m, n = 14, 7
    A = rng.standard_normal((m, n))
    b = rng.uniform(0.5, 2.0, m)
    c = rng.standard_normal(n)
    A = np.vstack([A, np.ones(n)])
    b = np.append(b, 10.0)
    ref = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
    x, val = solve_lp(c, A, b)
    assert ref.status == 0
    assert val == pytest.approx(ref.fun, abs=1e-8)
    assert np.all(A @ x <= b + 1e-8)


@pytest.mark.parametrize("seed", range(8, 14))
def test_random_phase_one_against_scipy(seed):
    rng = np.random.default_rng(seed)
    m, n = 10, 5
    A = rng.standard_normal((m, n))
    b = rng.standard_normal(m)
    c = rng.uniform(0.1, 1.0, n)
    A = np.vstack([A, np.ones(n)])
    b = np.append(b, 8.0)
    ref = linprog(c, A_ub=A, b_ub=b, bounds=[(0, None)] * n, method="highs")
    try:
        x, val = solve_lp(c, A, b)
        assert ref.status == 0
        assert val == pytest.approx(ref.fun, abs=1e-8)
    except LPError:
        assert ref.status in (2, 3)
