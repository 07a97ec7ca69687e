import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mzlab.models import (AlgPoly, DomainError, ExpSum, PeriodicSpline,
                          TrigPoly, UnsupportedOrderError, add_models,
                          differentiate, evaluate, gamma_lambda, random_model,
                          scale_model)

TWO_PI = 2 * np.pi


class TestEvaluate:
    def test_trig_single_frequency_at_zero(self):
        c = np.zeros(3, dtype=complex)
        c[2] = 1.0                      # c_1 = 1
        assert evaluate(TrigPoly(c), np.array([0.0])) == pytest.approx(1.0)

    def test_cheb_t3_at_one(self):
        p = AlgPoly(np.array([0.0, 0, 0, 1]))
        assert evaluate(p, np.array([1.0]))[0] == pytest.approx(1.0)

    def test_spline_hat_peak(self):
        # direct piecewise-linear oracle: the hat of b_0 peaks at knot 1/4
        sp = PeriodicSpline(2, np.array([1.0, 0, 0, 0]))

        def hat_oracle(x):
            u = (x % 1.0) * 4
            return max(0.0, 1.0 - abs(u - 1.0)) if u < 2 else 0.0

        for x in [0.25, 0.1, 0.4, 0.75, 0.99]:
            assert evaluate(sp, np.array([x]))[0] == pytest.approx(
                hat_oracle(x), abs=1e-12)

    def test_trig_periodicity(self, rng):
        t = random_model("trig", 9, 5)
        x = rng.uniform(0, TWO_PI, 40)
        v1 = evaluate(t, x)
        v2 = evaluate(t, x + TWO_PI)
        assert np.all(np.abs(v1 - v2) <= 1e-12 * (1 + np.abs(v1)))

    def test_linearity(self, rng):
        f = random_model("trig", 6, 1)
        g = random_model("trig", 6, 2)
        a, b = 1.7 - 0.3j, -0.8j
        combo = add_models(scale_model(f, a), scale_model(g, b))
        x = rng.uniform(0, TWO_PI, 64)
        lhs = evaluate(combo, x)
        rhs = a * evaluate(f, x) + b * evaluate(g, x)
        assert np.abs(lhs - rhs).max() <= 1e-12 * np.abs(rhs).max()

    def test_domain_error(self):
        p = AlgPoly(np.array([1.0, 2.0]))
        with pytest.raises(DomainError):
            evaluate(p, np.array([1.5]))

    def test_muntz_power_basis(self):
        # x^{0.5} + 2 x^2 on [0.5, 2]
        m = ExpSum(np.array([0.5, 2.0]), np.array([1.0, 2.0]), 0.5, 2.0,
                   muntz=True)
        x = np.array([0.5, 1.0, 1.7])
        expect = np.sqrt(x) + 2 * x ** 2
        assert np.abs(evaluate(m, x) - expect).max() < 1e-12

    def test_trig_2d_tensor(self):
        c = np.zeros((3, 3), dtype=complex)
        c[2, 1] = 1.0                    # e^{i x1} (k1=1, k2=0)
        t = TrigPoly(c, d=2)
        pts = np.array([[0.3, 1.1], [2.0, 0.0]])
        assert np.abs(evaluate(t, pts) - np.exp(1j * pts[:, 0])).max() < 1e-12


class TestDifferentiate:
    def test_trig_sin_derivative_coeffs(self):
        n = 5
        c = np.zeros(2 * n + 1, dtype=complex)
        c[0], c[2 * n] = 0.5j, -0.5j        # sin(nx)
        d = differentiate(TrigPoly(c))
        # n cos(nx): coefficients n/2 at +-n
        assert d.coeffs[0] == pytest.approx(n / 2)
        assert d.coeffs[2 * n] == pytest.approx(n / 2)

    def test_cheb_t3_derivative_at_one_fd_oracle(self):
        p = AlgPoly(np.array([0.0, 0, 0, 1]))
        dp = differentiate(p)
        assert evaluate(dp, np.array([1.0]))[0] == pytest.approx(9.0, abs=1e-10)
        # dense-grid central finite difference oracle
        h = 1e-6
        x = np.array([1.0 - h, 1.0 - 2 * h])
        fd = (evaluate(p, x[1] + 2 * h * np.ones(1))
              - evaluate(p, x[1] * np.ones(1))) / (2 * h)
        assert fd[0] == pytest.approx(evaluate(dp, np.array([1.0 - h]))[0],
                                      rel=1e-5)

    def test_expsum_third_derivative(self):
        m = ExpSum(np.array([2.0]), np.array([1.0 + 0j]), 0, 1)
        d3 = differentiate(m, 3)
        assert d3.coeffs[0] == pytest.approx(8.0)

    @pytest.mark.parametrize("family,kw", [
        ("trig", {}),
        ("alg", {}),
        ("spline", {"r": 4}),
        ("expsum", {}),
    ])
    def test_derivative_matches_central_difference(self, family, kw, rng):
        n = 16 if family != "spline" else 12
        m = random_model(family, n, 99, **kw)
        d = differentiate(m, 1)
        if family == "trig":
            x = rng.uniform(0, TWO_PI, 50)
        elif family == "spline":
            x = rng.uniform(0.01, 0.99, 50)
        else:
            a, b = m.a, m.b
            pad = 0.01 * (b - a)
            x = rng.uniform(a + pad, b - pad, 50)
        h = 1e-5 if family != "spline" else 1e-7
        fd = (evaluate(m, x + h) - evaluate(m, x - h)) / (2 * h)
        dv = evaluate(d, x)
        scale = np.abs(dv).max() + 1.0
        assert np.abs(fd - dv).max() / scale < 1e-6

    def test_spline_order_rules(self):
        s = PeriodicSpline(3, np.arange(1.0, 7.0))
        differentiate(s, 1)                       # classical, fine
        with pytest.raises(UnsupportedOrderError):
            differentiate(s, 2)                   # needs the piecewise flag
        d2 = differentiate(s, 2, piecewise=True)
        assert d2.order == 1
        with pytest.raises(UnsupportedOrderError):
            differentiate(s, 3, piecewise=True)

    def test_spline_piecewise_right_continuous(self):
        s = PeriodicSpline(2, np.array([1.0, -1.0, 1.0, -1.0]))
        d = differentiate(s, 1, piecewise=True)
        knot = 0.25
        right = evaluate(d, np.array([knot]))[0]
        just_right = evaluate(d, np.array([knot + 1e-9]))[0]
        assert right == pytest.approx(just_right)

    def test_muntz_derivative_shifts_exponents(self):
        m = ExpSum(np.array([0.5, 2.0]), np.array([1.0, 1.0]), 0.5, 2.0,
                   muntz=True)
        d = differentiate(m)
        assert np.allclose(d.lambdas, [-0.5, 1.0])
        x = np.array([0.8, 1.3])
        expect = 0.5 * x ** (-0.5) + 2 * x
        assert np.abs(evaluate(d, x) - expect).max() < 1e-12


class TestRandomModel:
    def test_deterministic(self):
        a = random_model("trig", 4, 7)
        b = random_model("trig", 4, 7)
        assert np.array_equal(a.coeffs, b.coeffs)

    def test_real_valued_flag(self, rng):
        t = random_model("trig", 4, 7, real_valued=True)
        x = rng.uniform(0, TWO_PI, 100)
        assert np.abs(evaluate(t, x).imag).max() <= 1e-12

    def test_spline_shape(self):
        s = random_model("spline", 8, 1, r=3)
        assert s.order == 3 and len(s.coeffs) == 8

    def test_distinct_seeds_differ(self):
        assert not np.array_equal(random_model("trig", 4, 1).coeffs,
                                  random_model("trig", 4, 2).coeffs)


class TestGammaLambda:
    def test_examples(self):
        assert gamma_lambda([0, 1, 2]) == 7.0
        assert gamma_lambda([0.0]) == 0.0
        assert gamma_lambda([1, 4, 9, 16]) == 39.0

    def test_validation(self):
        with pytest.raises(ValueError):
            gamma_lambda([1.0, 1.0])

    @given(st.lists(st.floats(-50, 50), min_size=1, max_size=8, unique=True))
    @settings(max_examples=50, deadline=None)
    def test_matches_direct_formula(self, lams):
        lams = sorted(lams)
        n = len(lams) - 1
        assert gamma_lambda(lams) == pytest.approx(n * n + sum(lams))


class TestValidation:
    def test_trig_even_length_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly(np.zeros(4, dtype=complex))

    def test_expsum_requires_increasing(self):
        with pytest.raises(ValueError):
            ExpSum(np.array([1.0, 0.5]), np.array([1, 1]), 0, 1)

    def test_muntz_requires_positive_domain(self):
        with pytest.raises(DomainError):
            ExpSum(np.array([0.5]), np.array([1.0]), 0.0, 1.0, muntz=True)

    def test_real_flag_detection(self):
        t = random_model("trig", 3, 11, real_valued=True)
        assert t.is_real_valued()
        assert not random_model("trig", 3, 11).is_real_valued()
