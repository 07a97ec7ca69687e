import math

import numpy as np
import pytest
from scipy.special import gamma as sp_gamma

from mzlab import grids


class TestTrapezoid:
    def test_total_mass(self):
        g = grids.trapezoid_grid(4096)
        assert g.weights.sum() == pytest.approx(2 * np.pi, rel=1e-13)

    @pytest.mark.parametrize("k", [1, 7, 100, 4095])
    def test_exponential_exactness_below_nyquist(self, k):
        g = grids.trapezoid_grid(4096)
        val = g.integrate(np.exp(1j * k * g.points))
        assert abs(val) <= 1e-12 * g.weights.sum()

    def test_dc_mode(self):
        g = grids.trapezoid_grid(64)
        assert g.integrate(np.ones(64)) == pytest.approx(2 * np.pi)


class TestIntervalPanels:
    def test_monomial_exactness(self):
        g = grids.legendre_panel_grid(256, -1.0, 1.0)
        assert g.integrate(g.points ** 4) == pytest.approx(0.4, abs=1e-13)
        assert g.integrate(np.ones(g.size)) == pytest.approx(2.0, rel=1e-14)

    def test_high_degree_polynomial(self):
        g = grids.interval_grid_for_degree(64, -1.0, 1.0)
        # degree-128 integrand, closed-form integral of x^128
        assert g.integrate(g.points ** 128) == pytest.approx(
            2.0 / 129.0, rel=1e-12)


class TestJacobiGrid:
    @pytest.mark.parametrize("a,b", [(-0.5, -0.5), (0.0, 0.0), (0.5, 0.5),
                                     (-0.5, 1.5), (1.3, 0.2)])
    def test_total_mass_beta_closed_form(self, a, b):
        g = grids.jacobi_weighted_grid(48, a, b)
        exact = 2.0 ** (a + b + 1) * sp_gamma(a + 1) * sp_gamma(b + 1) / sp_gamma(a + b + 2)
        assert g.weights.sum() == pytest.approx(exact, rel=1e-11)

    def test_polynomial_moment(self):
        # int x^2 (1-x^2)^{-1/2} dx = pi/2
        g = grids.jacobi_weighted_grid(32, -0.5, -0.5)
        assert g.integrate(g.points ** 2) == pytest.approx(np.pi / 2, rel=1e-12)

    def test_rejects_bad_exponents(self):
        with pytest.raises(grids.GridError):
            grids.jacobi_weighted_grid(16, -1.0, 0.0)


class TestCellMass:
    def test_arcsine_cell(self):
        # integral of (1-x^2)^{-1/2} over (-sqrt3/2, sqrt3/2) is 2 pi / 3
        v = grids.weight_cell_mass(("jacobi", -0.5, -0.5),
                                   -math.sqrt(3) / 2, math.sqrt(3) / 2)
        assert v == pytest.approx(2 * np.pi / 3, rel=1e-12)

    def test_lebesgue(self):
        assert grids.weight_cell_mass(("const",), 0.25, 1.5) == pytest.approx(1.25)

    def test_sinabs_cell_vs_closed_form(self):
        # integral of |sin| over (0, pi) is 2
        v = grids.weight_cell_mass(("sinabs", 1.0), 0.0, np.pi)
        assert v == pytest.approx(2.0, rel=1e-12)


class TestSampledFunction:
    def test_shape_checked(self):
        g = grids.trapezoid_grid(8)
        with pytest.raises(grids.GridError):
            grids.SampledFunction(np.ones(7), g)

    def test_finite_checked(self):
        g = grids.trapezoid_grid(8)
        bad = np.ones(8)
        bad[3] = np.inf
        with pytest.raises(grids.GridError):
            grids.SampledFunction(bad, g)

    def test_tensor_integrate(self):
        tg = grids.tensor_trapezoid_grid(32)
        vals = np.ones(tg.shape)
        assert tg.integrate(vals) == pytest.approx((2 * np.pi) ** 2)
