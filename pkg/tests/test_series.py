"""
Unit tests for truncation intervals and Fourier series coefficients.
"""
import unittest
import numpy as np
import sys
import os

# Add project root to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from scipy.stats import norm

from src.core.exceptions import DegreeError, IntervalError
from src.core.models import Contract, ContractKind
from src.core.processes import BSMModel, HestonModel, VGModel
from src.core.reference import bsm_analytic
from src.core.series import (
    cfs_coefficients, cfs_partial_sum, density, density_coefficients, density_mass,
    derivative_coefficients, truncation_interval,
)
from src.utils.numerics import PhaseUtils

BSM = BSMModel(sigma=0.15, r=0.03)
VG = VGModel(sigma=0.12, theta=-0.14, nu=0.2, r=0.1)


class TestTruncationInterval(unittest.TestCase):
    """Interval construction from cumulants"""

    def test_bsm_interval(self):
        interval = truncation_interval(BSM, 1.0)
        expected = 0.03 - 0.5 * 0.15 ** 2 + 10 * 0.15
        self.assertAlmostEqual(interval.d, expected, places=12)
        self.assertAlmostEqual(interval.c, -expected, places=12)
        self.assertEqual(interval.L, 10)

    def test_moneyness_bound_and_padding(self):
        base = truncation_interval(BSM, 1.0)
        wider = truncation_interval(BSM, 1.0, log_moneyness_bound=-0.3, padding=0.5)
        self.assertAlmostEqual(wider.d - base.d, 0.8, places=12)
        self.assertEqual(wider.padding, 0.5)

    def test_vg_short_maturity_with_padding(self):
        interval = truncation_interval(VG, 0.1, padding=0.5)
        self.assertAlmostEqual(interval.d, 1.352, delta=1e-3)

    def test_heston_uses_wider_default(self):
        model = HestonModel(y0=0.0175, ybar=0.0398, lam=1.5768, eta=0.5751, rho=-0.5711)
        interval = truncation_interval(model, 1.0)
        cum = model.cumulants(1.0)
        self.assertEqual(interval.L, 12)
        self.assertAlmostEqual(interval.d, abs(cum.c1 + 12 * model.interval_spread(1.0)), places=12)
        self.assertAlmostEqual(interval.d, 11.2, delta=0.05)
        # several deviations wider than the plain second cumulant gives
        self.assertGreater(interval.d, 4 * 12 * np.sqrt(cum.c2))

    def test_heston_interval_grows_with_maturity(self):
        model = HestonModel(y0=0.0175, ybar=0.0398, lam=1.5768, eta=0.5751, rho=-0.5711)
        widths = [truncation_interval(model, T).d for T in (1.0, 10.0, 30.0, 45.0)]
        self.assertTrue(np.all(np.diff(widths) > 0))
        self.assertAlmostEqual(widths[1], 44.3, delta=0.5)

    def test_invalid_controls(self):
        with self.assertRaises(IntervalError):
            truncation_interval(BSM, 1.0, L=9)
        with self.assertRaises(IntervalError):
            truncation_interval(BSM, 1.0, padding=-0.1)


class TestSeriesCoefficients(unittest.TestCase):
    """Price and density series"""

    def setUp(self):
        self.interval = truncation_interval(BSM, 1.0, log_moneyness_bound=0.2)

    def test_mean_coefficient_is_real(self):
        coeffs = cfs_coefficients(BSM, Contract(ContractKind.PUT, 1.0, 1.0), self.interval, 16)
        self.assertEqual(coeffs.U, 16)
        self.assertEqual(coeffs.taylor[0].imag, 0.0)

    def test_too_few_terms(self):
        with self.assertRaises(DegreeError):
            cfs_coefficients(BSM, Contract(ContractKind.PUT, 1.0, 1.0), self.interval, 3)

    def test_partial_sum_prices_put(self):
        S0, strikes = 100.0, np.array([90.0, 100.0, 110.0])
        coeffs = cfs_coefficients(BSM, Contract(ContractKind.PUT, 1.0, 1.0), self.interval, 64)
        values = np.exp(-BSM.r) * strikes * cfs_partial_sum(coeffs, np.log(strikes / S0))
        expected = bsm_analytic(S0, strikes, BSM.r, 0.0, BSM.sigma, 1.0, "put").price
        np.testing.assert_allclose(values, expected, atol=1e-8)

    def test_density_matches_normal(self):
        grid = np.linspace(-0.6, 0.6, 41)
        values = density(BSM, 1.0, self.interval, 64, grid)
        cum = BSM.cumulants(1.0)
        expected = norm.pdf(grid, loc=cum.c1, scale=np.sqrt(cum.c2))
        np.testing.assert_allclose(values, expected, atol=1e-8)

    def test_density_mass(self):
        grid = np.linspace(self.interval.c, self.interval.d, 1024)
        values = density(BSM, 1.0, self.interval, 64, grid)
        self.assertAlmostEqual(density_mass(values, grid), 1.0, places=6)

    def test_derivative_coefficients(self):
        base = density_coefficients(BSM, 1.0, self.interval, 8).taylor
        deriv = derivative_coefficients(BSM, 1.0, self.interval, 8).taylor
        expected = 1j * PhaseUtils.harmonics(8, self.interval) * base
        np.testing.assert_allclose(deriv, expected)
        self.assertEqual(deriv[0], 0)


if __name__ == '__main__':
    unittest.main()
