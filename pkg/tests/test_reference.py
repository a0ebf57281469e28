"""
Unit tests for the analytic, COS and error-norm baselines.
"""
import unittest
import numpy as np
import sys
import os

# Add project root to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.core.exceptions import DegreeError, ReferenceUnavailableError
from src.core.models import Contract, ContractKind, GridKind
from src.core.processes import BSMModel, HestonModel
from src.core.reference import bsm_analytic, cos_price, cos_prices, error_report
from src.core.series import cfs_coefficients, cfs_partial_sum, truncation_interval


class TestBsmAnalytic(unittest.TestCase):
    """Closed-form Black-Scholes"""

    def test_long_maturity_values(self):
        self.assertAlmostEqual(float(bsm_analytic(100, 120, 0.1, 0.0, 0.25, 50, "call").price),
                               99.2025928525532, places=10)
        self.assertAlmostEqual(float(bsm_analytic(100, 120, 0.1, 0.0, 0.25, 100, "call").price),
                               99.9945609694213, places=10)

    def test_short_maturity_out_of_the_money(self):
        self.assertAlmostEqual(float(bsm_analytic(95, 100, 0.06, 0.0, 0.2, 1e-6, "call").price), 0.0, places=12)

    def test_parity(self):
        K = np.array([80.0, 100.0, 120.0])
        call = bsm_analytic(100.0, K, 0.05, 0.02, 0.3, 2.0, "call").price
        put = bsm_analytic(100.0, K, 0.05, 0.02, 0.3, 2.0, "put").price
        forward = 100.0 * np.exp(-0.04) - K * np.exp(-0.1)
        np.testing.assert_allclose(call - put, forward, atol=1e-12)

    def test_digital_decomposition(self):
        args = (100.0, 110.0, 0.05, 0.01, 0.25, 1.5)
        cash_call = bsm_analytic(*args, "cash-or-nothing-call").price
        cash_put = bsm_analytic(*args, "cash-or-nothing-put").price
        asset_call = bsm_analytic(*args, "asset-or-nothing-call").price
        call = bsm_analytic(*args, "call").price
        self.assertAlmostEqual(float(cash_call + cash_put), np.exp(-0.05 * 1.5), places=13)
        self.assertAlmostEqual(float(asset_call - 110.0 * cash_call), float(call), places=10)

    def test_greeks_match_finite_differences(self):
        for kind in ("call", "put", "covered-call", "cash-or-nothing-put", "asset-or-nothing-call"):
            with self.subTest(kind=kind):
                quote = bsm_analytic(100.0, 95.0, 0.04, 0.01, 0.2, 0.75, kind)

                def value(S):
                    return float(bsm_analytic(S, 95.0, 0.04, 0.01, 0.2, 0.75, kind).price)

                h = 1e-3
                delta = (value(100.0 + h) - value(100.0 - h)) / (2 * h)
                self.assertAlmostEqual(float(quote.delta), delta, delta=1e-8)
                h = 1e-2
                gamma = (value(100.0 + h) - 2 * value(100.0) + value(100.0 - h)) / h ** 2
                self.assertAlmostEqual(float(quote.gamma), gamma, delta=1e-7)

    def test_unsupported_kind(self):
        with self.assertRaises(ReferenceUnavailableError):
            bsm_analytic(100.0, 100.0, 0.0, 0.0, 0.2, 1.0, "symmetric-put")


class TestCos(unittest.TestCase):
    """Fourier-cosine baseline"""

    def setUp(self):
        self.model = BSMModel(sigma=0.15, r=0.03)
        self.interval = truncation_interval(self.model, 1.0, log_moneyness_bound=np.log(1.2))

    def test_cash_or_nothing_puts(self):
        strikes = np.linspace(80.0, 120.0, 250)
        contract = Contract(ContractKind.CASH_OR_NOTHING_PUT, 100.0, 1.0)
        values = cos_prices(self.model, contract, 100.0, self.interval, 64, grid=strikes)
        expected = bsm_analytic(100.0, strikes, 0.03, 0.0, 0.15, 1.0, "cash-or-nothing-put").price
        self.assertLess(np.max(np.abs(values - expected)), 1e-11)

    def test_call_with_and_without_parity(self):
        contract = Contract(ContractKind.CALL, 110.0, 1.0)
        expected = float(bsm_analytic(100.0, 110.0, 0.03, 0.0, 0.15, 1.0, "call").price)
        for parity in (True, False):
            with self.subTest(parity=parity):
                value = cos_prices(self.model, contract, 100.0, self.interval, 256, use_parity=parity)[0]
                self.assertAlmostEqual(value, expected, delta=1e-8)

    def test_spot_grid(self):
        contract = Contract(ContractKind.PUT, 100.0, 1.0)
        spots = np.array([90.0, 100.0, 110.0])
        values = cos_prices(self.model, contract, 100.0, self.interval, 128, grid=spots, grid_kind=GridKind.SPOT)
        expected = bsm_analytic(spots, 100.0, 0.03, 0.0, 0.15, 1.0, "put").price
        np.testing.assert_allclose(values, expected, atol=1e-9)

    def test_agrees_with_fourier_series(self):
        contract = Contract(ContractKind.PUT, 100.0, 1.0)
        expected = float(bsm_analytic(100.0, 100.0, 0.03, 0.0, 0.15, 1.0, "put").price)
        cos_error = abs(cos_price(self.model, contract, 100.0, self.interval, 32) - expected)
        coeffs = cfs_coefficients(self.model, contract.with_strike(1.0), self.interval, 32)
        cfs_value = np.exp(-0.03) * 100.0 * float(cfs_partial_sum(coeffs, np.array([0.0]))[0])
        cfs_error = abs(cfs_value - expected)
        self.assertLess(min(cos_error, cfs_error), 1e-6)

    def test_heston_runs(self):
        model = HestonModel(y0=0.0175, ybar=0.0398, lam=1.5768, eta=0.5751, rho=-0.5711)
        interval = truncation_interval(model, 1.0)
        value = cos_price(model, Contract(ContractKind.CALL, 100.0, 1.0), 100.0, interval, 2 ** 14)
        self.assertAlmostEqual(value, 5.7851554534076321, delta=1e-6)

    def test_too_few_terms(self):
        with self.assertRaises(DegreeError):
            cos_price(self.model, Contract(ContractKind.PUT, 100.0, 1.0), 100.0, self.interval, 4)

    def test_unsupported_contract(self):
        with self.assertRaises(ReferenceUnavailableError):
            cos_price(self.model, Contract(ContractKind.SYMMETRIC_CALL, 100.0, 1.0, n=2), 100.0, self.interval, 64)


class TestErrorReport(unittest.TestCase):
    """Error norms"""

    def test_identical(self):
        report = error_report([1.0, 2.0], [1.0, 2.0], [90.0, 100.0])
        self.assertEqual(report.r_inf, 0.0)
        self.assertEqual(report.r_2, 0.0)

    def test_pythagorean(self):
        report = error_report([3.0, 4.0], [0.0, 0.0], [1.0, 2.0], elapsed=0.5)
        self.assertAlmostEqual(report.r_inf, 4.0)
        self.assertAlmostEqual(report.r_2, 5.0)
        self.assertEqual(report.per_point[1], (2.0, 4.0, 0.0, 4.0))
        self.assertEqual(report.wall_time_seconds, 0.5)

    def test_single_point(self):
        report = error_report([1.5], [1.0], [100.0])
        self.assertEqual(report.r_inf, report.r_2)

    def test_length_mismatch(self):
        with self.assertRaises(ValueError):
            error_report([1.0], [1.0, 2.0], [1.0])
        with self.assertRaises(ValueError):
            error_report([], [], [])


if __name__ == '__main__':
    unittest.main()
