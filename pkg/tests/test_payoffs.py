"""
Unit tests for payoff functions and their Fourier transforms.
"""
import unittest
import numpy as np
import sys
import os

# Add project root to path for imports
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from scipy.integrate import quad

from src.core.exceptions import IntervalError
from src.core.models import Contract, ContractKind, TruncationInterval
from src.core.payoffs import PAYOFF_REGISTRY, get_payoff, payoff_transform, payoff_value, transform_series


def quad_transform(contract, k, c, d):
    """G_k by adaptive quadrature over the payoff support"""
    payoff = get_payoff(contract.kind)
    lo, hi = payoff.support(c, d)
    omega = 2 * np.pi / (d - c)

    def g(y):
        return float(payoff.value(np.asarray(contract.K * np.exp(y)), contract.K, contract.n))

    re, _ = quad(lambda y: g(y) * np.cos(omega * k * y), lo, hi, limit=200, epsabs=1e-13, epsrel=1e-12)
    im, _ = quad(lambda y: g(y) * np.sin(omega * k * y), lo, hi, limit=200, epsabs=1e-13, epsrel=1e-12)
    return complex(re, im)


class TestPayoffTransforms(unittest.TestCase):
    """Closed forms against quadrature"""

    c, d = -1.3, 1.1

    def test_registry_complete(self):
        self.assertEqual(set(PAYOFF_REGISTRY), set(ContractKind))

    def test_transforms_match_quadrature(self):
        for kind in ContractKind:
            n = 3 if kind.is_power else 1
            for K in (1.0, 2.0):
                contract = Contract(kind, K, 1.0, n=n)
                for k in (0, 1, 4):
                    with self.subTest(kind=kind.value, K=K, k=k):
                        expected = quad_transform(contract, k, self.c, self.d)
                        actual = payoff_transform(contract, k, self.c, self.d)
                        scale = max(1.0, abs(expected))
                        self.assertAlmostEqual(actual.real, expected.real, delta=1e-9 * scale)
                        self.assertAlmostEqual(actual.imag, expected.imag, delta=1e-9 * scale)

    def test_series_matches_pointwise(self):
        interval = TruncationInterval(c=self.c, d=self.d)
        contract = Contract(ContractKind.SYMMETRIC_PUT, 1.5, 1.0, n=2)
        series = transform_series(contract, 6, interval)
        for k in range(7):
            self.assertAlmostEqual(series[k], payoff_transform(contract, k, self.c, self.d), places=12)

    def test_mean_is_real(self):
        interval = TruncationInterval(c=self.c, d=self.d)
        for kind in ContractKind:
            series = transform_series(Contract(kind, 1.0, 1.0), 4, interval)
            self.assertEqual(complex(series[0]).imag, 0.0)

    def test_cash_transform_is_strike_free(self):
        small = payoff_transform(Contract(ContractKind.CASH_OR_NOTHING_CALL, 1.0, 1.0), 2, self.c, self.d)
        large = payoff_transform(Contract(ContractKind.CASH_OR_NOTHING_CALL, 50.0, 1.0), 2, self.c, self.d)
        self.assertAlmostEqual(small, large, places=14)

    def test_bad_arguments(self):
        contract = Contract(ContractKind.CALL, 1.0, 1.0)
        with self.assertRaises(IntervalError):
            payoff_transform(contract, 1, 0.2, 1.0)
        with self.assertRaises(IndexError):
            payoff_transform(contract, -1, self.c, self.d)


class TestPayoffValues(unittest.TestCase):
    """Pointwise payoffs"""

    def test_vanilla(self):
        S = np.array([80.0, 100.0, 120.0])
        np.testing.assert_allclose(payoff_value(Contract(ContractKind.CALL, 100.0, 1.0), S), [0, 0, 20])
        np.testing.assert_allclose(payoff_value(Contract(ContractKind.PUT, 100.0, 1.0), S), [20, 0, 0])
        np.testing.assert_allclose(payoff_value(Contract(ContractKind.COVERED_CALL, 100.0, 1.0), S), [80, 100, 100])

    def test_digitals(self):
        S = np.array([80.0, 120.0])
        np.testing.assert_allclose(payoff_value(Contract(ContractKind.CASH_OR_NOTHING_PUT, 100.0, 1.0), S), [1, 0])
        np.testing.assert_allclose(payoff_value(Contract(ContractKind.ASSET_OR_NOTHING_CALL, 100.0, 1.0), S), [0, 120])

    def test_power(self):
        S = np.array([1.0, 3.0])
        np.testing.assert_allclose(
            payoff_value(Contract(ContractKind.ASYMMETRIC_CALL, 2.0, 1.0, n=2), S), [0, 5]
        )
        np.testing.assert_allclose(
            payoff_value(Contract(ContractKind.SYMMETRIC_PUT, 2.0, 1.0, n=3), S), [1, 0]
        )


if __name__ == '__main__':
    unittest.main()
