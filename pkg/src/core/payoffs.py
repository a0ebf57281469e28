"""
Payoff functions and their closed-form Fourier transforms.

For a contract with strike K the payoff is written in y = log(S_T / K) and
transformed over the truncation interval [c, d]:

    G_k = integral of g(y) * exp(i * omega * k * y) dy,    omega = 2*pi / (d - c)

Every transform factors as K**e times a strike-free part, with e the
contract's strike power (1 for vanilla rows, n for power rows, 0 for cash).
"""
import logging
from abc import ABC, abstractmethod
from typing import Dict, Tuple

import numpy as np
from scipy.special import comb

from .exceptions import IntervalError
from .models import Contract, ContractKind, TruncationInterval

logger = logging.getLogger(__name__)


def _expint(a, x: float):
    """(exp(a*x) - 1) / a for nonzero complex a"""
    a = np.asarray(a, dtype=complex)
    return (np.exp(a * x) - 1.0) / a


class PayoffTransform(ABC):
    """Base class for one contract family: payoff and its transform"""

    kind: ContractKind

    @abstractmethod
    def value(self, S: np.ndarray, K: float, n: int) -> np.ndarray:
        """Payoff at terminal price S"""
        pass

    @abstractmethod
    def support(self, c: float, d: float) -> Tuple[float, float]:
        """Part of [c, d] where g(y) can be nonzero"""
        pass

    @abstractmethod
    def _mean(self, c: float, d: float, n: int) -> float:
        """Strike-free G_0"""
        pass

    @abstractmethod
    def _harmonic(self, w: np.ndarray, c: float, d: float, n: int) -> np.ndarray:
        """Strike-free G_k for w = i*omega*k, k >= 1"""
        pass

    def series(self, contract: Contract, U: int, interval: TruncationInterval) -> np.ndarray:
        """G_0..G_U as one complex array"""
        c, d, n = interval.c, interval.d, contract.n
        out = np.empty(U + 1, dtype=complex)
        out[0] = self._mean(c, d, n)
        if U > 0:
            w = 1j * interval.omega * np.arange(1, U + 1)
            out[1:] = self._harmonic(w, c, d, n)
        return contract.K ** contract.strike_power * out


class CallPayoff(PayoffTransform):
    kind = ContractKind.CALL

    def value(self, S, K, n):
        return np.maximum(S - K, 0.0)

    def support(self, c, d):
        return 0.0, d

    def _mean(self, c, d, n):
        return np.expm1(d) - d

    def _harmonic(self, w, c, d, n):
        return _expint(w + 1.0, d) - _expint(w, d)


class PutPayoff(PayoffTransform):
    kind = ContractKind.PUT

    def value(self, S, K, n):
        return np.maximum(K - S, 0.0)

    def support(self, c, d):
        return c, 0.0

    def _mean(self, c, d, n):
        return np.expm1(c) - c

    def _harmonic(self, w, c, d, n):
        return _expint(w + 1.0, c) - _expint(w, c)


class CoveredCallPayoff(PayoffTransform):
    """min(S_T, K): K * e^y below the strike, K above it"""
    kind = ContractKind.COVERED_CALL

    def value(self, S, K, n):
        return np.minimum(S, K)

    def support(self, c, d):
        return c, d

    def _mean(self, c, d, n):
        return d - np.expm1(c)

    def _harmonic(self, w, c, d, n):
        return _expint(w, d) - _expint(w + 1.0, c)


class CashOrNothingCallPayoff(PayoffTransform):
    kind = ContractKind.CASH_OR_NOTHING_CALL

    def value(self, S, K, n):
        return np.where(S >= K, 1.0, 0.0)

    def support(self, c, d):
        return 0.0, d

    def _mean(self, c, d, n):
        return d

    def _harmonic(self, w, c, d, n):
        return _expint(w, d)


class CashOrNothingPutPayoff(PayoffTransform):
    kind = ContractKind.CASH_OR_NOTHING_PUT

    def value(self, S, K, n):
        return np.where(S < K, 1.0, 0.0)

    def support(self, c, d):
        return c, 0.0

    def _mean(self, c, d, n):
        return -c

    def _harmonic(self, w, c, d, n):
        return -_expint(w, c)


class AssetOrNothingCallPayoff(PayoffTransform):
    kind = ContractKind.ASSET_OR_NOTHING_CALL

    def value(self, S, K, n):
        return np.where(S >= K, S, 0.0)

    def support(self, c, d):
        return 0.0, d

    def _mean(self, c, d, n):
        return np.expm1(d)

    def _harmonic(self, w, c, d, n):
        return _expint(w + 1.0, d)


class AssetOrNothingPutPayoff(PayoffTransform):
    kind = ContractKind.ASSET_OR_NOTHING_PUT

    def value(self, S, K, n):
        return np.where(S < K, S, 0.0)

    def support(self, c, d):
        return c, 0.0

    def _mean(self, c, d, n):
        return -np.expm1(c)

    def _harmonic(self, w, c, d, n):
        return -_expint(w + 1.0, c)


class AsymmetricCallPayoff(PayoffTransform):
    """max(S^n - K^n, 0)"""
    kind = ContractKind.ASYMMETRIC_CALL

    def value(self, S, K, n):
        return np.maximum(np.power(S, n) - K ** n, 0.0)

    def support(self, c, d):
        return 0.0, d

    def _mean(self, c, d, n):
        return np.expm1(n * d) / n - d

    def _harmonic(self, w, c, d, n):
        return _expint(w + n, d) - _expint(w, d)


class AsymmetricPutPayoff(PayoffTransform):
    """max(K^n - S^n, 0)"""
    kind = ContractKind.ASYMMETRIC_PUT

    def value(self, S, K, n):
        return np.maximum(K ** n - np.power(S, n), 0.0)

    def support(self, c, d):
        return c, 0.0

    def _mean(self, c, d, n):
        return np.expm1(n * c) / n - c

    def _harmonic(self, w, c, d, n):
        return _expint(w + n, c) - _expint(w, c)


class SymmetricCallPayoff(PayoffTransform):
    """max(S - K, 0)^n, expanded binomially in powers of e^y"""
    kind = ContractKind.SYMMETRIC_CALL

    def value(self, S, K, n):
        return np.power(np.maximum(S - K, 0.0), n)

    def support(self, c, d):
        return 0.0, d

    def _mean(self, c, d, n):
        total = (-1.0) ** n * d
        for j in range(1, n + 1):
            total += comb(n, j, exact=True) * (-1.0) ** (n - j) * np.expm1(j * d) / j
        return total

    def _harmonic(self, w, c, d, n):
        total = np.zeros_like(w)
        for j in range(n + 1):
            total += comb(n, j, exact=True) * (-1.0) ** (n - j) * _expint(w + j, d)
        return total


class SymmetricPutPayoff(PayoffTransform):
    """max(K - S, 0)^n, expanded binomially in powers of e^y"""
    kind = ContractKind.SYMMETRIC_PUT

    def value(self, S, K, n):
        return np.power(np.maximum(K - S, 0.0), n)

    def support(self, c, d):
        return c, 0.0

    def _mean(self, c, d, n):
        total = -c
        for j in range(1, n + 1):
            total -= comb(n, j, exact=True) * (-1.0) ** j * np.expm1(j * c) / j
        return total

    def _harmonic(self, w, c, d, n):
        total = np.zeros_like(w)
        for j in range(n + 1):
            total -= comb(n, j, exact=True) * (-1.0) ** j * _expint(w + j, c)
        return total


PAYOFF_REGISTRY: Dict[ContractKind, PayoffTransform] = {
    payoff.kind: payoff for payoff in (
        CallPayoff(),
        PutPayoff(),
        CoveredCallPayoff(),
        CashOrNothingCallPayoff(),
        CashOrNothingPutPayoff(),
        AssetOrNothingCallPayoff(),
        AssetOrNothingPutPayoff(),
        AsymmetricCallPayoff(),
        AsymmetricPutPayoff(),
        SymmetricCallPayoff(),
        SymmetricPutPayoff(),
    )
}


def get_payoff(kind: ContractKind) -> PayoffTransform:
    return PAYOFF_REGISTRY[ContractKind(kind)]


def payoff_value(contract: Contract, terminal_price) -> np.ndarray:
    """Pointwise payoff of the contract"""
    S = np.asarray(terminal_price, dtype=float)
    return get_payoff(contract.kind).value(S, contract.K, contract.n)


def payoff_transform(contract: Contract, k: int, c: float, d: float) -> complex:
    """Closed-form G_k of the contract on [c, d]; k = 0 gives the real G_0"""
    if not c < 0 < d:
        raise IntervalError(f"transform needs c < 0 < d, got c={c}, d={d}")
    if k < 0:
        raise IndexError(f"harmonic index must be nonnegative, got {k}")
    payoff = get_payoff(contract.kind)
    scale = contract.K ** contract.strike_power
    if k == 0:
        return scale * float(payoff._mean(c, d, contract.n))
    w = 1j * 2.0 * np.pi / (d - c) * k
    return complex(scale * payoff._harmonic(np.asarray([w]), c, d, contract.n)[0])


def transform_series(contract: Contract, U: int, interval: TruncationInterval) -> np.ndarray:
    """G_0..G_U of the contract on the interval"""
    return get_payoff(contract.kind).series(contract, U, interval)
