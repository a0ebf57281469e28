"""
Truncation intervals and complex Fourier series coefficients.

Prices are expanded as Re sum_k a_k z^k with z = exp(i * omega * y1),
y1 = log(K / S0), omega = 2*pi / (d - c), and

    a_0 = G_0 / (d - c),    a_k = 2 * phi(-omega * k) * G_k / (d - c)  (k >= 1).
"""
import logging
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from config import settings
from .exceptions import DegreeError, IntervalError, ParameterDomainError
from .models import Contract, SeriesCoefficients, TruncationInterval
from .payoffs import transform_series
from .processes import StochasticModel
from ..utils.numerics import PhaseUtils

logger = logging.getLogger(__name__)


def truncation_interval(model: StochasticModel,
                        T: float,
                        log_moneyness_bound: float = 0.0,
                        L: Optional[float] = None,
                        padding: float = settings.SMOOTH_PADDING) -> TruncationInterval:
    """Symmetric interval [-d, d] sized from the cumulants of the log-return"""
    if L is None:
        L = model.default_L
    if not settings.INTERVAL_L <= L <= settings.HESTON_INTERVAL_L:
        raise IntervalError(
            f"L must lie in [{settings.INTERVAL_L}, {settings.HESTON_INTERVAL_L}], got {L}"
        )
    if padding < 0:
        raise IntervalError(f"padding must be nonnegative, got {padding}")

    cum = model.cumulants(T)
    spread = model.interval_spread(T)
    d = abs(cum.c1 + L * spread + abs(log_moneyness_bound)) + padding
    if not np.isfinite(d):
        raise ParameterDomainError(f"non-finite cumulants for {model}: {cum}")

    logger.debug("Interval for %s, T=%s: d=%.6g (L=%s, padding=%s)", model.kind, T, d, L, padding)
    return TruncationInterval(c=-d, d=d, L=L, padding=padding, cumulants=cum)


def _fourier_weights(model: StochasticModel, T: float, interval: TruncationInterval, U: int) -> np.ndarray:
    """phi(-omega k) / (d - c), doubled for k >= 1"""
    weights = model.characteristic_fn(-PhaseUtils.harmonics(U, interval), T) / interval.width
    weights[1:] *= 2.0
    return weights


def cfs_coefficients(model: StochasticModel,
                     contract: Contract,
                     interval: TruncationInterval,
                     U: int) -> SeriesCoefficients:
    """Fourier coefficients of the undiscounted option value as a function of y1"""
    if U < settings.MIN_SERIES_TERMS:
        raise DegreeError(f"U must be at least {settings.MIN_SERIES_TERMS}, got {U}")
    taylor = _fourier_weights(model, contract.T, interval, U) * transform_series(contract, U, interval)
    taylor[0] = taylor[0].real
    return SeriesCoefficients(taylor=taylor, interval=interval)


def cfs_partial_sum(coeffs: SeriesCoefficients, y1) -> np.ndarray:
    """Plain truncated Fourier series, real part"""
    z = PhaseUtils.to_z(y1, coeffs.interval)
    return np.polynomial.polynomial.polyval(z, coeffs.taylor).real


def density_coefficients(model: StochasticModel, T: float, interval: TruncationInterval, U: int) -> SeriesCoefficients:
    """Fourier coefficients of the log-return density on the interval"""
    return SeriesCoefficients(taylor=_fourier_weights(model, T, interval, U), interval=interval)


def derivative_coefficients(model: StochasticModel, T: float, interval: TruncationInterval, U: int) -> SeriesCoefficients:
    """Fourier coefficients of the derivative of the log-return density"""
    base = density_coefficients(model, T, interval, U)
    return SeriesCoefficients(
        taylor=1j * PhaseUtils.harmonics(U, interval) * base.taylor,
        interval=interval,
    )


def density(model: StochasticModel, T: float, interval: TruncationInterval, U: int, grid) -> np.ndarray:
    return cfs_partial_sum(density_coefficients(model, T, interval, U), grid)


def density_mass(values, grid) -> float:
    """Trapezoid mass of sampled density values"""
    return float(trapezoid(np.asarray(values, dtype=float), np.asarray(grid, dtype=float)))
