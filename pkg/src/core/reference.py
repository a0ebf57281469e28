"""
Independent baselines: analytic Black-Scholes, the Fourier-cosine (COS)
expansion, and error norms against a reference curve.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtr

from config import settings
from .exceptions import DegreeError, ParameterDomainError, ReferenceUnavailableError
from .models import Contract, ContractKind, ErrorReport, GridKind, TruncationInterval
from .processes import StochasticModel

logger = logging.getLogger(__name__)


@dataclass
class AnalyticQuote:
    """Closed-form price and sensitivities"""
    price: float
    delta: float
    gamma: float


def _npdf(x):
    return np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi)


def bsm_analytic(S0, K, r: float, q: float, sigma: float, T: float, kind) -> AnalyticQuote:
    """Black-Scholes price, delta and gamma with continuous dividend yield"""
    kind = ContractKind(kind)
    if not (np.all(np.asarray(S0) > 0) and np.all(np.asarray(K) > 0) and sigma > 0 and T > 0):
        raise ParameterDomainError("S0, K, sigma and T must be positive")
    S0 = np.asarray(S0, dtype=float)
    K = np.asarray(K, dtype=float)
    vol = sigma * np.sqrt(T)
    d1 = (np.log(S0 / K) + (r - q + 0.5 * sigma ** 2) * T) / vol
    d2 = d1 - vol
    disc, carry = np.exp(-r * T), np.exp(-q * T)

    call_price = S0 * carry * ndtr(d1) - K * disc * ndtr(d2)
    call_delta = carry * ndtr(d1)
    call_gamma = carry * _npdf(d1) / (S0 * vol)

    if kind == ContractKind.CALL:
        price, delta, gamma = call_price, call_delta, call_gamma
    elif kind == ContractKind.PUT:
        price = K * disc * ndtr(-d2) - S0 * carry * ndtr(-d1)
        delta, gamma = call_delta - carry, call_gamma
    elif kind == ContractKind.COVERED_CALL:
        price, delta, gamma = S0 * carry - call_price, carry - call_delta, -call_gamma
    elif kind in (ContractKind.CASH_OR_NOTHING_CALL, ContractKind.CASH_OR_NOTHING_PUT):
        sign = 1.0 if kind == ContractKind.CASH_OR_NOTHING_CALL else -1.0
        price = disc * ndtr(sign * d2)
        delta = sign * disc * _npdf(d2) / (S0 * vol)
        gamma = -sign * disc * _npdf(d2) * d1 / (S0 ** 2 * vol ** 2)
    elif kind in (ContractKind.ASSET_OR_NOTHING_CALL, ContractKind.ASSET_OR_NOTHING_PUT):
        sign = 1.0 if kind == ContractKind.ASSET_OR_NOTHING_CALL else -1.0
        price = S0 * carry * ndtr(sign * d1)
        call_like_delta = carry * (ndtr(d1) + _npdf(d1) / vol)
        call_like_gamma = -carry * _npdf(d1) * d2 / (S0 * vol ** 2)
        delta = call_like_delta if sign > 0 else carry - call_like_delta
        gamma = sign * call_like_gamma
    else:
        raise ReferenceUnavailableError(f"no closed form for {kind.value}")
    return AnalyticQuote(price=price, delta=delta, gamma=gamma)


def _chi(k_pi: np.ndarray, a: float, lo: float, hi: float) -> np.ndarray:
    """Cosine coefficients of e^y on [lo, hi] relative to the interval start a"""
    arg_hi, arg_lo = k_pi * (hi - a), k_pi * (lo - a)
    return (
        np.cos(arg_hi) * np.exp(hi) - np.cos(arg_lo) * np.exp(lo)
        + k_pi * (np.sin(arg_hi) * np.exp(hi) - np.sin(arg_lo) * np.exp(lo))
    ) / (1.0 + k_pi ** 2)


def _psi(k_pi: np.ndarray, a: float, lo: float, hi: float) -> np.ndarray:
    """Cosine coefficients of 1 on [lo, hi] relative to the interval start a"""
    out = np.empty_like(k_pi)
    out[0] = hi - lo
    nz = k_pi[1:]
    out[1:] = (np.sin(nz * (hi - a)) - np.sin(nz * (lo - a))) / nz
    return out


def _cos_payoff_coefficients(kind: ContractKind, k_pi: np.ndarray, a: float, b: float) -> np.ndarray:
    """Cosine coefficients of the payoff per unit strike"""
    scale = 2.0 / (b - a)
    if kind == ContractKind.PUT:
        return scale * (_psi(k_pi, a, a, 0.0) - _chi(k_pi, a, a, 0.0))
    if kind == ContractKind.CALL:
        return scale * (_chi(k_pi, a, 0.0, b) - _psi(k_pi, a, 0.0, b))
    if kind == ContractKind.COVERED_CALL:
        return scale * (_chi(k_pi, a, a, 0.0) + _psi(k_pi, a, 0.0, b))
    if kind == ContractKind.CASH_OR_NOTHING_CALL:
        return scale * _psi(k_pi, a, 0.0, b)
    if kind == ContractKind.CASH_OR_NOTHING_PUT:
        return scale * _psi(k_pi, a, a, 0.0)
    if kind == ContractKind.ASSET_OR_NOTHING_CALL:
        return scale * _chi(k_pi, a, 0.0, b)
    if kind == ContractKind.ASSET_OR_NOTHING_PUT:
        return scale * _chi(k_pi, a, a, 0.0)
    raise ReferenceUnavailableError(f"COS baseline does not cover {kind.value}")


def cos_prices(model: StochasticModel,
               contract: Contract,
               S0: float,
               interval: TruncationInterval,
               N: int,
               grid: Sequence[float] = None,
               grid_kind: GridKind = GridKind.STRIKE,
               use_parity: bool = True) -> np.ndarray:
    """COS prices along a strike or spot grid (default: the contract strike)"""
    if N < settings.MIN_COS_TERMS:
        raise DegreeError(f"COS needs N >= {settings.MIN_COS_TERMS}, got {N}")
    grid = np.asarray([contract.K] if grid is None else grid, dtype=float).reshape(-1)
    if GridKind(grid_kind) == GridKind.STRIKE:
        spots, strikes = np.full_like(grid, S0), grid
    else:
        spots, strikes = grid, np.full_like(grid, contract.K)

    kind = contract.kind
    parity = use_parity and kind == ContractKind.CALL
    if parity:
        kind = ContractKind.PUT

    a, b = interval.c, interval.d
    k_pi = np.arange(N) * np.pi / (b - a)
    payoff = _cos_payoff_coefficients(kind, k_pi, a, b)
    payoff[0] *= 0.5

    x = np.log(spots / strikes)
    phase = np.exp(1j * np.outer(x - a, k_pi))
    cf = model.characteristic_fn(k_pi, contract.T)
    T = contract.T
    disc = np.exp(-model.r * T)
    scale = strikes ** contract.strike_power
    prices = disc * scale * ((phase * cf).real @ payoff)
    if parity:
        prices = prices + spots * np.exp(-model.q * T) - strikes * disc
    return prices


def cos_price(model: StochasticModel, contract: Contract, S0: float, interval: TruncationInterval, N: int) -> float:
    return float(cos_prices(model, contract, S0, interval, N)[0])


def error_report(approx: Sequence[float],
                 reference: Sequence[float],
                 grid: Sequence[float],
                 elapsed: float = 0.0) -> ErrorReport:
    """Maximum and Euclidean error norms with per-point detail"""
    approx = np.asarray(approx, dtype=float).reshape(-1)
    reference = np.asarray(reference, dtype=float).reshape(-1)
    grid = np.asarray(grid, dtype=float).reshape(-1)
    if not (len(approx) == len(reference) == len(grid)) or len(grid) == 0:
        raise ValueError(
            f"length mismatch: approx={len(approx)}, reference={len(reference)}, grid={len(grid)}"
        )
    errors = np.abs(approx - reference)
    per_point = [
        (float(g), float(a), float(ref), float(e))
        for g, a, ref, e in zip(grid, approx, reference, errors)
    ]
    return ErrorReport(
        r_inf=float(errors.max()),
        r_2=float(np.linalg.norm(errors)),
        per_point=per_point,
        wall_time_seconds=float(elapsed),
    )
