"""
European option pricing by singular Fourier-Padé reconstruction.

The undiscounted value of a contract with strike K, viewed as a function of
y1 = log(K / S0), is a Fourier series in z = exp(i omega y1). Its coefficients
come from the characteristic function and the payoff transform; the series is
resummed by an SFP approximant with log terms at the density's jump points
(always including the interval endpoint z = -1).
"""
import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import settings
from .exceptions import IntervalError, SolverError, UnsupportedOperationError
from .jumps import detect_jumps
from .models import (
    Contract, ContractKind, GridKind, Greeks, JumpMode, JumpReport, PriceRequest,
    PriceResult, PricerConfig, PricingStatus, ReconstructionMethod, SeriesCoefficients,
    SfpDiagnostics, TruncationInterval,
)
from .processes import HestonModel
from .series import cfs_coefficients, cfs_partial_sum, density_coefficients, truncation_interval
from .payoffs import transform_series
from .sfp import allocate_degrees, evaluate_with_status, fourier_pade, solve_sfp
from ..utils.numerics import PhaseUtils

logger = logging.getLogger(__name__)

_ENDPOINT = -1.0 + 0.0j


@dataclass
class _SolvePlan:
    """Everything shared by the points of one curve"""
    interval: TruncationInterval
    jump_locations: List[float]
    eps: List[complex]
    contract: Contract
    parity: bool
    report: Optional[JumpReport] = None


@dataclass
class _Reconstruction:
    values: np.ndarray
    near_pole: np.ndarray
    diagnostics: Optional[SfpDiagnostics] = None


@dataclass
class _CurvePoints:
    S0: np.ndarray
    K: np.ndarray

    @property
    def y1(self) -> np.ndarray:
        return np.log(self.K / self.S0)


class SfpPricer:
    """Coordinator for interval construction, jump handling, solves and Greeks"""

    def __init__(self, config: Optional[PricerConfig] = None):
        self.config = config or PricerConfig()
        self.stats: Dict[str, float] = {'solves': 0, 'points': 0, 'total_time': 0.0}

    # ------------------------------------------------------------------ plan

    def _non_smooth_padding(self, T: float) -> float:
        if T < settings.SHORT_MATURITY_CUTOFF:
            return settings.SHORT_MATURITY_PADDING
        return settings.NON_SMOOTH_PADDING

    def _resolve_jumps(self, req: PriceRequest, interval: TruncationInterval) -> Tuple[List[float], Optional[JumpReport]]:
        if req.method != ReconstructionMethod.SFP or req.jumps == JumpMode.ENDPOINTS:
            return [], None
        if req.jumps == JumpMode.EXPLICIT:
            return list(req.explicit_jumps), None

        report = detect_jumps(
            req.model, req.contract.T, interval,
            U=self.config.detection_terms,
            spike_factor=self.config.spike_factor,
            grid_points=self.config.detection_grid_points,
        )
        if report.smooth:
            return [], report
        known = req.model.singular_point(req.contract.T)
        if known is not None:
            return [known], report
        return list(report.locations), report

    def _build_plan(self, req: PriceRequest, log_moneyness_bound: float) -> _SolvePlan:
        T = req.contract.T
        if req.interval is not None:
            interval = req.interval
            locations, report = self._resolve_jumps(req, interval)
        else:
            padding = req.padding if req.padding is not None else settings.SMOOTH_PADDING
            interval = truncation_interval(req.model, T, log_moneyness_bound, req.L, padding)
            locations, report = self._resolve_jumps(req, interval)
            if req.padding is None and locations:
                padding = self._non_smooth_padding(T)
                logger.info("Non-smooth density: widening interval with padding %s", padding)
                interval = truncation_interval(req.model, T, log_moneyness_bound, req.L, padding)
                locations, report = self._resolve_jumps(req, interval)

        eps = [_ENDPOINT]
        kept = []
        for zeta in locations:
            e = PhaseUtils.jump_point(zeta, interval)
            if all(abs(e - other) > 1e-8 for other in eps):
                eps.append(e)
                kept.append(zeta)

        parity = req.use_parity and req.contract.kind == ContractKind.CALL
        contract = req.contract.with_kind(ContractKind.PUT) if parity else req.contract
        return _SolvePlan(
            interval=interval,
            jump_locations=kept,
            eps=eps,
            contract=contract.with_strike(1.0),
            parity=parity,
            report=report,
        )

    # ---------------------------------------------------------------- solves

    def _reconstruct(self, req: PriceRequest, plan: _SolvePlan, taylor: np.ndarray, y1: np.ndarray) -> _Reconstruction:
        if not plan.interval.contains(y1):
            raise IntervalError(
                f"log-moneyness outside [{plan.interval.c:.4g}, {plan.interval.d:.4g}]; increase L"
            )
        self.stats['solves'] += 1
        if req.method == ReconstructionMethod.CFS:
            values = cfs_partial_sum(SeriesCoefficients(taylor, plan.interval), y1)
            return _Reconstruction(values=values, near_pole=np.zeros(values.shape, dtype=bool))

        if req.method == ReconstructionMethod.FP:
            N = int(np.floor(self.config.numerator_fraction * req.U + 0.5))
            approx = fourier_pade(taylor, N, req.U - N, interval=plan.interval)
        else:
            degrees = allocate_degrees(req.U, len(plan.eps), self.config.numerator_fraction)
            approx = solve_sfp(taylor, plan.eps, degrees, plan.interval)

        values, near_pole = evaluate_with_status(approx, y1, self.config.near_pole_tolerance)
        approx.diagnostics.near_pole = bool(np.any(near_pole))
        if not np.all(np.isfinite(values)):
            raise SolverError("approximant evaluated to a non-finite value")
        return _Reconstruction(values=values, near_pole=near_pole, diagnostics=approx.diagnostics)

    def _base_taylor(self, req: PriceRequest, plan: _SolvePlan) -> np.ndarray:
        return cfs_coefficients(req.model, plan.contract, plan.interval, req.U).taylor

    def _vega_taylor(self, req: PriceRequest, plan: _SolvePlan) -> np.ndarray:
        if not isinstance(req.model, HestonModel):
            raise UnsupportedOperationError(f"vega needs a variance state; {req.model.kind} has none")
        interval = plan.interval
        freqs = -PhaseUtils.harmonics(req.U, interval)
        weights = req.model.variance_sensitivity(freqs, req.contract.T) / interval.width
        weights[1:] *= 2.0
        weights[0] = 0.0
        return weights * transform_series(plan.contract, req.U, interval)

    def _run(self, req: PriceRequest, points: _CurvePoints, with_greeks: bool, with_vega: bool = False):
        started = time.perf_counter()
        bound = float(np.max(np.abs(points.y1)))
        plan = self._build_plan(req, bound)
        y1 = points.y1
        iw = 1j * PhaseUtils.harmonics(req.U, plan.interval)
        taylor = self._base_taylor(req, plan)

        T = req.contract.T
        disc = np.exp(-req.model.r * T)
        carry = np.exp(-req.model.q * T)
        scale = points.K ** req.contract.strike_power

        base = self._reconstruct(req, plan, taylor, y1)
        value = disc * scale * base.values
        if plan.parity:
            value = value + points.S0 * carry - points.K * disc

        delta = gamma = vega = None
        if with_greeks:
            first = self._reconstruct(req, plan, taylor * (-iw), y1)
            second = self._reconstruct(req, plan, taylor * iw * (iw + 1.0), y1)
            delta = disc * scale * first.values / points.S0
            gamma = disc * scale * second.values / points.S0 ** 2
            if plan.parity:
                delta = delta + carry
        if with_vega:
            vega = disc * scale * self._reconstruct(req, plan, self._vega_taylor(req, plan), y1).values

        elapsed = time.perf_counter() - started
        self.stats['points'] += len(y1)
        self.stats['total_time'] += elapsed
        return plan, base, value, delta, gamma, vega, elapsed

    # ---------------------------------------------------------------- public

    def price_curve(self,
                    req: PriceRequest,
                    grid: Sequence[float],
                    grid_kind: GridKind = GridKind.STRIKE,
                    with_greeks: bool = False) -> List[PriceResult]:
        """Price the contract along a strike or spot grid with one shared solve"""
        grid = np.asarray(grid, dtype=float).reshape(-1)
        if grid.size == 0 or np.any(grid <= 0):
            raise IntervalError("grid must be nonempty and strictly positive")
        grid_kind = GridKind(grid_kind)
        if grid_kind == GridKind.STRIKE:
            points = _CurvePoints(S0=np.full_like(grid, req.S0), K=grid)
        else:
            points = _CurvePoints(S0=grid, K=np.full_like(grid, req.contract.K))

        with_vega = with_greeks and req.model.has_variance_state
        plan, base, value, delta, gamma, vega, elapsed = self._run(req, points, with_greeks, with_vega)

        results = []
        for i in range(grid.size):
            greeks = None
            if with_greeks:
                greeks = Greeks(
                    delta=float(delta[i]),
                    gamma=float(gamma[i]),
                    vega=None if vega is None else float(vega[i]),
                )
            status, message = PricingStatus.OK, ""
            if base.near_pole[i]:
                status, message = PricingStatus.NEAR_POLE, "evaluation point close to a pole of Q"
            elif base.diagnostics is not None and base.diagnostics.degenerate:
                status = PricingStatus.DEGENERATE
                message = f"null space dimension {base.diagnostics.null_dimension}"
            results.append(PriceResult(
                value=float(value[i]),
                S0=float(points.S0[i]),
                K=float(points.K[i]),
                terms_used=req.U,
                greeks=greeks,
                diagnostics=base.diagnostics,
                status=status,
                status_message=message,
                interval=plan.interval,
                jump_locations=list(plan.jump_locations),
                elapsed_seconds=elapsed / grid.size,
            ))
        return results

    def price(self, req: PriceRequest, with_greeks: bool = False) -> PriceResult:
        return self.price_curve(req, [req.contract.K], GridKind.STRIKE, with_greeks)[0]

    def delta(self, req: PriceRequest) -> float:
        return self.price(req, with_greeks=True).greeks.delta

    def gamma(self, req: PriceRequest) -> float:
        return self.price(req, with_greeks=True).greeks.gamma

    def vega(self, req: PriceRequest) -> float:
        if not req.model.has_variance_state:
            raise UnsupportedOperationError(f"vega needs a variance state; {req.model.kind} has none")
        points = _CurvePoints(S0=np.array([req.S0]), K=np.array([req.contract.K]))
        _, _, _, _, _, vega, _ = self._run(req, points, with_greeks=False, with_vega=True)
        return float(vega[0])

    def jump_report(self, req: PriceRequest) -> Tuple[TruncationInterval, Optional[JumpReport]]:
        """Interval and jump report the pricer would use for this request"""
        bound = abs(np.log(req.contract.K / req.S0))
        plan = self._build_plan(req, bound)
        return plan.interval, plan.report

    def density(self, req: PriceRequest, points: int = settings.DENSITY_GRID_POINTS) -> Tuple[TruncationInterval, np.ndarray, np.ndarray]:
        """Log-return density on the pricing interval, reconstructed with the request method"""
        bound = abs(np.log(req.contract.K / req.S0))
        plan = self._build_plan(req, bound)
        grid = np.linspace(plan.interval.c, plan.interval.d, max(int(points), 2))
        taylor = density_coefficients(req.model, req.contract.T, plan.interval, req.U).taylor
        values = self._reconstruct(req, plan, taylor, grid).values
        return plan.interval, grid, values

    def get_stats(self) -> dict:
        stats = dict(self.stats)
        if stats['points']:
            stats['time_per_point'] = stats['total_time'] / stats['points']
        return stats


_default_pricer = SfpPricer()


def price(req: PriceRequest) -> PriceResult:
    return _default_pricer.price(req)


def price_curve(req: PriceRequest, grid: Sequence[float], grid_kind: GridKind = GridKind.STRIKE) -> List[PriceResult]:
    return _default_pricer.price_curve(req, grid, grid_kind)


def delta(req: PriceRequest) -> float:
    return _default_pricer.delta(req)


def gamma(req: PriceRequest) -> float:
    return _default_pricer.gamma(req)


def vega(req: PriceRequest) -> float:
    return _default_pricer.vega(req)
