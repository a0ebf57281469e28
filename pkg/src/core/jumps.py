"""
Jump detection for the log-return density.

The density counts as non-smooth when its Fourier series is still unresolved
at the last detection harmonic, i.e. |phi(omega U)| stays above
spike_factor * DETECTION_TAIL_LEVEL. Singular points are then located from
the Fourier-Padé approximant of the density derivative, whose magnitude
spikes far above the RMS level of the derivative series there. Spike runs
that flank one narrow peak are merged and placed at the density maximum.
"""
import logging
from typing import Callable, List, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from config import settings
from .exceptions import DegreeError, ParameterDomainError
from .models import JumpReport, TruncationInterval
from .processes import StochasticModel
from .series import cfs_partial_sum, density_coefficients, derivative_coefficients
from .sfp import evaluate, fourier_pade

logger = logging.getLogger(__name__)


def _effective_length(taylor: np.ndarray, cutoff: float) -> int:
    """Index of the last coefficient above cutoff * max magnitude"""
    mags = np.abs(taylor)
    significant = np.flatnonzero(mags > cutoff * mags.max())
    return int(significant[-1]) if significant.size else 0


def _runs(mask: np.ndarray) -> List[np.ndarray]:
    """Contiguous index runs where mask is True"""
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return []
    breaks = np.flatnonzero(np.diff(idx) > 1) + 1
    return np.split(idx, breaks)


def _merge(runs: List[np.ndarray], grid: np.ndarray, width: float) -> List[List[np.ndarray]]:
    """Group runs whose gap is narrower than width"""
    groups: List[List[np.ndarray]] = []
    for run in runs:
        if groups and grid[run[0]] - grid[groups[-1][-1][-1]] < width:
            groups[-1].append(run)
        else:
            groups.append([run])
    return groups


def _refine(magnitude, grid: np.ndarray, i: int) -> float:
    """Golden-section search for the spike maximum within the neighbouring grid cells"""
    if i == 0 or i == len(grid) - 1:
        return float(grid[i])
    lo, hi = grid[i - 1], grid[i + 1]
    try:
        result = minimize_scalar(lambda y: -magnitude(y), bracket=(lo, grid[i], hi), method="golden")
    except ValueError:
        return float(grid[i])
    y = float(np.clip(result.x, lo, hi))
    return y if magnitude(y) >= magnitude(grid[i]) else float(grid[i])


def _peak(values: Callable, grid: np.ndarray, lo: int, hi: int) -> float:
    """Maximizer of values over grid[lo..hi], polished by bounded Brent in the adjacent cells"""
    i = lo + int(np.argmax(values(grid[lo:hi + 1])))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    tol = 1e-9 * (grid[-1] - grid[0])
    result = minimize_scalar(lambda y: -float(values(y)), bounds=(a, b), method="bounded",
                             options={'xatol': tol})
    y = float(result.x)
    return y if values(y) >= values(grid[i]) else float(grid[i])


def detect_jumps(model: StochasticModel,
                 T: float,
                 interval: TruncationInterval,
                 U: int = settings.DETECTION_TERMS,
                 spike_factor: float = settings.SPIKE_FACTOR,
                 grid_points: Optional[int] = None) -> JumpReport:
    """Locate density discontinuities on the interval"""
    if U < settings.MIN_DETECTION_TERMS:
        raise DegreeError(f"detection needs U >= {settings.MIN_DETECTION_TERMS}, got {U}")
    if not spike_factor > 1:
        raise ParameterDomainError(f"spike_factor must exceed 1, got {spike_factor}")
    grid_points = max(grid_points or settings.DETECTION_GRID_POINTS, settings.DETECTION_GRID_POINTS)

    base = density_coefficients(model, T, interval, U)
    tail = float(np.abs(base.taylor[U]) / (2.0 * np.abs(base.taylor[0])))
    taylor = derivative_coefficients(model, T, interval, U).taylor
    background = float(np.sqrt(0.5 * np.sum(np.abs(taylor[1:]) ** 2)))
    if background == 0:
        return JumpReport(tail=tail)

    length = max(_effective_length(taylor, settings.DETECTION_COEFF_CUTOFF), 2)
    N = M = (length - 1) // 2
    approx = fourier_pade(taylor[:N + M + 1], N, M, interval=interval, rcond=settings.DETECTION_RCOND)

    def magnitude(y):
        value = np.abs(evaluate(approx, np.clip(y, interval.c, interval.d)))
        return np.where(np.isfinite(value), value, np.finfo(float).max)

    def density(y):
        return cfs_partial_sum(base, np.clip(y, interval.c, interval.d))

    grid = np.linspace(interval.c, interval.d, grid_points)
    values = magnitude(grid)
    peak_ratio = float(values.max() / background)
    smooth = tail <= spike_factor * settings.DETECTION_TAIL_LEVEL

    locations, magnitudes = [], []
    if not smooth:
        width = settings.DETECTION_MERGE_CELLS * interval.width / U
        for group in _merge(_runs(values > spike_factor * background), grid, width):
            if len(group) > 1:
                zeta = _peak(density, grid, int(group[0][0]), int(group[-1][-1]))
            else:
                run = group[0]
                zeta = _refine(lambda y: float(magnitude(y)), grid, int(run[np.argmax(values[run])]))
            locations.append(zeta)
            magnitudes.append(float(magnitude(zeta)))
        if not locations:
            # spike too narrow for the derivative approximant: take the density peak
            zeta = _peak(density, grid, 0, grid_points - 1)
            locations.append(zeta)
            magnitudes.append(float(magnitude(zeta)))

    order = np.argsort(locations)
    report = JumpReport(
        locations=[locations[j] for j in order],
        spike_magnitudes=[magnitudes[j] for j in order],
        smooth=smooth,
        background=background,
        peak_ratio=peak_ratio,
        tail=tail,
    )
    if not report.smooth:
        logger.info("Non-smooth density for %s, T=%s (tail %.3g): jumps at %s",
                    model.kind, T, tail, report.locations)
    return report
