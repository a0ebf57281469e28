"""
Fourier-Padé and singular Fourier-Padé approximants.

Given Taylor coefficients f_0..f_U of f(z) and jump points eps_s on the unit
circle, find polynomials P (degree N), Q (degree M) and L_s (degree N_s) with

    P(z) + sum_s L_s(z) log(1 - z/eps_s) - f(z) Q(z) = O(z^(U+1)),

where U = N + M + S + sum N_s. The orders N+1..U give a homogeneous Toeplitz
system with one more unknown than equations; its null vector yields (Q, L_s)
and the orders 0..N then give P.
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from config import settings
from .exceptions import DegreeError, ParameterDomainError, SolverError
from .models import DegreePlan, SfpApproximant, SfpDiagnostics, TruncationInterval
from ..utils.numerics import LinalgUtils, PhaseUtils, SeriesUtils

logger = logging.getLogger(__name__)


def allocate_degrees(U: int, S: int, fraction: float = settings.NUMERATOR_FRACTION) -> DegreePlan:
    """Split the coefficient budget: N takes ~40%, M the largest share of the rest"""
    if S < 0:
        raise DegreeError(f"jump count must be nonnegative, got {S}")
    if U < S + 2:
        raise DegreeError(f"U={U} too small for {S} jump(s); need at least {S + 2}")
    free = U - S
    N = int(np.floor(fraction * free + 0.5))
    rest = free - N
    share, excess = divmod(rest, S + 1)
    return DegreePlan(N=N, M=share + excess, Ns=(share,) * S, U=U)


def _check_jumps(jumps: Sequence[complex]) -> np.ndarray:
    eps = np.asarray(jumps, dtype=complex).reshape(-1)
    if eps.size and not np.allclose(np.abs(eps), 1.0, atol=1e-12):
        raise ParameterDomainError("jump points must lie on the unit circle")
    return eps


def _system(taylor: np.ndarray, logs: Sequence[np.ndarray], N: int, M: int, Ns: Sequence[int], U: int) -> np.ndarray:
    n_rows = U - N
    blocks = [SeriesUtils.toeplitz_block(taylor, N + 1, n_rows, M + 1)]
    for lam, degree in zip(logs, Ns):
        blocks.append(-SeriesUtils.toeplitz_block(lam, N + 1, n_rows, degree + 1))
    return np.hstack(blocks)


def solve_sfp(taylor,
              jumps: Sequence[complex],
              plan: DegreePlan,
              interval: Optional[TruncationInterval] = None) -> SfpApproximant:
    """
    Solve the singular Fourier-Padé system for the given degree plan.

    A null space of dimension k > 1 means the data fit lower degrees. M and
    every N_s then drop by k - 1 while N and the orders N+1..U stay, so the
    reduced system is solved in the least-squares sense.
    """
    taylor = np.asarray(taylor, dtype=complex)
    eps = _check_jumps(jumps)
    if len(eps) != plan.S:
        raise DegreeError(f"plan has {plan.S} log terms but {len(eps)} jump(s) given")
    if len(taylor) < plan.U + 1:
        raise DegreeError(f"need {plan.U + 1} coefficients, got {len(taylor)}")
    taylor = taylor[:plan.U + 1]
    N, M, U = plan.N, plan.M, plan.U
    Ns = list(plan.Ns)
    logs = [SeriesUtils.log_series(e, U + 1) for e in eps]

    reduced_by = 0
    while True:
        system = _system(taylor, logs, N, M, Ns, U)
        try:
            vec, condition, null_dim = LinalgUtils.null_vector(system, settings.DEGENERACY_RCOND)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise SolverError(f"SVD failed for plan {plan}: {e}") from e
        if null_dim <= 1 or (M == 0 and not any(Ns)):
            break
        step = null_dim - 1
        logger.debug("Null space of dimension %d for plan %s; lowering M and N_s by %d", null_dim, plan, step)
        M = max(M - step, 0)
        Ns = [max(n - step, 0) for n in Ns]
        reduced_by += step

    if not np.all(np.isfinite(vec)):
        raise SolverError(f"non-finite null vector for plan {plan}")

    q = vec[:M + 1]
    pivot = np.argmax(np.abs(q))
    if np.abs(q[pivot]) == 0:
        raise SolverError(f"null vector has no denominator component for plan {plan}")
    vec = vec / q[pivot]
    q = vec[:M + 1]

    l_parts = []
    offset = M + 1
    for degree in Ns:
        l_parts.append(vec[offset:offset + degree + 1])
        offset += degree + 1

    p = SeriesUtils.toeplitz_block(taylor, 0, N + 1, M + 1) @ q
    for lam, coeffs in zip(logs, l_parts):
        p = p - SeriesUtils.toeplitz_block(lam, 0, N + 1, len(coeffs)) @ coeffs

    residual = float(np.linalg.norm(system @ vec)) if U > N else 0.0
    diagnostics = SfpDiagnostics(condition=condition, residual=residual,
                                 null_dimension=max(null_dim, 1), reduced_by=reduced_by)
    if diagnostics.degenerate:
        logger.debug("Numerically degenerate null space (dim %d) for plan %s", null_dim, plan)
    logger.debug("Solved plan %s: cond=%.3g residual=%.3g reduced_by=%d", plan, condition, residual, reduced_by)

    return SfpApproximant(p=p, q=q, l=l_parts, eps=eps, interval=interval, diagnostics=diagnostics)


def _reduce_degrees(taylor: np.ndarray, N: int, M: int, rcond: float) -> Tuple[int, int]:
    """Lower M to the numerical rank of the denominator block, shifting N alike"""
    while M > 0:
        block = SeriesUtils.toeplitz_block(taylor, N + 1, M, M + 1)
        rank = LinalgUtils.numerical_rank(block, rcond)
        if rank >= M:
            break
        N, M = max(N - (M - rank), 0), rank
    return N, M


def fourier_pade(taylor,
                 N: int,
                 M: int,
                 interval: Optional[TruncationInterval] = None,
                 rcond: Optional[float] = None) -> SfpApproximant:
    """[N/M] Fourier-Padé approximant (no log terms)"""
    taylor = np.asarray(taylor, dtype=complex)
    if N < 0 or M < 0:
        raise DegreeError(f"degrees must be nonnegative, got N={N}, M={M}")
    if len(taylor) < N + M + 1:
        raise DegreeError(f"need {N + M + 1} coefficients, got {len(taylor)}")
    if rcond is not None:
        N, M = _reduce_degrees(taylor, N, M, rcond)
    return solve_sfp(taylor, [], DegreePlan(N=N, M=M, Ns=(), U=N + M), interval)


def evaluate_z(approx: SfpApproximant, z,
               tolerance: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Complex approximant values at points z plus a mask of points where |Q| < tolerance * max|q_j|"""
    tolerance = settings.NEAR_POLE_TOLERANCE if tolerance is None else tolerance
    z = np.array(z, dtype=complex, ndmin=1)
    offset = np.exp(1j * settings.SINGULAR_OFFSET_RADIANS)
    for e, coeffs in zip(approx.eps, approx.l):
        if np.any(coeffs):
            on_jump = np.abs(1.0 - z / e) < settings.SINGULAR_OFFSET_RADIANS
            z[on_jump] *= offset

    numerator = SeriesUtils.polyval(z, approx.p)
    for e, coeffs in zip(approx.eps, approx.l):
        numerator = numerator + SeriesUtils.polyval(z, coeffs) * np.log(1.0 - z / e)
    denominator = SeriesUtils.polyval(z, approx.q)

    near_pole = np.abs(denominator) < tolerance * np.max(np.abs(approx.q))
    with np.errstate(divide="ignore", invalid="ignore"):
        values = numerator / denominator
    return values, near_pole


def evaluate_with_status(approx: SfpApproximant, y1,
                         tolerance: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Real approximant values at log-return points y1 plus a near-pole mask"""
    if approx.interval is None:
        raise ParameterDomainError("approximant has no interval; use evaluate_z")
    y1 = np.asarray(y1, dtype=float)
    values, near_pole = evaluate_z(approx, PhaseUtils.to_z(y1.reshape(-1), approx.interval), tolerance)
    if np.any(near_pole):
        logger.warning("Evaluation within %d point(s) of a pole of Q", int(np.count_nonzero(near_pole)))
    return values.real.reshape(y1.shape), near_pole.reshape(y1.shape)


def evaluate(approx: SfpApproximant, y1, tolerance: Optional[float] = None) -> np.ndarray:
    """Re[(P + sum L_s log(1 - z/eps_s)) / Q] at z = exp(i omega y1)"""
    values, _ = evaluate_with_status(approx, y1, tolerance)
    return values
