"""
Core data models for the SFP option pricer.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, List, Optional, Tuple

import numpy as np

from config import settings
from .exceptions import DegreeError, IntervalError, ParameterDomainError

if TYPE_CHECKING:
    from .processes import StochasticModel


class ContractKind(Enum):
    """Enumeration of the supported payoff families"""
    CALL = "call"
    PUT = "put"
    COVERED_CALL = "covered-call"
    CASH_OR_NOTHING_CALL = "cash-or-nothing-call"
    CASH_OR_NOTHING_PUT = "cash-or-nothing-put"
    ASSET_OR_NOTHING_CALL = "asset-or-nothing-call"
    ASSET_OR_NOTHING_PUT = "asset-or-nothing-put"
    ASYMMETRIC_CALL = "asymmetric-call"
    ASYMMETRIC_PUT = "asymmetric-put"
    SYMMETRIC_CALL = "symmetric-call"
    SYMMETRIC_PUT = "symmetric-put"

    @property
    def is_power(self) -> bool:
        return self in _POWER_KINDS

    @property
    def is_cash(self) -> bool:
        return self in (ContractKind.CASH_OR_NOTHING_CALL, ContractKind.CASH_OR_NOTHING_PUT)


_POWER_KINDS = frozenset({
    ContractKind.ASYMMETRIC_CALL,
    ContractKind.ASYMMETRIC_PUT,
    ContractKind.SYMMETRIC_CALL,
    ContractKind.SYMMETRIC_PUT,
})


class JumpMode(Enum):
    """How jump points of the density are supplied to the solver"""
    AUTO = "auto"
    EXPLICIT = "explicit"
    ENDPOINTS = "endpoints"


class ReconstructionMethod(Enum):
    """Series reconstruction used to evaluate prices"""
    SFP = "sfp"
    FP = "fp"
    CFS = "cfs"


class PricingStatus(Enum):
    """Numerical status attached to a priced point"""
    OK = "ok"
    NEAR_POLE = "near_pole"
    DEGENERATE = "degenerate"


class GridKind(Enum):
    """Axis a price curve is laid out on"""
    STRIKE = "strike"
    SPOT = "spot"


@dataclass(frozen=True)
class Cumulants:
    """First, second and fourth cumulants of the log-return"""
    c1: float
    c2: float
    c4: float = 0.0


@dataclass(frozen=True)
class Contract:
    """European contract: payoff family, strike, maturity and power"""
    kind: ContractKind
    K: float
    T: float
    n: int = 1

    def __post_init__(self):
        if not self.K > 0:
            raise ParameterDomainError(f"strike must be positive, got {self.K}")
        if not self.T > 0:
            raise ParameterDomainError(f"maturity must be positive, got {self.T}")
        if self.kind.is_power and not 1 <= self.n <= settings.MAX_POWER:
            raise ParameterDomainError(
                f"power n must lie in [1, {settings.MAX_POWER}], got {self.n}"
            )

    @property
    def strike_power(self) -> int:
        """Exponent e such that the payoff transform scales as K**e"""
        if self.kind.is_cash:
            return 0
        if self.kind.is_power:
            return self.n
        return 1

    def with_strike(self, K: float) -> "Contract":
        return replace(self, K=K)

    def with_kind(self, kind: ContractKind) -> "Contract":
        return replace(self, kind=kind)


@dataclass(frozen=True)
class TruncationInterval:
    """Integration range [c, d] in log-return units with its construction metadata"""
    c: float
    d: float
    L: float = settings.INTERVAL_L
    padding: float = 0.0
    cumulants: Optional[Cumulants] = None

    def __post_init__(self):
        if not (np.isfinite(self.c) and np.isfinite(self.d)):
            raise IntervalError(f"interval bounds must be finite, got [{self.c}, {self.d}]")
        if not self.c < 0 < self.d:
            raise IntervalError(f"interval must contain 0 in its interior, got [{self.c}, {self.d}]")

    @property
    def width(self) -> float:
        return self.d - self.c

    @property
    def omega(self) -> float:
        """Fundamental angular frequency 2*pi/(d - c)"""
        return 2.0 * np.pi / self.width

    def contains(self, y) -> bool:
        y = np.asarray(y, dtype=float)
        return bool(np.all((y >= self.c) & (y <= self.d)))

    def to_dict(self) -> dict:
        return {
            'c': self.c,
            'd': self.d,
            'L': self.L,
            'padding': self.padding,
        }


@dataclass
class SeriesCoefficients:
    """Complex Fourier coefficients a_0..a_U on a truncation interval"""
    taylor: np.ndarray
    interval: TruncationInterval

    @property
    def U(self) -> int:
        return len(self.taylor) - 1


@dataclass(frozen=True)
class DegreePlan:
    """Numerator, denominator and log-term degrees of an SFP approximant"""
    N: int
    M: int
    Ns: Tuple[int, ...]
    U: int

    def __post_init__(self):
        if min((self.N, self.M) + tuple(self.Ns)) < 0:
            raise DegreeError(f"degrees must be nonnegative: {self}")
        if self.N + self.M + self.S + sum(self.Ns) != self.U:
            raise DegreeError(f"degrees do not add up to U={self.U}: {self}")

    @property
    def S(self) -> int:
        return len(self.Ns)

    @property
    def unknowns(self) -> int:
        return self.U + 2


@dataclass
class SfpDiagnostics:
    """Linear-algebra diagnostics of an approximant solve"""
    condition: float = 1.0
    residual: float = 0.0
    null_dimension: int = 1
    near_pole: bool = False
    reduced_by: int = 0

    @property
    def degenerate(self) -> bool:
        return self.null_dimension > 1

    def to_dict(self) -> dict:
        return {
            'condition': self.condition,
            'residual': self.residual,
            'null_dimension': self.null_dimension,
            'near_pole': self.near_pole,
            'reduced_by': self.reduced_by,
        }


@dataclass
class SfpApproximant:
    """(P + sum L_s log(1 - z/eps_s)) / Q in the variable z = exp(i omega y)"""
    p: np.ndarray
    q: np.ndarray
    l: List[np.ndarray]
    eps: np.ndarray
    interval: Optional[TruncationInterval] = None
    diagnostics: SfpDiagnostics = field(default_factory=SfpDiagnostics)

    def __post_init__(self):
        if not np.any(self.q):
            raise DegreeError("denominator is identically zero")
        if len(self.eps) and not np.allclose(np.abs(self.eps), 1.0, atol=1e-12):
            raise IntervalError("jump points must lie on the unit circle")

    @property
    def plan(self) -> DegreePlan:
        Ns = tuple(len(coeffs) - 1 for coeffs in self.l)
        U = (len(self.p) - 1) + (len(self.q) - 1) + len(Ns) + sum(Ns)
        return DegreePlan(N=len(self.p) - 1, M=len(self.q) - 1, Ns=Ns, U=U)


@dataclass
class JumpReport:
    """Located density discontinuities"""
    locations: List[float] = field(default_factory=list)
    spike_magnitudes: List[float] = field(default_factory=list)
    smooth: bool = True
    background: float = 0.0
    peak_ratio: float = 0.0
    tail: float = 0.0

    def to_dict(self) -> dict:
        return {
            'locations': list(self.locations),
            'spike_magnitudes': list(self.spike_magnitudes),
            'smooth': self.smooth,
            'background': self.background,
            'peak_ratio': self.peak_ratio,
            'tail': self.tail,
        }


@dataclass
class PricerConfig:
    """Engine-wide settings for the pricer"""
    # Jump detection
    spike_factor: float = settings.SPIKE_FACTOR
    detection_terms: int = settings.DETECTION_TERMS
    detection_grid_points: int = settings.DETECTION_GRID_POINTS

    # Solver
    numerator_fraction: float = settings.NUMERATOR_FRACTION
    near_pole_tolerance: float = settings.NEAR_POLE_TOLERANCE


@dataclass
class PriceRequest:
    """A single pricing job"""
    model: "StochasticModel"
    contract: Contract
    S0: float
    U: int = settings.DEFAULT_TERMS
    L: Optional[float] = None
    padding: Optional[float] = None
    jumps: JumpMode = JumpMode.AUTO
    explicit_jumps: Tuple[float, ...] = ()
    method: ReconstructionMethod = ReconstructionMethod.SFP
    use_parity: bool = True
    interval: Optional[TruncationInterval] = None

    def __post_init__(self):
        if not self.S0 > 0:
            raise ParameterDomainError(f"spot must be positive, got {self.S0}")
        if self.U < settings.MIN_PRICING_TERMS:
            raise DegreeError(f"U must be at least {settings.MIN_PRICING_TERMS}, got {self.U}")
        self.jumps = JumpMode(self.jumps)
        self.method = ReconstructionMethod(self.method)
        self.explicit_jumps = tuple(float(z) for z in self.explicit_jumps)

    def with_spot(self, S0: float) -> "PriceRequest":
        return replace(self, S0=S0)


@dataclass
class Greeks:
    """Sensitivities of a priced point"""
    delta: float
    gamma: float
    vega: Optional[float] = None

    def to_dict(self) -> dict:
        return {'delta': self.delta, 'gamma': self.gamma, 'vega': self.vega}


@dataclass
class PriceResult:
    """Price of one contract with its numerical provenance"""
    value: float
    S0: float
    K: float
    terms_used: int
    greeks: Optional[Greeks] = None
    diagnostics: Optional[SfpDiagnostics] = None
    status: PricingStatus = PricingStatus.OK
    status_message: str = ""
    interval: Optional[TruncationInterval] = None
    jump_locations: List[float] = field(default_factory=list)
    elapsed_seconds: Optional[float] = None

    def __post_init__(self):
        if not np.isfinite(self.value):
            raise ParameterDomainError(f"price is not finite: {self.value}")

    def to_dict(self) -> dict:
        """Convert result to a flat dictionary for CSV export"""
        row = {
            'S0': self.S0,
            'K': self.K,
            'U': self.terms_used,
            'value': self.value,
            'status': self.status.value,
        }
        if self.greeks is not None:
            row.update(self.greeks.to_dict())
        if self.diagnostics is not None:
            row.update(self.diagnostics.to_dict())
        if self.interval is not None:
            row.update({'c': self.interval.c, 'd': self.interval.d})
        row['elapsed_seconds'] = self.elapsed_seconds
        return row


@dataclass
class ErrorReport:
    """Error norms of a priced grid against a reference"""
    r_inf: float
    r_2: float
    per_point: List[Tuple[float, float, float, float]]
    wall_time_seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            'r_inf': self.r_inf,
            'r_2': self.r_2,
            'seconds': self.wall_time_seconds,
        }
