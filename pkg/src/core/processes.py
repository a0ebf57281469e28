"""
Characteristic functions, mean-correcting compensators and cumulants of the
log-return for the supported stochastic models.

All characteristic functions describe X_T = log(S_T / S_0) under the pricing
measure, drift included, so that phi(-i) = exp((r - q) T).
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Dict, Optional, Type

import numpy as np
from scipy.special import gamma

from config import settings
from .exceptions import ParameterDomainError
from .models import Cumulants

logger = logging.getLogger(__name__)


def _check_maturity(T: float) -> None:
    if not T > 0:
        raise ParameterDomainError(f"maturity must be positive, got {T}")


@dataclass(frozen=True)
class StochasticModel(ABC):
    """Abstract base class for all log-price models"""
    kind: ClassVar[str] = ""
    default_L: ClassVar[float] = settings.INTERVAL_L

    @abstractmethod
    def characteristic_fn(self, u, T: float) -> np.ndarray:
        """E[exp(i u X_T)] for complex u (array or scalar)"""
        pass

    @abstractmethod
    def compensator(self) -> float:
        pass

    @abstractmethod
    def cumulants(self, T: float) -> Cumulants:
        pass

    @property
    def has_variance_state(self) -> bool:
        return False

    def interval_spread(self, T: float) -> float:
        """Scale multiplied by L when sizing the truncation interval"""
        cum = self.cumulants(T)
        return float(np.sqrt(cum.c2 + np.sqrt(cum.c4)))

    def singular_point(self, T: float) -> Optional[float]:
        """Log-return where the density is known to lose smoothness, if any"""
        return None


@dataclass(frozen=True)
class LevyModel(StochasticModel):
    """Exponential Lévy model defined through its per-unit-time exponent"""

    @abstractmethod
    def _exponent(self, u: np.ndarray) -> np.ndarray:
        """Characteristic exponent per unit time, without the pricing drift"""
        pass

    def characteristic_fn(self, u, T: float) -> np.ndarray:
        _check_maturity(T)
        u = np.asarray(u, dtype=complex)
        drift = self.r - self.q + self.compensator()
        return np.exp(1j * u * drift * T + T * self._exponent(u))

    def compensator(self) -> float:
        # omega = -log E[exp(X_1)] of the driftless part
        return float(-self._exponent(np.asarray(-1j, dtype=complex)).real)


@dataclass(frozen=True)
class BSMModel(LevyModel):
    """Geometric Brownian motion"""
    sigma: float
    r: float = 0.0
    q: float = 0.0

    kind: ClassVar[str] = "bsm"

    def __post_init__(self):
        if not self.sigma > 0:
            raise ParameterDomainError(f"sigma must be positive, got {self.sigma}")

    def _exponent(self, u):
        return -0.5 * self.sigma ** 2 * u ** 2

    def compensator(self) -> float:
        return -0.5 * self.sigma ** 2

    def cumulants(self, T: float) -> Cumulants:
        _check_maturity(T)
        return Cumulants(
            c1=(self.r - self.q - 0.5 * self.sigma ** 2) * T,
            c2=self.sigma ** 2 * T,
            c4=0.0,
        )

    def singular_point(self, T: float) -> Optional[float]:
        # the density collapses onto its mean as T -> 0
        return self.cumulants(T).c1


@dataclass(frozen=True)
class VGModel(LevyModel):
    """Variance Gamma: Brownian motion with drift theta run on a gamma clock"""
    sigma: float
    theta: float
    nu: float
    r: float = 0.0
    q: float = 0.0

    kind: ClassVar[str] = "vg"

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ParameterDomainError(f"sigma must be nonnegative, got {self.sigma}")
        if not self.nu > 0:
            raise ParameterDomainError(f"nu must be positive, got {self.nu}")
        if not 1.0 - self.theta * self.nu - 0.5 * self.sigma ** 2 * self.nu > 0:
            raise ParameterDomainError(
                "VG compensator undefined: 1 - theta*nu - sigma^2*nu/2 must be positive"
            )

    def _exponent(self, u):
        base = 1.0 - 1j * self.theta * self.nu * u + 0.5 * self.sigma ** 2 * self.nu * u ** 2
        return -np.log(base) / self.nu

    def compensator(self) -> float:
        return float(np.log(1.0 - self.theta * self.nu - 0.5 * self.sigma ** 2 * self.nu) / self.nu)

    def cumulants(self, T: float) -> Cumulants:
        _check_maturity(T)
        s2, th, nu = self.sigma ** 2, self.theta, self.nu
        return Cumulants(
            c1=(self.r - self.q + th + self.compensator()) * T,
            c2=(s2 + nu * th ** 2) * T,
            c4=3.0 * (s2 ** 2 * nu + 2.0 * th ** 4 * nu ** 3 + 4.0 * s2 * th ** 2 * nu ** 2) * T,
        )

    def singular_point(self, T: float) -> Optional[float]:
        # cusp of the gamma-subordinated density at the drift point
        _check_maturity(T)
        return (self.r - self.q + self.compensator()) * T


@dataclass(frozen=True)
class CGMYModel(LevyModel):
    """Tempered stable pure-jump model, written in centered (zero-mean) form"""
    C: float
    G: float
    M: float
    Y: float
    r: float = 0.0
    q: float = 0.0

    kind: ClassVar[str] = "cgmy"

    def __post_init__(self):
        for name in ("C", "G"):
            if not getattr(self, name) > 0:
                raise ParameterDomainError(f"{name} must be positive, got {getattr(self, name)}")
        if not self.M > 1:
            raise ParameterDomainError(f"M must exceed 1 for a finite forward, got {self.M}")
        if not 0 < self.Y < 2 or self.Y == 1:
            raise ParameterDomainError(f"Y must lie in (0, 2) and differ from 1, got {self.Y}")

    def _exponent(self, u):
        C, G, M, Y = self.C, self.G, self.M, self.Y
        scale = C * gamma(-Y)
        right = G ** Y * ((1.0 + 1j * u / G) ** Y - 1.0 - 1j * u * Y / G)
        left = M ** Y * ((1.0 - 1j * u / M) ** Y - 1.0 + 1j * u * Y / M)
        return scale * (right + left)

    def cumulants(self, T: float) -> Cumulants:
        _check_maturity(T)
        C, G, M, Y = self.C, self.G, self.M, self.Y
        return Cumulants(
            c1=(self.r - self.q + self.compensator()) * T,
            c2=C * gamma(2.0 - Y) * (M ** (Y - 2.0) + G ** (Y - 2.0)) * T,
            c4=C * gamma(4.0 - Y) * (M ** (Y - 4.0) + G ** (Y - 4.0)) * T,
        )


@dataclass(frozen=True)
class HestonModel(StochasticModel):
    """Stochastic variance with mean reversion and correlated volatility shocks"""
    y0: float
    ybar: float
    lam: float
    eta: float
    rho: float
    r: float = 0.0
    q: float = 0.0

    kind: ClassVar[str] = "heston"
    default_L: ClassVar[float] = settings.HESTON_INTERVAL_L

    def __post_init__(self):
        for name in ("y0", "ybar", "lam", "eta"):
            if not getattr(self, name) >= 0:
                raise ParameterDomainError(f"{name} must be nonnegative, got {getattr(self, name)}")
        if not -1.0 <= self.rho <= 1.0:
            raise ParameterDomainError(f"rho must lie in [-1, 1], got {self.rho}")

    @property
    def has_variance_state(self) -> bool:
        return True

    def compensator(self) -> float:
        return 0.0

    def _riccati(self, u: np.ndarray, T: float):
        """Closed-form (C, D) of phi = exp(C + D*y0), branch-stable form"""
        drift = 1j * u * (self.r - self.q) * T
        if self.eta == 0:
            # deterministic variance path
            loading = T if self.lam == 0 else -np.expm1(-self.lam * T) / self.lam
            D = -0.5 * (u ** 2 + 1j * u) * loading
            C = drift - 0.5 * (u ** 2 + 1j * u) * self.ybar * (T - loading)
            return C, D

        lam, eta, rho = self.lam, self.eta, self.rho
        beta = lam - 1j * rho * eta * u
        d = np.sqrt(beta ** 2 + eta ** 2 * (1j * u + u ** 2))
        with np.errstate(divide="ignore", invalid="ignore"):
            g = (beta - d) / (beta + d)
            decay = np.exp(-d * T)
            D = (beta - d) / eta ** 2 * (1.0 - decay) / (1.0 - g * decay)
            C = drift + lam * self.ybar / eta ** 2 * (
                (beta - d) * T - 2.0 * np.log((1.0 - g * decay) / (1.0 - g))
            )
        at_origin = u == 0
        if np.any(at_origin):
            C = np.where(at_origin, 0.0, C)
            D = np.where(at_origin, 0.0, D)
        return C, D

    def characteristic_fn(self, u, T: float) -> np.ndarray:
        _check_maturity(T)
        u = np.asarray(u, dtype=complex)
        C, D = self._riccati(u, T)
        return np.exp(C + D * self.y0)

    def variance_sensitivity(self, u, T: float) -> np.ndarray:
        """Derivative of the characteristic function with respect to y0"""
        _check_maturity(T)
        u = np.asarray(u, dtype=complex)
        C, D = self._riccati(u, T)
        return D * np.exp(C + D * self.y0)

    def cumulants(self, T: float) -> Cumulants:
        """Mean and variance of the log-return; c4 is not used for this model"""
        _check_maturity(T)
        if not self.lam > 0:
            raise ParameterDomainError("Heston cumulants require a positive mean-reversion speed")
        lam, eta, rho, ybar, y0 = self.lam, self.eta, self.rho, self.ybar, self.y0
        E = np.exp(-lam * T)
        one_m_E = -np.expm1(-lam * T)

        mean_variance = ybar * T + (y0 - ybar) * one_m_E / lam
        c1 = (self.r - self.q) * T - 0.5 * mean_variance

        # Var(M - I/2) with M the diffusion martingale and I the integrated variance
        cov_mi = eta * rho * (
            ybar * (T / lam - one_m_E / lam ** 2)
            + (y0 - ybar) * (one_m_E - lam * T * E) / lam ** 2
        )
        var_i = (
            eta ** 2 * ybar / lam ** 2 * (T - one_m_E / lam - one_m_E ** 2 / (2.0 * lam))
            + 2.0 * eta ** 2 * (y0 - ybar) / lam ** 2
            * (one_m_E / lam - T * E - one_m_E ** 2 / (2.0 * lam))
        )
        c2 = mean_variance - cov_mi + 0.25 * var_i
        return Cumulants(c1=float(c1), c2=float(c2), c4=0.0)

    def interval_spread(self, T: float) -> float:
        """
        Square root of the closed-form second-cumulant expression before its
        1 / (8 lambda^3) normalization.

        This is several times the log-return deviation, which keeps the fat
        variance-driven tails inside the interval at long maturities.
        """
        _check_maturity(T)
        if not self.lam > 0:
            raise ParameterDomainError("Heston interval requires a positive mean-reversion speed")
        lam, eta, rho, ybar, y0 = self.lam, self.eta, self.rho, self.ybar, self.y0
        E = np.exp(-lam * T)
        one_m_E = -np.expm1(-lam * T)
        raw = (
            eta * T * lam * E * (y0 - ybar) * (8.0 * lam * rho - 4.0 * eta)
            + lam * rho * eta * one_m_E * (16.0 * ybar - 8.0 * y0)
            + 2.0 * ybar * lam * T * (-4.0 * rho * eta + eta ** 2 + 4.0 * lam ** 2)
            + eta ** 2 * ((ybar - 2.0 * y0) * E ** 2 + ybar * (6.0 * E - 7.0) + 2.0 * y0)
            + 8.0 * lam ** 2 * (y0 - ybar) * one_m_E
        )
        return float(np.sqrt(abs(raw)))


MODEL_REGISTRY: Dict[str, Type[StochasticModel]] = {
    BSMModel.kind: BSMModel,
    VGModel.kind: VGModel,
    CGMYModel.kind: CGMYModel,
    HestonModel.kind: HestonModel,
}

_PARAMETER_ALIASES = {"lambda": "lam", "kappa": "lam", "v0": "y0", "vbar": "ybar"}


def build_model(kind: str, **params) -> StochasticModel:
    """Construct a model from its kind name and keyword parameters"""
    try:
        cls = MODEL_REGISTRY[kind.lower()]
    except KeyError:
        raise ParameterDomainError(
            f"unknown model kind '{kind}', expected one of {sorted(MODEL_REGISTRY)}"
        ) from None
    params = {_PARAMETER_ALIASES.get(key, key): value for key, value in params.items()}
    try:
        return cls(**{key: float(value) for key, value in params.items()})
    except TypeError as e:
        raise ParameterDomainError(f"bad parameters for {kind}: {e}") from None


def characteristic_fn(model: StochasticModel, u, T: float) -> np.ndarray:
    return model.characteristic_fn(u, T)


def compensator(model: StochasticModel) -> float:
    return model.compensator()


def cumulants(model: StochasticModel, T: float) -> Cumulants:
    return model.cumulants(T)
