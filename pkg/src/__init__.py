"""
SFP Option Pricer

European option pricing under Levy and stochastic-volatility models by
singular Fourier-Pade resummation of the cosine/Fourier price series.
"""

__version__ = "2.0.0"

# Make core components easily accessible
from .core.models import (
    Contract,
    ContractKind,
    GridKind,
    JumpMode,
    PriceRequest,
    PriceResult,
    ReconstructionMethod,
)
from .core.processes import BSMModel, CGMYModel, HestonModel, VGModel, build_model
from .core.pricing import SfpPricer, price, price_curve

__all__ = [
    'Contract',
    'ContractKind',
    'GridKind',
    'JumpMode',
    'PriceRequest',
    'PriceResult',
    'ReconstructionMethod',
    'BSMModel',
    'CGMYModel',
    'HestonModel',
    'VGModel',
    'build_model',
    'SfpPricer',
    'price',
    'price_curve',
]
