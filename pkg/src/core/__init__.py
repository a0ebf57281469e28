"""
Core pricing components.
"""

from .models import Contract, ContractKind, PriceRequest, PriceResult, TruncationInterval
from .pricing import SfpPricer
from .sfp import allocate_degrees, evaluate, fourier_pade, solve_sfp

__all__ = [
    'Contract',
    'ContractKind',
    'PriceRequest',
    'PriceResult',
    'TruncationInterval',
    'SfpPricer',
    'allocate_degrees',
    'evaluate',
    'fourier_pade',
    'solve_sfp',
]
