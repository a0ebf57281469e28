"""
Numerical helpers for series, phases and null-space solves.
"""

from .numerics import LinalgUtils, PhaseUtils, SeriesUtils

__all__ = ['LinalgUtils', 'PhaseUtils', 'SeriesUtils']
