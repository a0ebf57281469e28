"""
Numerical helpers shared by the series, solver and jump-detection modules.
"""
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import svd, toeplitz

from ..core.models import TruncationInterval


class SeriesUtils:
    """Utility class for power-series bookkeeping"""

    @staticmethod
    def log_series(eps: complex, length: int) -> np.ndarray:
        """Taylor coefficients of log(1 - z/eps) up to z**(length-1)"""
        out = np.zeros(length, dtype=complex)
        if length > 1:
            k = np.arange(1, length)
            out[1:] = -np.power(np.conj(eps), k) / k
        return out

    @staticmethod
    def toeplitz_block(seq: np.ndarray, first_order: int, n_rows: int, n_cols: int) -> np.ndarray:
        """Matrix with entry seq[first_order + row - col], zero outside seq"""
        if n_rows <= 0 or n_cols <= 0:
            return np.zeros((max(n_rows, 0), max(n_cols, 0)), dtype=complex)
        seq = np.asarray(seq, dtype=complex)
        padded = np.zeros(first_order + n_rows + n_cols + 1, dtype=complex)
        padded[:min(len(seq), len(padded))] = seq[:len(padded)]

        column = padded[first_order:first_order + n_rows]
        idx = first_order - np.arange(n_cols)
        row = np.where(idx >= 0, padded[np.clip(idx, 0, None)], 0)
        return toeplitz(column, row)

    @staticmethod
    def truncated_product(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
        """Coefficients 0..length-1 of the product of two power series"""
        full = np.convolve(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
        out = np.zeros(length, dtype=complex)
        n = min(length, len(full))
        out[:n] = full[:n]
        return out

    @staticmethod
    def polyval(z: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        """Evaluate an ascending-degree polynomial"""
        return npoly.polyval(z, coeffs)


class PhaseUtils:
    """Maps between log-return coordinates and the unit circle"""

    @staticmethod
    def to_z(y, interval: TruncationInterval) -> np.ndarray:
        return np.exp(1j * interval.omega * np.asarray(y, dtype=float))

    @staticmethod
    def jump_point(zeta: float, interval: TruncationInterval) -> complex:
        """Unit-circle image of a density jump at log-return zeta"""
        return complex(np.exp(1j * interval.omega * zeta))

    @staticmethod
    def harmonics(U: int, interval: TruncationInterval) -> np.ndarray:
        """Angular frequencies omega*k for k = 0..U"""
        return interval.omega * np.arange(U + 1)


class LinalgUtils:
    """Null-space extraction for homogeneous Toeplitz systems"""

    @staticmethod
    def null_vector(matrix: np.ndarray, rcond: float) -> Tuple[np.ndarray, float, int]:
        """
        Return (vector, condition estimate, null dimension) for a wide or tall matrix.

        The vector is the right singular direction of the smallest singular value
        of the column-equilibrated matrix, mapped back to the original columns.
        """
        n_rows, n_cols = matrix.shape
        if n_rows == 0:
            vec = np.zeros(n_cols, dtype=complex)
            vec[0] = 1.0
            return vec, 1.0, n_cols

        scale = np.linalg.norm(matrix, axis=0)
        scale[scale == 0] = 1.0
        _, s, vh = svd(matrix / scale, full_matrices=True)
        vec = vh[-1].conj() / scale

        if s[0] == 0:
            return vec, np.inf, n_cols
        rank = int(np.count_nonzero(s > rcond * s[0]))
        condition = s[0] / s[-1] if s[-1] > 0 else np.inf
        return vec, float(condition), n_cols - rank

    @staticmethod
    def numerical_rank(matrix: np.ndarray, rcond: float) -> int:
        if matrix.size == 0:
            return 0
        s = svd(matrix, compute_uv=False)
        if s[0] == 0:
            return 0
        return int(np.count_nonzero(s > rcond * s[0]))
