"""
Least-squares building blocks on a pivoted QR factorisation
"""

import numpy as np
import scipy.linalg as spla

from config import Config
from fma.errors import DataError, SingularDesignError


class QRFactor:
    """Pivoted economic QR of a tall matrix, X[:, perm] = Q R.

    Gives least-squares solves, (X^T X)^{-1} v and X (X^T X)^{-1} v without forming
    an inverse.
    """

    def __init__(self, matrix, model=None, condition_limit=None):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2:
            raise DataError(f'design must be two-dimensional, got shape {matrix.shape}')
        n, d = matrix.shape
        if n < d:
            raise SingularDesignError(f'{n} rows cannot identify {d} coefficients', model=_describe(model))
        if not np.all(np.isfinite(matrix)):
            raise DataError('design contains non-finite entries')
        limit = Config.FMA_CONDITION_LIMIT if condition_limit is None else condition_limit
        self.q, self.r, self.perm = spla.qr(matrix, mode='economic', pivoting=True)
        self.shape = (n, d)
        diag = np.abs(np.diag(self.r))
        if diag[0] == 0.0:
            raise SingularDesignError('design is identically zero', model=_describe(model), condition=float('inf'))
        self.condition = float(np.linalg.cond(self.r))
        if not np.isfinite(self.condition) or self.condition > limit:
            raise SingularDesignError(
                f'design is singular or ill-conditioned (condition {self.condition:.3g} > {limit:.3g})',
                model=_describe(model), condition=self.condition)

    def _unpermute(self, coef):
        out = np.empty_like(coef)
        out[self.perm] = coef
        return out

    def solve(self, y):
        """Least-squares coefficients for response y"""
        z = self.q.T @ np.asarray(y, dtype=float)
        return self._unpermute(spla.solve_triangular(self.r, z))

    def _rt_solve(self, v):
        # R^{-T} P^T v
        return spla.solve_triangular(self.r, np.asarray(v, dtype=float)[self.perm], trans='T')

    def gram_solve(self, v):
        """(X^T X)^{-1} v"""
        return self._unpermute(spla.solve_triangular(self.r, self._rt_solve(v)))

    def hat_vector(self, v):
        """X (X^T X)^{-1} v"""
        return self.q @ self._rt_solve(v)

    def __repr__(self):
        return f'<QRFactor {self.shape[0]}x{self.shape[1]} cond={self.condition:.3g}>'


def _describe(model):
    if model is None:
        return None
    return model.to_dict() if hasattr(model, 'to_dict') else model


def as_matrix(array, name='design'):
    array = np.asarray(array, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise DataError(f'{name} must be a matrix, got shape {array.shape}')
    return array


def as_vector(array, length=None, name='vector'):
    array = np.asarray(array, dtype=float)
    if array.ndim != 1:
        raise DataError(f'{name} must be one-dimensional, got shape {array.shape}')
    if length is not None and len(array) != length:
        raise DataError(f'{name} has length {len(array)}, expected {length}')
    return array
