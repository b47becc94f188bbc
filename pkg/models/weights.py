"""
Estimated-MSE quadratic form and weight solutions
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """Q = b b^T + A^T A over the candidate set.

    bias[k] is the estimated bias of model k's functional against the full fit,
    gram_factor column k is the variance factor a_k so that var entries are a_k . a_k'.
    """
    bias: np.ndarray
    gram_factor: np.ndarray
    matrix: np.ndarray

    @classmethod
    def assemble(cls, bias, gram_factor):
        bias = np.asarray(bias, dtype=float)
        gram_factor = np.asarray(gram_factor, dtype=float)
        matrix = np.outer(bias, bias) + gram_factor.T @ gram_factor
        # exact symmetry; the Gram product is symmetric only up to summation order
        matrix = 0.5 * (matrix + matrix.T)
        return cls(bias, gram_factor, matrix)

    @property
    def size(self):
        return len(self.bias)

    def variance_block(self):
        return self.gram_factor.T @ self.gram_factor

    def objective(self, weights):
        weights = np.asarray(weights, dtype=float)
        return float(weights @ self.matrix @ weights)

    def to_dict(self):
        """Convert to dictionary (the Gram factor is n x K and left out)"""
        return {'bias': self.bias.tolist(), 'matrix': self.matrix.tolist()}

    def __repr__(self):
        return f'<QuadraticForm K={self.size}>'


@dataclass(frozen=True, eq=False)
class WeightSolution:
    """Minimiser of w^T Q w over the probability simplex.

    kkt_residual is the Frank-Wolfe gap at the returned weights, an upper bound
    on the distance of the objective from the simplex minimum.
    """
    weights: np.ndarray
    objective: float
    iterations: int
    kkt_residual: float
    converged: bool = True

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'weights': self.weights.tolist(),
            'objective': self.objective,
            'iterations': self.iterations,
            'kkt_residual': self.kkt_residual,
            'converged': self.converged,
        }

    def __repr__(self):
        return f'<WeightSolution K={len(self.weights)} obj={self.objective:.4g}>'
