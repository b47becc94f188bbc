"""
Per-model fit results
"""

from dataclasses import dataclass

import numpy as np

from fma.errors import DataError


@dataclass(frozen=True, eq=False)
class FitResult:
    """Coefficients of one candidate fit plus what the weighting schemes need"""
    beta: np.ndarray
    augmented: object          # AugmentedVector
    loglik: float
    dim: int
    converged: bool = True
    iterations: int = 0
    score_norm: float = 0.0
    model: object = None       # CandidateModel

    def aic(self):
        return -2.0 * self.loglik + 2.0 * self.dim

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'model': self.model.to_dict() if self.model is not None else None,
            'beta': self.beta.tolist(),
            'augmented': self.augmented.values.tolist(),
            'loglik': self.loglik,
            'dim': self.dim,
            'converged': self.converged,
            'iterations': self.iterations,
            'score_norm': self.score_norm,
        }

    def __repr__(self):
        return f'<FitResult dim={self.dim} loglik={self.loglik:.4g} it={self.iterations}>'


@dataclass(frozen=True, eq=False)
class LinearFullFit:
    """Full-model least squares fit; sigma2 uses divisor n"""
    beta_full: np.ndarray
    sigma2: float
    fitted: np.ndarray

    @property
    def sigma(self):
        return float(np.sqrt(self.sigma2))

    def to_dict(self):
        """Convert to dictionary"""
        return {'beta_full': self.beta_full.tolist(), 'sigma2': self.sigma2}

    def __repr__(self):
        return f'<LinearFullFit sigma={self.sigma:.4g}>'


@dataclass(frozen=True, eq=False)
class ProbVector:
    """Probabilities strictly inside (0, 1)"""
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 1 or not np.all((probs > 0.0) & (probs < 1.0)):
            raise DataError('target probabilities must be a vector with entries in (0, 1)')
        object.__setattr__(self, 'probs', probs)

    @property
    def variance(self):
        """Bernoulli variances p(1 - p), the diagonal of W"""
        return self.probs * (1.0 - self.probs)

    def __len__(self):
        return len(self.probs)
