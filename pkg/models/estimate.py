"""
Functionals, averaged estimates and prediction bands
"""

from dataclasses import dataclass

import numpy as np

from fma.errors import DataError

FUNCTIONAL_KINDS = ('linear_point', 'logistic_point', 'coordinate')


@dataclass(frozen=True, eq=False)
class Functional:
    """Target of estimation: x*^T beta, expit(x*^T beta), or a single coefficient"""
    kind: str
    x_star: np.ndarray = None
    index: int = None

    def __post_init__(self):
        if self.kind not in FUNCTIONAL_KINDS:
            raise DataError(f'unknown functional kind {self.kind!r}')
        if self.kind == 'coordinate':
            if self.index is None or self.index < 0:
                raise DataError('coordinate functional needs a non-negative index')
        else:
            if self.x_star is None:
                raise DataError(f'{self.kind} functional needs x_star')
            object.__setattr__(self, 'x_star', np.asarray(self.x_star, dtype=float).ravel())

    @classmethod
    def linear_point(cls, x_star):
        return cls('linear_point', x_star=x_star)

    @classmethod
    def logistic_point(cls, x_star):
        return cls('logistic_point', x_star=x_star)

    @classmethod
    def coordinate(cls, index):
        try:
            index = int(index)
        except (TypeError, ValueError):
            raise DataError(f'coordinate must be an integer index, got {index!r}') from None
        return cls('coordinate', index=index)

    def vector(self, full_dim):
        """The x* row this functional evaluates; a unit vector for coordinates"""
        if self.kind == 'coordinate':
            if self.index >= full_dim:
                raise DataError(f'coordinate {self.index} out of range for {full_dim} coefficients')
            x = np.zeros(full_dim)
            x[self.index] = 1.0
            return x
        if len(self.x_star) != full_dim:
            raise DataError(f'x_star has length {len(self.x_star)}, expected {full_dim}')
        return self.x_star

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'kind': self.kind,
            'x_star': self.x_star.tolist() if self.x_star is not None else None,
            'index': self.index,
        }


@dataclass(frozen=True, eq=False)
class AveragedEstimate:
    """Weighted combination of per-model functional values"""
    value: float
    weights: np.ndarray
    per_model: np.ndarray
    scheme: str = 'optimal'
    q_hat: object = None         # QuadraticForm, optimal scheme only
    solution: object = None      # WeightSolution, optimal scheme only
    models: object = None        # ModelSet

    def top_models(self, count=3, column_names=None):
        """Most-weighted candidates as (description, weight) pairs"""
        order = np.argsort(-self.weights, kind='stable')[:count]
        return [(self.models[k].describe(column_names), float(self.weights[k])) for k in order]

    def to_dict(self, include_q=False):
        """Convert to dictionary"""
        data = {
            'value': self.value,
            'scheme': self.scheme,
            'weights': self.weights.tolist(),
            'per_model': self.per_model.tolist(),
        }
        if self.models is not None:
            data['models'] = [list(m.included) for m in self.models]
        if self.solution is not None:
            data['solution'] = self.solution.to_dict()
        if include_q and self.q_hat is not None:
            data['q_hat'] = self.q_hat.to_dict()
        return data

    def __repr__(self):
        return f'<AveragedEstimate {self.scheme} value={self.value:.4g}>'


@dataclass(frozen=True)
class PredictionBand:
    """Replication-quantile band around an averaged prediction"""
    point: float
    lower: float
    upper: float
    level: float

    def covers(self, value):
        return self.lower <= value <= self.upper

    def to_dict(self):
        """Convert to dictionary"""
        return {'point': self.point, 'lower': self.lower, 'upper': self.upper, 'level': self.level}
