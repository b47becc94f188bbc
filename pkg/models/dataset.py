"""
Datasets and cross-validation reports
"""

from dataclasses import dataclass, field

import numpy as np

from fma.errors import DataError


@dataclass(frozen=True, eq=False)
class Dataset:
    """Response plus a design whose first column is the intercept"""
    response: np.ndarray
    design: np.ndarray
    column_names: tuple
    family: str = 'linear'
    response_name: str = 'y'

    def __post_init__(self):
        design = np.asarray(self.design, dtype=float)
        response = np.asarray(self.response, dtype=float)
        object.__setattr__(self, 'design', design)
        object.__setattr__(self, 'response', response)
        object.__setattr__(self, 'column_names', tuple(self.column_names))
        if design.ndim != 2 or response.ndim != 1 or design.shape[0] != len(response):
            raise DataError(f'design {design.shape} and response {response.shape} do not conform')
        if design.shape[1] != len(self.column_names):
            raise DataError('column_names must name every design column')
        if not (np.all(np.isfinite(design)) and np.all(np.isfinite(response))):
            raise DataError('dataset contains missing or non-finite values')
        if design.shape[1] == 0 or not np.all(design[:, 0] == 1.0):
            raise DataError('the first design column must be an all-ones intercept')
        if self.family not in ('linear', 'logistic'):
            raise DataError(f'unknown family {self.family!r}')
        if self.family == 'logistic' and not np.all((response == 0.0) | (response == 1.0)):
            raise DataError('logistic response must be coded 0/1')

    @property
    def n(self):
        return self.design.shape[0]

    @property
    def d(self):
        return self.design.shape[1]

    @property
    def feature_names(self):
        return self.column_names[1:]

    def take(self, indices):
        """Row subset as a new dataset"""
        indices = np.asarray(indices, dtype=int)
        return Dataset(self.response[indices], self.design[indices], self.column_names,
                       self.family, self.response_name)

    def __repr__(self):
        return f'<Dataset n={self.n} d={self.d} {self.family}>'


@dataclass
class CvReport:
    """Paired prediction errors of several methods over shared random splits"""
    errors: dict
    per_repeat: dict
    n_train: int
    n_test: int
    seed: int
    split_seeds: list = field(default_factory=list)

    def ranking(self):
        return sorted(self.errors, key=self.errors.get)

    def rows(self):
        """One row per (repeat, method) plus the mean rows"""
        out = []
        for method, errors in self.per_repeat.items():
            for repeat, error in enumerate(errors):
                out.append({'method': method, 'repeat': repeat, 'error': error})
            out.append({'method': method, 'repeat': 'mean', 'error': self.errors[method]})
        return out

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'errors': self.errors,
            'per_repeat': self.per_repeat,
            'n_train': self.n_train,
            'n_test': self.n_test,
            'seed': self.seed,
            'split_seeds': self.split_seeds,
        }

    def __repr__(self):
        return f'<CvReport {self.errors}>'
