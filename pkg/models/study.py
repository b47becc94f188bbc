"""
Simulation study configuration and report rows
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from fma.errors import DataError

REPORT_COLUMNS = [
    'case', 'family', 'beta3', 'n', 'scheme', 'truth',
    'mean_estimate', 'error', 'bias2', 'variance', 'mse',
]


@dataclass(frozen=True, eq=False)
class StudyConfig:
    """One Monte Carlo cell design"""
    family: str
    n: int
    beta_true: np.ndarray
    candidate_set: object        # ModelSet
    x_star: np.ndarray
    n_reps: int
    seed: int
    schemes: tuple = ('optimal',)
    true_support: object = None  # CandidateModel for the oracle
    redraw_design: bool = True
    case: str = 'A'
    redraw_x_star: bool = False

    def __post_init__(self):
        if self.family not in ('linear', 'logistic'):
            raise DataError(f'unknown family {self.family!r}')
        beta = np.asarray(self.beta_true, dtype=float)
        object.__setattr__(self, 'beta_true', beta)
        object.__setattr__(self, 'x_star', np.asarray(self.x_star, dtype=float))
        if len(beta) != self.candidate_set.full_dim:
            raise DataError('beta_true length must equal p_fixed + q')
        largest = max(model.dim for model in self.candidate_set)
        if self.n < largest + 1:
            raise DataError(f'n={self.n} too small for a model of dimension {largest}')
        if self.n_reps < 1:
            raise DataError('n_reps must be at least 1')


@dataclass
class StudyRow:
    """Monte Carlo summary of one estimator in one cell"""
    case: str
    family: str
    beta3: float
    n: int
    scheme: str
    truth: float
    mean_estimate: float
    error: float
    bias2: float
    variance: float
    mse: float
    n_reps: int = 0
    n_failed: int = 0

    def to_dict(self):
        """Convert to dictionary"""
        return asdict(self)


@dataclass
class StudyReport:
    """Rows of a study, one per (case, beta3, n, scheme)"""
    name: str
    rows: list = field(default_factory=list)
    seed: int = None

    def add(self, row):
        self.rows.append(row)

    def select(self, **criteria):
        return [row for row in self.rows
                if all(getattr(row, key) == value for key, value in criteria.items())]

    def cell(self, **criteria):
        """The single row matching the criteria"""
        matches = self.select(**criteria)
        if len(matches) != 1:
            raise KeyError(f'{len(matches)} rows match {criteria}')
        return matches[0]

    def to_records(self):
        return [row.to_dict() for row in self.rows]

    def to_dict(self):
        """Convert to dictionary"""
        return {'study': self.name, 'seed': self.seed, 'columns': REPORT_COLUMNS, 'rows': self.to_records()}

    def __repr__(self):
        return f'<StudyReport {self.name} rows={len(self.rows)}>'
