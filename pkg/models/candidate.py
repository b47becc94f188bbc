"""
Candidate model types: index sets over optional coefficients
"""

import json
from dataclasses import dataclass, field

import numpy as np

from fma.errors import DataError


@dataclass(frozen=True)
class CandidateModel:
    """One candidate: all p_fixed leading coefficients plus a subset of the q optional ones.

    `included` holds optional-coefficient indices in [0, q), strictly increasing.
    Column j of the full design maps to optional index j - p_fixed.
    """
    included: tuple
    p_fixed: int
    q: int

    def __post_init__(self):
        included = tuple(int(i) for i in self.included)
        object.__setattr__(self, 'included', included)
        if self.p_fixed < 0 or self.q < 0:
            raise DataError('p_fixed and q must be non-negative')
        if any(b <= a for a, b in zip(included, included[1:])):
            raise DataError(f'included indices must be strictly increasing: {included}')
        if included and (included[0] < 0 or included[-1] >= self.q):
            raise DataError(f'included indices must lie in [0, {self.q}): {included}')
        if self.dim < 1:
            raise DataError('a candidate model needs at least one coefficient')

    @property
    def m(self):
        """Number of optional coefficients in the model"""
        return len(self.included)

    @property
    def dim(self):
        return self.p_fixed + len(self.included)

    @property
    def full_dim(self):
        return self.p_fixed + self.q

    @property
    def columns(self):
        """Column positions in the full design, fixed block first"""
        return np.array(list(range(self.p_fixed)) + [self.p_fixed + i for i in self.included], dtype=int)

    def is_full(self):
        return self.m == self.q

    def contains(self, other):
        """True when every optional coefficient of `other` is also in this model"""
        return set(other.included) <= set(self.included)

    def describe(self, column_names=None):
        """Human-readable list of the model's columns"""
        if column_names is None:
            return '{' + ','.join(str(c) for c in self.columns) + '}'
        return '{' + ', '.join(column_names[c] for c in self.columns) + '}'

    @classmethod
    def from_columns(cls, names, column_names, p_fixed):
        """Build a model from optional column names of a dataset"""
        optional = list(column_names[p_fixed:])
        try:
            included = sorted(optional.index(name) for name in names)
        except ValueError as e:
            raise DataError(f'unknown optional column in {list(names)}') from e
        return cls(tuple(included), p_fixed, len(optional))

    def to_dict(self):
        """Convert to dictionary"""
        return {'p_fixed': self.p_fixed, 'q': self.q, 'included': list(self.included)}

    def __repr__(self):
        return f'<CandidateModel p={self.p_fixed} {list(self.included)}/{self.q}>'


@dataclass(frozen=True)
class ModelSet:
    """Ordered, duplicate-free collection of candidates sharing p_fixed and q"""
    models: tuple
    q: int = field(default=None)

    def __post_init__(self):
        models = tuple(self.models)
        object.__setattr__(self, 'models', models)
        if not models:
            raise DataError('a model set must contain at least one model')
        q = models[0].q if self.q is None else self.q
        object.__setattr__(self, 'q', q)
        p_fixed = models[0].p_fixed
        seen = set()
        for model in models:
            if model.q != q or model.p_fixed != p_fixed:
                raise DataError('all models in a set must share p_fixed and q')
            if model.included in seen:
                raise DataError(f'duplicate candidate model {list(model.included)}')
            seen.add(model.included)

    @property
    def p_fixed(self):
        return self.models[0].p_fixed

    @property
    def full_dim(self):
        return self.p_fixed + self.q

    def __len__(self):
        return len(self.models)

    def __iter__(self):
        return iter(self.models)

    def __getitem__(self, index):
        return self.models[index]

    def take(self, count):
        """The first `count` models as a new set"""
        return ModelSet(self.models[:count], self.q)

    def with_model(self, model):
        """Append a model unless it is already present"""
        if any(m.included == model.included for m in self.models):
            return self
        return ModelSet(self.models + (model,), self.q)

    def to_jsonl(self):
        """One JSON object per line: {"p_fixed", "q", "included"}"""
        return ''.join(json.dumps(model.to_dict()) + '\n' for model in self.models)

    @classmethod
    def from_jsonl(cls, text):
        models = []
        for line_no, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                models.append(CandidateModel(tuple(record['included']), int(record['p_fixed']), int(record['q'])))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise DataError(f'invalid model record on line {line_no}: {e}') from e
        return cls(tuple(models))

    def to_dict(self):
        """Convert to dictionary"""
        return {
            'p_fixed': self.p_fixed,
            'q': self.q,
            'models': [list(model.included) for model in self.models],
        }

    def __repr__(self):
        return f'<ModelSet {len(self.models)} models p={self.p_fixed} q={self.q}>'


@dataclass(frozen=True, eq=False)
class AugmentedVector:
    """Full-length coefficient vector; coordinates absent from the source model hold `fill`"""
    values: np.ndarray
    fill: float = 0.0

    def to_dict(self):
        """Convert to dictionary"""
        return {'values': self.values.tolist(), 'fill': self.fill}

    def __repr__(self):
        return f'<AugmentedVector len={len(self.values)} fill={self.fill}>'
