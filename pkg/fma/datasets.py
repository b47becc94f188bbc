"""
CSV ingestion, serialisation and train/test splitting
"""

import logging

import numpy as np
import pandas as pd

from fma.errors import DataError
from models.dataset import Dataset
from utils.reports import write_atomic
from utils.rng import derive_rng

logger = logging.getLogger(__name__)


def _parse_column(frame, name):
    """Column as floats; blank or non-numeric cells are DataErrors naming the row"""
    values = np.empty(len(frame))
    for row, cell in enumerate(frame[name]):
        text = cell.strip()
        if not text:
            raise DataError(f'missing value at row {row + 2}, column {name!r}', row=row + 2, column=name)
        try:
            values[row] = float(text)
        except ValueError:
            raise DataError(f'non-numeric value {text!r} at row {row + 2}, column {name!r}',
                            row=row + 2, column=name) from None
    if not np.all(np.isfinite(values)):
        raise DataError(f'non-finite value in column {name!r}', column=name)
    return values


def load_csv(path, response_column, family='linear', feature_columns=None, exclude_columns=(), sep=','):
    """Read a delimited file with a header row into a Dataset.

    Every non-response column (or just `feature_columns`) becomes a predictor; an
    all-ones intercept column is prepended. Ordered categories are read as numbers.
    Row numbers in errors count the header as row 1.
    """
    try:
        frame = pd.read_csv(path, sep=sep, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataError(f'could not read {path}: {e}') from e
    frame.columns = [str(c).strip() for c in frame.columns]
    if response_column not in frame.columns:
        raise DataError(f'response column {response_column!r} not found in {list(frame.columns)}',
                        column=response_column)
    if feature_columns is None:
        feature_columns = [c for c in frame.columns if c != response_column and c not in exclude_columns]
    missing = [c for c in feature_columns if c not in frame.columns]
    if missing:
        raise DataError(f'feature columns not found: {missing}', column=missing[0])
    if not feature_columns:
        raise DataError('no feature columns to model')
    features = np.column_stack([_parse_column(frame, c) for c in feature_columns])
    response = _parse_column(frame, response_column)
    design = np.column_stack([np.ones(len(frame)), features])
    dataset = Dataset(response, design, ['intercept', *feature_columns], family, response_column)
    logger.info('loaded %s: n=%d, %d predictors', path, dataset.n, dataset.d - 1)
    return dataset


def save_csv(dataset, path):
    """Write predictors and response (no intercept) so that load_csv reads them back exactly"""
    frame = pd.DataFrame(dataset.design[:, 1:], columns=list(dataset.feature_names))
    frame[dataset.response_name] = dataset.response
    write_atomic(path, frame.to_csv(index=False, lineterminator='\n'))


def split_indices(n, n_train, seed):
    """Sorted train/test row indices of a uniform split without replacement"""
    if not 0 < n_train < n:
        raise DataError(f'n_train must lie in [1, {n - 1}], got {n_train}')
    perm = derive_rng(seed, 0, 'split').permutation(n)
    return np.sort(perm[:n_train]), np.sort(perm[n_train:])


def split(dataset, n_train, seed):
    """Train/test datasets, deterministic in seed"""
    train_rows, test_rows = split_indices(dataset.n, n_train, seed)
    return dataset.take(train_rows), dataset.take(test_rows)
