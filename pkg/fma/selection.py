"""
Best-subset baseline and the paired cross-validated method comparison
"""

import logging
import math

import numpy as np
from sklearn.model_selection import KFold

from config import Config
from fma.averaging import predict_many
from fma.datasets import split
from fma.errors import DataError, SingularDesignError
from fma.glm_fit import ols_fit
from fma.model_space import enumerate_all_subsets, subset_columns
from models.dataset import CvReport
from utils.parallel import map_ordered
from utils.rng import SeededStreams, derive_rng

logger = logging.getLogger(__name__)

METHODS = ('avg_optimal', 'avg_aic', 'best_subset', 'full_model')
KNOWN_METHODS = METHODS + ('avg_equal',)
SELECTORS = ('cv', 'aic')

# the prostate analysis trains on 67 of 97 rows
TRAIN_FRACTION = 67 / 97


def default_n_train(n):
    return min(max(int(round(n * TRAIN_FRACTION)), 1), n - 1)


def _ols_predict(X_train, y_train, X_test, model):
    fit = ols_fit(subset_columns(X_train, model), y_train, model=model)
    return subset_columns(X_test, model) @ fit.beta


def _cv_score(X, y, model, folds):
    sse = 0.0
    for train_idx, val_idx in folds:
        pred = _ols_predict(X[train_idx], y[train_idx], X[val_idx], model)
        sse += float(np.sum((y[val_idx] - pred) ** 2))
    return sse / len(y)


def _score_or_inf(score, model):
    try:
        return score(model)
    except SingularDesignError:
        logger.debug('skipping singular candidate %s', list(model.included))
        return math.inf


def select_subset(train, select_by='cv', n_folds=None, rng=None):
    """All-subsets search over the non-intercept columns of the training data.

    'cv' minimises k-fold cross-validated squared error inside the training set,
    'aic' minimises the Gaussian AIC of the training fit. Ties keep the first model
    in enumeration order.
    """
    if select_by not in SELECTORS:
        raise DataError(f'unknown selector {select_by!r}; expected one of {SELECTORS}')
    models = enumerate_all_subsets(1, train.d - 1)
    X, y = train.design, train.response
    if select_by == 'aic':
        scores = [_score_or_inf(lambda m: ols_fit(subset_columns(X, m), y, model=m).aic(), m) for m in models]
    else:
        n_folds = Config.FMA_CV_FOLDS if n_folds is None else n_folds
        rng = derive_rng(0, 0, 'folds') if rng is None else rng
        kfold = KFold(n_splits=min(n_folds, len(y)), shuffle=True, random_state=int(rng.integers(2 ** 31)))
        folds = list(kfold.split(X))
        scores = [_score_or_inf(lambda m: _cv_score(X, y, m, folds), m) for m in models]
    if not np.isfinite(np.min(scores)):
        raise SingularDesignError('every candidate subset has a singular training design')
    best = models[int(np.argmin(scores))]
    logger.debug('best subset by %s: %s', select_by, best.describe(train.column_names))
    return best


def _predict(method, train, test, models, select_by, n_folds, fold_rng):
    X, y = train.design, train.response
    if method.startswith('avg_'):
        scheme = method[len('avg_'):]
        return np.array([est.value for est in predict_many(X, y, models, test.design, scheme)])
    if method == 'best_subset':
        model = select_subset(train, select_by, n_folds, fold_rng)
        return _ols_predict(X, y, test.design, model)
    if method == 'full_model':
        return test.design @ ols_fit(X, y).beta
    raise DataError(f'unknown method {method!r}; expected one of {KNOWN_METHODS}')


def _cv_repeat(task):
    dataset, methods, n_train, split_seed, seed, repeat, models, select_by, n_folds = task
    train, test = split(dataset, n_train, split_seed)
    errors = {}
    for method in methods:
        pred = _predict(method, train, test, models, select_by, n_folds, derive_rng(seed, repeat, 'folds'))
        errors[method] = float(np.mean((test.response - pred) ** 2))
    return errors


def cv_compare(dataset, methods=METHODS, n_repeats=None, seed=None, n_train=None, models=None,
               select_by='cv', n_folds=None, workers=1):
    """Mean test-set squared error of each method over shared random splits.

    Every method sees the same split within a repeat; the model averaging methods
    choose weights separately for each test row.
    """
    if dataset.family != 'linear':
        raise DataError('the cross-validation pipeline supports the linear family only')
    unknown = [m for m in methods if m not in KNOWN_METHODS]
    if unknown:
        raise DataError(f'unknown methods {unknown}; expected some of {KNOWN_METHODS}')
    n_repeats = Config.FMA_CV_REPEATS if n_repeats is None else n_repeats
    seed = Config.FMA_SEED if seed is None else seed
    n_train = default_n_train(dataset.n) if n_train is None else n_train
    models = enumerate_all_subsets(1, dataset.d - 1) if models is None else models
    streams = SeededStreams(seed)
    split_seeds = [streams.child_seed(r, 'split') for r in range(n_repeats)]
    tasks = [(dataset, tuple(methods), n_train, split_seeds[r], seed, r, models, select_by, n_folds)
             for r in range(n_repeats)]
    results = map_ordered(_cv_repeat, tasks, workers=workers)
    per_repeat = {m: [res[m] for res in results] for m in methods}
    for r, res in enumerate(results):
        logger.info('repeat %d (split seed %d): %s', r, split_seeds[r],
                    ', '.join(f'{m}={e:.4f}' for m, e in res.items()))
    errors = {m: math.fsum(v) / len(v) for m, v in per_repeat.items()}
    return CvReport(errors, per_repeat, n_train, dataset.n - n_train, seed, split_seeds)


def best_subset_cv(dataset, n_repeats=None, seed=None, n_train=None, select_by='cv', n_folds=None):
    """Mean test error of all-subsets selection over random splits"""
    report = cv_compare(dataset, methods=('best_subset',), n_repeats=n_repeats, seed=seed,
                        n_train=n_train, select_by=select_by, n_folds=n_folds)
    return report.errors['best_subset']
