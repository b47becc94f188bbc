"""
Model averaging estimators, per-row predictions and prediction bands
"""

import logging

import numpy as np

from config import Config
from fma.errors import DataError
from fma.linalg import as_matrix, as_vector
from fma.model_space import enumerate_all_subsets
from fma.mse_weights import (
    SCHEMES, LinearQBuilder, LogisticQBuilder, aic_weights, equal_weights, solve_simplex_qp,
)
from models.estimate import AveragedEstimate, PredictionBand
from utils.parallel import map_ordered
from utils.rng import derive_rng

logger = logging.getLogger(__name__)

SIMPLEX_SLACK = 1e-9


def average_estimate(weights, per_model):
    """sum_k w_k mu_k for simplex weights"""
    weights = as_vector(weights, name='weights')
    per_model = as_vector(per_model, len(weights), name='per_model')
    if np.any(weights < -SIMPLEX_SLACK) or abs(weights.sum() - 1.0) > SIMPLEX_SLACK:
        raise DataError('weights must lie on the probability simplex')
    return float(weights @ per_model)


def make_builder(X, y, models, family='linear'):
    """Fit every candidate once for the given family"""
    if family == 'linear':
        return LinearQBuilder(X, y, models)
    if family == 'logistic':
        return LogisticQBuilder(X, y, models)
    raise DataError(f'unknown family {family!r}')


def scheme_weights(builder, x_star, scheme):
    """Weights for one target point; Q-hat and the solution only for the optimal scheme"""
    if scheme == 'optimal':
        q_hat = builder.build(x_star)
        solution = solve_simplex_qp(q_hat)
        return solution.weights, q_hat, solution
    if scheme == 'aic':
        return aic_weights(builder.fits), None, None
    if scheme == 'equal':
        return equal_weights(len(builder.models)), None, None
    raise DataError(f'unknown weighting scheme {scheme!r}; expected one of {SCHEMES}')


def average_with(builder, x_star, scheme='optimal'):
    """Averaged estimate at x_star from an already fitted builder"""
    per_model = builder.values(x_star)
    weights, q_hat, solution = scheme_weights(builder, x_star, scheme)
    return AveragedEstimate(
        value=average_estimate(weights, per_model),
        weights=weights,
        per_model=per_model,
        scheme=scheme,
        q_hat=q_hat,
        solution=solution,
        models=builder.models,
    )


def fit_and_average_linear(X, y, models, functional, scheme='optimal'):
    """Averaged estimate of x*^T beta (or one coefficient) in linear regression"""
    if functional.kind not in ('linear_point', 'coordinate'):
        raise DataError(f'linear averaging needs a linear_point or coordinate functional, got {functional.kind}')
    builder = LinearQBuilder(X, y, models)
    return average_with(builder, functional.vector(models.full_dim), scheme)


def fit_and_average_logistic(X, y, models, functional, scheme='optimal'):
    """Averaged estimate of expit(x*^T beta) in logistic regression"""
    if functional.kind != 'logistic_point':
        raise DataError(f'logistic averaging needs a logistic_point functional, got {functional.kind}')
    builder = LogisticQBuilder(X, y, models)
    return average_with(builder, functional.vector(models.full_dim), scheme)


def predict_many(X_train, y_train, models, X_test, scheme='optimal', family='linear'):
    """One averaged estimate per test row, each with its own weights (x* = the row)"""
    X_test = as_matrix(X_test, name='test design')
    builder = make_builder(X_train, y_train, models, family)
    return [average_with(builder, row, scheme) for row in X_test]


def default_models(design):
    """All subsets of the non-intercept columns"""
    design = as_matrix(design)
    return enumerate_all_subsets(1, design.shape[1] - 1)


def _band_replication(task):
    X_pool, y_pool, X_test, models, n_sub, sigma, seed, replication, scheme = task
    rng = derive_rng(seed, replication, 'band')
    rows = rng.choice(len(y_pool), size=n_sub, replace=False)
    builder = LinearQBuilder(X_pool[rows], y_pool[rows], models)
    means = np.array([average_with(builder, row, scheme).value for row in X_test])
    noise = rng.normal(0.0, sigma, size=len(means))
    return means, means + noise


def prediction_bands(X_pool, y_pool, X_test, models=None, n_sub=None, n_reps=None, sigma=0.0,
                     level=None, seed=None, scheme='optimal', workers=1):
    """Quantile bands for several test rows sharing the same sub-samples.

    Each replication draws n_sub pool rows without replacement, averages over the
    candidates for every test row and adds one N(0, sigma^2) draw per row.
    """
    X_pool = as_matrix(X_pool, name='pool design')
    y_pool = as_vector(y_pool, X_pool.shape[0], name='pool response')
    X_test = as_matrix(X_test, name='test design')
    models = default_models(X_pool) if models is None else models
    n_sub = Config.FMA_BAND_SUBSAMPLE if n_sub is None else n_sub
    n_reps = Config.FMA_BAND_REPS if n_reps is None else n_reps
    level = Config.FMA_BAND_LEVEL if level is None else level
    seed = Config.FMA_SEED if seed is None else seed
    if n_sub > len(y_pool):
        raise DataError(f'pool of {len(y_pool)} rows is too small for sub-samples of {n_sub}')
    if not 0.0 < level < 1.0:
        raise DataError('level must lie strictly between 0 and 1')
    if n_reps < 1 or sigma < 0.0:
        raise DataError('n_reps must be positive and sigma non-negative')

    tasks = [(X_pool, y_pool, X_test, models, n_sub, sigma, seed, r, scheme) for r in range(n_reps)]
    results = map_ordered(_band_replication, tasks, workers=workers)
    means = np.array([r[0] for r in results])
    draws = np.array([r[1] for r in results])
    point = means.mean(axis=0)
    # plotting positions p(m + 1): a fresh draw lands between them with probability level
    lower, upper = np.quantile(draws, [(1.0 - level) / 2.0, (1.0 + level) / 2.0], axis=0, method='weibull')
    logger.debug('prediction bands: %d rows, %d replications', len(point), n_reps)
    return [PredictionBand(float(p), float(lo), float(hi), level) for p, lo, hi in zip(point, lower, upper)]


def prediction_band(X_pool, y_pool, test_point, models=None, n_sub=None, n_reps=None, sigma=0.0,
                    level=None, seed=None, scheme='optimal', workers=1):
    """Band for a single test row"""
    test_point = as_vector(test_point, name='test point')
    return prediction_bands(X_pool, y_pool, test_point[None, :], models, n_sub, n_reps, sigma,
                            level, seed, scheme, workers)[0]
