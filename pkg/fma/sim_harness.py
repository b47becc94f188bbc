"""
Seeded Monte Carlo studies of the averaged estimator against AIC weights and the oracle
"""

import logging
import math

import numpy as np
from scipy.special import expit

from config import Config
from fma.averaging import average_with, make_builder
from fma.errors import DataError, NumericalError
from fma.glm_fit import logistic_mle, ols_fit
from fma.model_space import nested_forward, nested_sequence, subset_columns, subset_point
from models.candidate import CandidateModel
from models.estimate import Functional
from models.study import StudyConfig, StudyReport, StudyRow
from utils.parallel import map_ordered
from utils.rng import derive_rng

logger = logging.getLogger(__name__)

# bias/variance study: 5 fixed + 5 optional coefficients
STUDY1_BETA = (0.3, 0.3, 0.5, 0.1, 0.5, 0.0, 0.6, 0.0, 0.1, 0.0)
STUDY1_P_FIXED = 5
STUDY1_N_GRID = tuple(range(100, 1001, 100))

# comparison study: intercept + 3 optional coefficients
STUDY2_LINEAR_X_STAR = (1.0, -1.855445, -1.018565, -1.045111)
STUDY2_LOGISTIC_X_STAR = (1.0, -1.86, -1.019, -1.045)
STUDY2_BETA3_GRID = (0.001, 0.005, 0.01, 0.05, 0.1, 0.5)
STUDY2_N = 100

CASES = ('A', 'B')


def study2_beta(beta3):
    return np.array([0.3, 0.1, 0.3, float(beta3)])


def study2_x_star(family):
    return np.array(STUDY2_LINEAR_X_STAR if family == 'linear' else STUDY2_LOGISTIC_X_STAR)


def truth_value(family, x_star, beta):
    """mu* = x*^T beta for linear, p* = expit(x*^T beta) for logistic"""
    eta = float(np.asarray(x_star, dtype=float) @ np.asarray(beta, dtype=float))
    return eta if family == 'linear' else float(expit(eta))


def study2_truth(family, beta3):
    return truth_value(family, study2_x_star(family), study2_beta(beta3))


def support_of(beta, p_fixed):
    """Candidate holding exactly the non-zero optional coefficients"""
    optional = np.asarray(beta, dtype=float)[p_fixed:]
    return CandidateModel(tuple(np.flatnonzero(optional != 0.0)), p_fixed, len(optional))


def study1_models(case):
    """Six nested models dropping from the front; case A adds the true-support model"""
    models = nested_sequence(STUDY1_P_FIXED, len(STUDY1_BETA) - STUDY1_P_FIXED)
    if case == 'A':
        models = models.with_model(support_of(STUDY1_BETA, STUDY1_P_FIXED))
    return models


def study2_models(case):
    """{b0}, {b0,b1}, {b0,b1,b2}, {b0,b1,b2,b3}; case B drops the last"""
    models = nested_forward(1, 3)
    return models if case == 'A' else models.take(3)


def functional_for(family, x_star):
    return Functional.linear_point(x_star) if family == 'linear' else Functional.logistic_point(x_star)


def oracle_estimate(X, y, true_support, functional):
    """Fit on exactly the true-support columns and evaluate the functional"""
    X_k = subset_columns(X, true_support)
    x_k = subset_point(functional.vector(true_support.full_dim), true_support)
    if functional.kind == 'logistic_point':
        fit = logistic_mle(X_k, y, model=true_support)
        return float(expit(x_k @ fit.beta))
    fit = ols_fit(X_k, y, model=true_support)
    return float(x_k @ fit.beta)


def error_metric(estimates, truth):
    """Root-mean-square deviation of the estimates from the truth"""
    estimates = np.asarray(estimates, dtype=float).ravel()
    if estimates.size == 0:
        raise DataError('error_metric needs at least one estimate')
    return math.sqrt(math.fsum((estimates - truth) ** 2) / estimates.size)


def summarize(estimates, truth):
    """Monte Carlo mean, squared bias, variance (divisor R) and MSE.

    truth is a scalar or one target per estimate. Bias and variance are taken
    over the errors estimate - truth, so mse = bias2 + variance either way.
    """
    estimates = np.asarray(estimates, dtype=float).ravel()
    if estimates.size == 0:
        raise DataError('cannot summarise an empty set of estimates')
    scalar_truth = np.ndim(truth) == 0
    truth = np.broadcast_to(np.asarray(truth, dtype=float), estimates.shape)
    size = estimates.size
    errors = estimates - truth
    mean_error = math.fsum(errors) / size
    variance = math.fsum((errors - mean_error) ** 2) / size
    mse = math.fsum(errors ** 2) / size
    return {
        'truth': float(truth[0]) if scalar_truth else math.fsum(truth) / size,
        'mean_estimate': math.fsum(estimates) / size,
        'error': math.sqrt(mse),
        'bias2': mean_error ** 2,
        'variance': variance,
        'mse': mse,
    }


def draw_dataset(config, replication):
    """Design and response for one replication.

    Streams depend on (seed, replication, n) only, so every case and beta3 value of a
    study sees the same designs and noise. A fixed design reuses replication 0.
    """
    design_rep = replication if config.redraw_design else 0
    design_rng = derive_rng(config.seed, design_rep, f'design:{config.n}')
    noise_rng = derive_rng(config.seed, replication, f'noise:{config.n}')
    p = len(config.beta_true)
    X = np.column_stack([np.ones(config.n), design_rng.standard_normal((config.n, p - 1))])
    eta = X @ config.beta_true
    if config.family == 'linear':
        y = eta + noise_rng.standard_normal(config.n)
    else:
        y = (noise_rng.random(config.n) < expit(eta)).astype(float)
    return X, y


def target_point(config, replication):
    """x* of one replication: the configured point, or a fresh (1, N(0, 1), ...) draw"""
    if not config.redraw_x_star:
        return config.x_star
    rng = derive_rng(config.seed, replication, 'x_star')
    return np.concatenate([[1.0], rng.standard_normal(len(config.beta_true) - 1)])


def _run_replication(task):
    config, replication = task
    X, y = draw_dataset(config, replication)
    x_star = target_point(config, replication)
    functional = functional_for(config.family, x_star)
    try:
        builder = make_builder(X, y, config.candidate_set, config.family)
        out = {}
        for scheme in config.schemes:
            if scheme == 'oracle':
                out[scheme] = oracle_estimate(X, y, config.true_support, functional)
            else:
                out[scheme] = average_with(builder, x_star, scheme).value
        return truth_value(config.family, x_star, config.beta_true), out
    except NumericalError as e:
        logger.warning('replication %d (n=%d, case %s) skipped: %s', replication, config.n, config.case, e)
        return None


def run_cells(configs, workers=1):
    """Run every replication of every config; returns per-config lists of (truth, scheme->estimate)"""
    tasks = [(config, r) for config in configs for r in range(config.n_reps)]
    results = map_ordered(_run_replication, tasks, workers=workers)
    grouped, offset = [], 0
    for config in configs:
        grouped.append(results[offset:offset + config.n_reps])
        offset += config.n_reps
    return grouped


def _add_rows(report, config, outcomes, beta3):
    kept = [o for o in outcomes if o is not None]
    failed = len(outcomes) - len(kept)
    if not kept:
        raise NumericalError(f'every replication failed for n={config.n}, case {config.case}')
    truths = [t for t, _ in kept]
    truth = truths if config.redraw_x_star else truths[0]
    for scheme in config.schemes:
        stats = summarize([o[scheme] for _, o in kept], truth)
        report.add(StudyRow(
            case=config.case, family=config.family, beta3=beta3, n=config.n, scheme=scheme,
            n_reps=len(kept), n_failed=failed, **stats,
        ))
    logger.info('cell %s n=%d beta3=%s: %d replications (%d failed)',
                config.case, config.n, beta3, len(kept), failed)


def run_study1(n_grid=STUDY1_N_GRID, cases=CASES, n_reps=None, seed=None, redraw_design=True,
               redraw_x_star=False, workers=1):
    """Squared bias, variance and MSE of the averaged and oracle estimators across n.

    x* is one N(0, 1) draw for the whole study, or a fresh draw per replication
    with redraw_x_star; then the reported truth is the mean target and bias and
    variance are those of the estimation error.
    """
    n_reps = Config.FMA_REPS if n_reps is None else n_reps
    seed = Config.FMA_SEED if seed is None else seed
    beta = np.array(STUDY1_BETA)
    x_rng = derive_rng(seed, 0, 'x_star')
    x_star = np.concatenate([[1.0], x_rng.standard_normal(len(beta) - 1)])
    true_support = support_of(beta, STUDY1_P_FIXED)
    configs = [
        StudyConfig(family='linear', n=n, beta_true=beta, candidate_set=study1_models(case), x_star=x_star,
                    n_reps=n_reps, seed=seed, schemes=('optimal', 'oracle'), true_support=true_support,
                    redraw_design=redraw_design, case=case, redraw_x_star=redraw_x_star)
        for case in cases for n in n_grid
    ]
    report = StudyReport('study1', seed=seed)
    for config, outcomes in zip(configs, run_cells(configs, workers)):
        _add_rows(report, config, outcomes, None)
    return report


def run_study2(family='linear', beta3_grid=STUDY2_BETA3_GRID, cases=CASES, schemes=('optimal', 'aic'),
               oracle=True, n=STUDY2_N, n_reps=None, seed=None, redraw_design=True, workers=1):
    """Averaged estimator against AIC weights (and the oracle) over the beta3 grid"""
    if family not in ('linear', 'logistic'):
        raise DataError(f'unknown family {family!r}')
    n_reps = Config.FMA_REPS if n_reps is None else n_reps
    seed = Config.FMA_SEED if seed is None else seed
    schemes = tuple(schemes) + (('oracle',) if oracle and 'oracle' not in schemes else ())
    x_star = study2_x_star(family)
    configs = []
    for case in cases:
        for beta3 in beta3_grid:
            beta = study2_beta(beta3)
            configs.append(StudyConfig(
                family=family, n=n, beta_true=beta, candidate_set=study2_models(case), x_star=x_star,
                n_reps=n_reps, seed=seed, schemes=schemes, true_support=support_of(beta, 1),
                redraw_design=redraw_design, case=case,
            ))
    report = StudyReport(f'study2-{family}', seed=seed)
    for config, outcomes in zip(configs, run_cells(configs, workers)):
        _add_rows(report, config, outcomes, float(config.beta_true[-1]))
    return report
