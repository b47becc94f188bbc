"""
Per-model estimation: least squares, logistic MLE and logistic pseudo-fits
"""

import logging

import numpy as np
from scipy.special import expit

from config import Config
from fma.errors import ConvergenceError, DataError, SeparationError
from fma.linalg import QRFactor, as_matrix, as_vector
from fma.model_space import augment
from models.candidate import CandidateModel
from models.fit import FitResult, LinearFullFit, ProbVector

logger = logging.getLogger(__name__)

# log(2*pi), for the Gaussian log-likelihood
_LOG_2PI = np.log(2.0 * np.pi)


def _model_for(model, dim):
    # a design passed without a model is treated as its own full model
    return model if model is not None else CandidateModel(tuple(), dim, 0)


def _describe(model):
    return model.to_dict() if model is not None else None


def gaussian_loglik(rss, n):
    """Profile Gaussian log-likelihood at the MLE variance rss/n"""
    sigma2 = max(rss / n, np.finfo(float).tiny)
    return float(-0.5 * n * (_LOG_2PI + np.log(sigma2) + 1.0))


def ols_fit(X_k, y, model=None, condition_limit=None):
    """Least-squares fit of one candidate design.

    Args:
        X_k: n x d design of the candidate (fixed columns first)
        y: response
        model: the CandidateModel the columns came from, used for augmentation
            and error reporting

    Returns:
        FitResult with the Gaussian log-likelihood used by AIC weights
    """
    X_k = as_matrix(X_k)
    y = as_vector(y, X_k.shape[0], name='y')
    model = _model_for(model, X_k.shape[1])
    if model.dim != X_k.shape[1]:
        raise DataError(f'model has {model.dim} coefficients, design has {X_k.shape[1]} columns')
    factor = QRFactor(X_k, model=model, condition_limit=condition_limit)
    beta = factor.solve(y)
    resid = y - X_k @ beta
    return FitResult(
        beta=beta,
        augmented=augment(beta, model),
        loglik=gaussian_loglik(float(resid @ resid), len(y)),
        dim=model.dim,
        model=model,
    )


def full_linear_fit(X, y, condition_limit=None):
    """Full-model fit with sigma2 = ||y - X beta||^2 / n"""
    X = as_matrix(X)
    y = as_vector(y, X.shape[0], name='y')
    beta = QRFactor(X, condition_limit=condition_limit).solve(y)
    fitted = X @ beta
    resid = y - fitted
    return LinearFullFit(beta_full=beta, sigma2=float(resid @ resid) / len(y), fitted=fitted)


def pseudo_true_linear(X_k, X, beta, condition_limit=None):
    """Population projection coefficients (X_k^T X_k)^{-1} X_k^T X beta"""
    X = as_matrix(X)
    X_k = as_matrix(X_k)
    beta = as_vector(beta, X.shape[1], name='beta')
    if X_k.shape[0] != X.shape[0]:
        raise DataError('X_k and X must have the same number of rows')
    return QRFactor(X_k, condition_limit=condition_limit).solve(X @ beta)


def logistic_prob(x, beta):
    """expit(x^T beta); x may be a single point or a matrix of rows"""
    return expit(np.asarray(x, dtype=float) @ np.asarray(beta, dtype=float))


def bernoulli_loglik(target, eta):
    """sum t*eta - log(1 + e^eta), the log-likelihood (cross-entropy for soft targets)"""
    return float(target @ eta - np.sum(np.logaddexp(0.0, eta)))


def _irls(X_k, target, model, max_iter, tol, bound, condition_limit):
    """Newton / IRLS with step halving on the Bernoulli log-likelihood.

    Each step solves the weighted least-squares problem
    min || W^{1/2} X d - W^{-1/2} (t - p) ||, i.e. d = (X^T W X)^{-1} X^T (t - p).
    """
    n, d = X_k.shape
    beta = np.zeros(d)
    eta = X_k @ beta
    loglik = bernoulli_loglik(target, eta)
    for iteration in range(1, max_iter + 1):
        p = expit(eta)
        score = X_k.T @ (target - p)
        score_norm = float(np.max(np.abs(score)))
        if score_norm <= tol:
            return beta, loglik, iteration - 1, score_norm
        w = p * (1.0 - p)
        if np.any(w <= 0.0):
            raise SeparationError('fitted probabilities reached 0 or 1', model=_describe(model), iterations=iteration)
        root_w = np.sqrt(w)
        factor = QRFactor(X_k * root_w[:, None], model=model, condition_limit=condition_limit)
        step = factor.solve((target - p) / root_w)

        # halve until the log-likelihood does not decrease (up to roundoff)
        slack = 1e-12 * (1.0 + abs(loglik))
        scale = 1.0
        for _ in range(40):
            candidate = beta + scale * step
            cand_eta = X_k @ candidate
            cand_loglik = bernoulli_loglik(target, cand_eta)
            if cand_loglik >= loglik - slack:
                break
            scale *= 0.5
        else:
            raise ConvergenceError('step halving failed to improve the log-likelihood',
                                   model=_describe(model), iterations=iteration)
        beta, eta, loglik = candidate, cand_eta, cand_loglik
        logger.debug('irls iteration %d: loglik=%.10g score=%.3g scale=%g', iteration, loglik, score_norm, scale)

        if np.max(np.abs(beta)) > bound:
            raise SeparationError(
                f'coefficient magnitude exceeded {bound:g}; the response looks separated',
                model=_describe(model), iterations=iteration)

    p = expit(eta)
    score_norm = float(np.max(np.abs(X_k.T @ (target - p))))
    if score_norm <= tol:
        return beta, loglik, max_iter, score_norm
    raise ConvergenceError(f'no convergence after {max_iter} iterations (score {score_norm:.3g})',
                           model=_describe(model), iterations=max_iter)


def _logistic_fit(X_k, target, model, max_iter, tol, bound, condition_limit):
    model = _model_for(model, X_k.shape[1])
    if model.dim != X_k.shape[1]:
        raise DataError(f'model has {model.dim} coefficients, design has {X_k.shape[1]} columns')
    max_iter = Config.FMA_IRLS_MAX_ITER if max_iter is None else max_iter
    tol = Config.FMA_IRLS_TOL if tol is None else tol
    bound = Config.FMA_SEPARATION_BOUND if bound is None else bound
    beta, loglik, iterations, score_norm = _irls(X_k, target, model, max_iter, tol, bound, condition_limit)
    return FitResult(
        beta=beta,
        augmented=augment(beta, model),
        loglik=loglik,
        dim=model.dim,
        converged=True,
        iterations=iterations,
        score_norm=score_norm,
        model=model,
    )


def logistic_mle(X_k, y, model=None, max_iter=None, tol=None, bound=None, condition_limit=None):
    """Maximum likelihood logistic fit of one candidate design.

    Raises SeparationError when the response is constant or the coefficients
    diverge past the separation bound.
    """
    X_k = as_matrix(X_k)
    y = as_vector(y, X_k.shape[0], name='y')
    if not np.all((y == 0.0) | (y == 1.0)):
        raise DataError('logistic response must be coded 0/1')
    if np.all(y == y[0]):
        raise SeparationError('response is constant; the logistic MLE does not exist',
                              model=_describe(model), iterations=0)
    return _logistic_fit(X_k, y, model, max_iter, tol, bound, condition_limit)


def logistic_pseudo_fit(X_k, p_target, model=None, max_iter=None, tol=None, bound=None, condition_limit=None):
    """Solve X_k^T (p_target - p_k) = 0 by IRLS.

    p_target is a ProbVector (or array of probabilities), typically the full
    model's fitted probabilities.
    """
    X_k = as_matrix(X_k)
    if not isinstance(p_target, ProbVector):
        p_target = ProbVector(p_target)
    if len(p_target) != X_k.shape[0]:
        raise DataError('p_target length must equal the number of rows')
    return _logistic_fit(X_k, p_target.probs, model, max_iter, tol, bound, condition_limit)
