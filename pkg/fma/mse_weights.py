"""
Estimated asymptotic MSE of the averaged estimator and weight selection
"""

import logging

import numpy as np
from scipy.special import expit

from config import Config
from fma.errors import DataError, NumericalError
from fma.glm_fit import full_linear_fit, gaussian_loglik, logistic_mle, logistic_pseudo_fit
from fma.linalg import QRFactor, as_matrix, as_vector
from fma.model_space import augment, full_model, subset_columns
from models.fit import FitResult
from models.weights import QuadraticForm, WeightSolution

logger = logging.getLogger(__name__)

SCHEMES = ('optimal', 'aic', 'equal')

# projected-gradient iterations spent choosing the active-set starting point
WARM_START_ITER = 100


def _check_design(X, y, models):
    X = as_matrix(X)
    y = as_vector(y, X.shape[0], name='y')
    if X.shape[1] != models.full_dim:
        raise DataError(f'design has {X.shape[1]} columns, model set expects {models.full_dim}')
    return X, y


class LinearQBuilder:
    """Fits every candidate once; builds Q-hat for any number of target points.

    Q-hat entries are (x*_k b_k - x* b_full)(x*_k' b_k' - x* b_full)
    + sigma2_full x*_k^T (X_k^T X_k)^{-1} X_k^T X_k' (X_k'^T X_k')^{-1} x*_k'.
    """

    def __init__(self, X, y, models, condition_limit=None):
        self.X, self.y = _check_design(X, y, models)
        self.models = models
        self.full = full_linear_fit(self.X, self.y, condition_limit=condition_limit)
        self.factors = []
        self.fits = []
        n = len(self.y)
        for model in models:
            X_k = subset_columns(self.X, model)
            factor = QRFactor(X_k, model=model, condition_limit=condition_limit)
            beta = factor.solve(self.y)
            resid = self.y - X_k @ beta
            self.factors.append(factor)
            self.fits.append(FitResult(
                beta=beta,
                augmented=augment(beta, model),
                loglik=gaussian_loglik(float(resid @ resid), n),
                dim=model.dim,
                model=model,
            ))

    def values(self, x_star):
        """Per-model estimates x*_k^T beta_k"""
        x_star = as_vector(x_star, self.models.full_dim, name='x_star')
        return np.array([x_star[m.columns] @ fit.beta for m, fit in zip(self.models, self.fits)])

    def build(self, x_star):
        x_star = as_vector(x_star, self.models.full_dim, name='x_star')
        mu_full = float(x_star @ self.full.beta_full)
        bias = self.values(x_star) - mu_full
        sigma = self.full.sigma
        gram = np.column_stack([
            sigma * factor.hat_vector(x_star[model.columns])
            for model, factor in zip(self.models, self.factors)
        ])
        return QuadraticForm.assemble(bias, gram)


class LogisticQBuilder:
    """Pseudo-fits every candidate against the full-model probabilities.

    Bias is p*_k(x*) - p_full(x*); the variance factor of model k is
    W_full^{1/2} X_k M_k^{-1} x*_k p*_k(1 - p*_k) with M_k = X_k^T diag(p_k(1-p_k)) X_k.
    """

    def __init__(self, X, y, models, condition_limit=None, **irls):
        self.X, self.y = _check_design(X, y, models)
        self.models = models
        self._irls = irls
        self._condition_limit = condition_limit
        self.designs = [subset_columns(self.X, model) for model in models]
        self.full = None
        self.pseudo_fits = None
        self.factors = None
        self._mle_fits = None

    def _prepare(self):
        # full-model MLE and pseudo-fits are only needed for Q-hat
        if self.pseudo_fits is not None:
            return
        limit = self._condition_limit
        self.full = logistic_mle(self.X, self.y, model=full_model(self.models.p_fixed, self.models.q),
                                 condition_limit=limit, **self._irls)
        self.p_full = expit(self.X @ self.full.beta)
        self.root_w_full = np.sqrt(self.p_full * (1.0 - self.p_full))
        pseudo_fits, factors = [], []
        for model, X_k in zip(self.models, self.designs):
            pseudo = logistic_pseudo_fit(X_k, self.p_full, model=model, condition_limit=limit, **self._irls)
            p_k = expit(X_k @ pseudo.beta)
            root_w = np.sqrt(p_k * (1.0 - p_k))
            pseudo_fits.append(pseudo)
            factors.append(QRFactor(X_k * root_w[:, None], model=model, condition_limit=limit))
        self.pseudo_fits, self.factors = pseudo_fits, factors

    @property
    def fits(self):
        """Data MLEs of every candidate, fitted on first use"""
        if self._mle_fits is None:
            self._mle_fits = [
                logistic_mle(X_k, self.y, model=model, condition_limit=self._condition_limit, **self._irls)
                for model, X_k in zip(self.models, self.designs)
            ]
        return self._mle_fits

    def values(self, x_star):
        """Per-model probabilities expit(x*_k^T beta_k) from the data MLEs"""
        x_star = as_vector(x_star, self.models.full_dim, name='x_star')
        return np.array([expit(x_star[m.columns] @ fit.beta) for m, fit in zip(self.models, self.fits)])

    def build(self, x_star):
        self._prepare()
        x_star = as_vector(x_star, self.models.full_dim, name='x_star')
        p_full_star = float(expit(x_star @ self.full.beta))
        bias = np.empty(len(self.models))
        columns = []
        parts = zip(self.models, self.designs, self.pseudo_fits, self.factors)
        for k, (model, X_k, pseudo, factor) in enumerate(parts):
            x_k = x_star[model.columns]
            p_star = float(expit(x_k @ pseudo.beta))
            bias[k] = p_star - p_full_star
            u = factor.gram_solve(x_k)
            columns.append(self.root_w_full * (X_k @ u) * (p_star * (1.0 - p_star)))
        return QuadraticForm.assemble(bias, np.column_stack(columns))


def build_q_linear(X, y, models, x_star):
    """Q-hat for the linear functional x*^T beta"""
    return LinearQBuilder(X, y, models).build(x_star)


def build_q_logistic(X, y, models, x_star):
    """Q-hat for the probability expit(x*^T beta)"""
    return LogisticQBuilder(X, y, models).build(x_star)


def project_simplex(v, z=1.0):
    """Euclidean projection of v onto {w >= 0, sum(w) = z} by sort-and-threshold"""
    v = np.asarray(v, dtype=float).ravel()
    if v.size == 0:
        raise DataError('cannot project an empty vector')
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(1, v.size + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def _as_matrix_q(q_form):
    matrix = q_form.matrix if isinstance(q_form, QuadraticForm) else np.asarray(q_form, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise DataError(f'Q must be a non-empty square matrix, got shape {matrix.shape}')
    if not np.all(np.isfinite(matrix)):
        raise NumericalError('Q contains non-finite entries')
    return 0.5 * (matrix + matrix.T)


def _support_minimiser(Q, support):
    """Minimiser of w^T Q w on the affine hull of the support, from the equality KKT system"""
    s = len(support)
    kkt = np.zeros((s + 1, s + 1))
    kkt[:s, :s] = 2.0 * Q[np.ix_(support, support)]
    kkt[:s, s] = 1.0
    kkt[s, :s] = 1.0
    rhs = np.zeros(s + 1)
    rhs[s] = 1.0
    return np.linalg.lstsq(kkt, rhs, rcond=None)[0][:s]


def frank_wolfe_gap(Q, w):
    """w^T g - min_j g_j with g = 2 Q w; an upper bound on w^T Q w minus the simplex minimum"""
    gradient = 2.0 * (Q @ w)
    return max(float(w @ gradient - gradient.min()), 0.0)


def _projected_gradient(Q, lipschitz, n_iter, tol):
    """Accelerated projected gradient from equal weights, step 1/L, restart on objective increase"""
    K = Q.shape[0]
    w = np.full(K, 1.0 / K)
    y = w.copy()
    t = 1.0
    f_w = float(w @ Q @ w)
    iterations = 0
    for iterations in range(1, n_iter + 1):
        w_next = project_simplex(y - 2.0 * (Q @ y) / lipschitz)
        mapping = lipschitz * float(np.max(np.abs(y - w_next)))
        f_next = float(w_next @ Q @ w_next)
        if f_next > f_w:
            y = w.copy()
            t = 1.0
            continue
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = w_next + ((t - 1.0) / t_next) * (w_next - w)
        w, f_w, t = w_next, f_next, t_next
        if mapping <= tol:
            break
    # weights far below the largest are roundoff left by the projection
    w = np.where(w > 1e-8 * w.max(), w, 0.0)
    return w / w.sum(), iterations


def solve_simplex_qp(q_form, max_iter=None, tol=None):
    """Minimise w^T Q w over the probability simplex.

    A short accelerated projected-gradient run picks the starting support,
    which is replaced by the best vertex when that is lower. A primal
    active-set method then finishes the problem. Each pass solves the
    equality KKT system on the current support. A feasible solve is accepted and
    the most negative reduced cost outside the support enters, with an exact line
    search towards its vertex. An infeasible solve is followed up to the first
    blocking weight, which leaves the support. The solver stops once no reduced
    cost is below -tol times the gradient scale; otherwise it stops at max_iter
    with converged=False.
    """
    max_iter = Config.FMA_QP_MAX_ITER if max_iter is None else max_iter
    tol = Config.FMA_QP_TOL if tol is None else tol
    Q = _as_matrix_q(q_form)
    K = Q.shape[0]
    if K == 1:
        return WeightSolution(np.ones(1), float(Q[0, 0]), 0, 0.0, True)

    eigenvalues = np.linalg.eigvalsh(Q)
    lam_min, lam_max = float(eigenvalues[0]), float(eigenvalues[-1])
    Q_work = Q
    if lam_min < 0.0:
        if lam_min < -1e-10 * max(abs(np.trace(Q)), np.finfo(float).tiny):
            logger.warning('Q has eigenvalue %.3g below roundoff; shifting the diagonal', lam_min)
        Q_work = Q + (-lam_min) * np.eye(K)
        lam_max -= lam_min

    start = int(np.argmin(np.diag(Q_work)))
    w = np.zeros(K)
    w[start] = 1.0
    warm_iterations = 0
    if lam_max > 0.0:
        warm, warm_iterations = _projected_gradient(Q_work, 2.0 * lam_max, min(max_iter, WARM_START_ITER), tol)
        if warm @ Q_work @ warm < Q_work[start, start]:
            w = warm
    support = w > 0.0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        index = np.flatnonzero(support)
        z = _support_minimiser(Q_work, index)
        if np.all(z >= -1e-14):
            w = np.zeros(K)
            w[index] = np.maximum(z, 0.0)
            w /= w.sum()
            gradient = 2.0 * (Q_work @ w)
            multiplier = float(w @ gradient)
            reduced = np.where(support, np.inf, gradient - multiplier)
            entering = int(np.argmin(reduced))
            scale = max(float(np.max(np.abs(gradient))), np.finfo(float).tiny)
            if not np.isfinite(reduced[entering]) or reduced[entering] >= -tol * scale:
                converged = True
                break
            direction = -w
            direction[entering] += 1.0
            curvature = float(direction @ Q_work @ direction)
            step = 1.0 if curvature <= 0.0 else min(1.0, -reduced[entering] / (2.0 * curvature))
            w = w + step * direction
            support = w > 0.0
        else:
            current = w[index]
            blocking = z < current
            ratios = np.full(len(index), np.inf)
            ratios[blocking] = current[blocking] / (current[blocking] - z[blocking])
            alpha = min(float(ratios.min()), 1.0)
            moved = current + alpha * (z - current)
            moved[(ratios <= alpha) | (moved <= 0.0)] = 0.0
            w = np.zeros(K)
            w[index] = moved
            w /= w.sum()
            support = w > 0.0

    if not converged:
        logger.warning('simplex QP stopped at the iteration cap (%d) without certifying optimality', max_iter)
    objective = float(w @ Q @ w)
    if Q[start, start] < objective:
        w = np.zeros(K)
        w[start] = 1.0
        objective = float(Q[start, start])

    residual = frank_wolfe_gap(Q_work, w)
    iterations += warm_iterations
    logger.debug('simplex QP: K=%d iterations=%d objective=%.6g gap=%.3g', K, iterations, objective, residual)
    return WeightSolution(w, objective, iterations, residual, converged)


def akaike_weights(aic_values):
    """exp(-dAIC/2) normalised, dAIC relative to the smallest AIC"""
    aic = np.asarray(aic_values, dtype=float)
    if aic.size == 0 or not np.all(np.isfinite(aic)):
        raise DataError('AIC values must be a non-empty finite vector')
    weights = np.exp(-0.5 * (aic - aic.min()))
    return weights / weights.sum()


def aic_weights(fits):
    """Smoothed-AIC weights with AIC = -2 loglik + 2 dim"""
    return akaike_weights([fit.aic() for fit in fits])


def equal_weights(K):
    if K < 1:
        raise DataError('need at least one model')
    return np.full(K, 1.0 / K)
