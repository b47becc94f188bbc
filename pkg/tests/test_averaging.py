import numpy as np
import pytest
from numpy.testing import assert_allclose

from fma.averaging import (
    average_estimate, fit_and_average_linear, fit_and_average_logistic, predict_many, prediction_band,
    prediction_bands,
)
from fma.errors import DataError
from fma.glm_fit import ols_fit
from fma.model_space import enumerate_all_subsets, full_model, nested_forward, subset_columns
from fma.mse_weights import akaike_weights
from models.candidate import ModelSet
from models.estimate import Functional

X_STAR = np.array([1.0, 0.4, -1.2, 0.8])


def test_average_estimate_checks_simplex():
    assert average_estimate([0.25, 0.75], [4.0, 8.0]) == pytest.approx(7.0)
    with pytest.raises(DataError):
        average_estimate([0.5, 0.6], [1.0, 2.0])
    with pytest.raises(DataError):
        average_estimate([1.2, -0.2], [1.0, 2.0])


def test_single_full_model_returns_full_fit(linear_data):
    X, y = linear_data
    models = ModelSet((full_model(1, 3),))
    estimate = fit_and_average_linear(X, y, models, Functional.linear_point(X_STAR))
    assert estimate.value == pytest.approx(X_STAR @ ols_fit(X, y).beta)
    assert_allclose(estimate.weights, [1.0])


def test_optimal_estimate_is_convex_combination(linear_data):
    X, y = linear_data
    estimate = fit_and_average_linear(X, y, enumerate_all_subsets(1, 3), Functional.linear_point(X_STAR))
    assert estimate.per_model.min() - 1e-12 <= estimate.value <= estimate.per_model.max() + 1e-12
    assert estimate.weights.sum() == pytest.approx(1.0)
    for k, model in enumerate(estimate.models):
        fit = ols_fit(subset_columns(X, model), y, model=model)
        assert estimate.per_model[k] == pytest.approx(X_STAR[model.columns] @ fit.beta)


def test_optimal_weights_dominate_baselines(linear_data):
    X, y = linear_data
    estimate = fit_and_average_linear(X, y, enumerate_all_subsets(1, 3), Functional.linear_point(X_STAR))
    q_hat = estimate.q_hat
    K = q_hat.size
    assert estimate.solution.objective <= q_hat.objective(np.full(K, 1 / K)) + 1e-12
    assert estimate.solution.objective <= np.min(np.diag(q_hat.matrix)) + 1e-12


def test_coordinate_equals_unit_point(linear_data):
    X, y = linear_data
    models = enumerate_all_subsets(1, 3)
    by_index = fit_and_average_linear(X, y, models, Functional.coordinate(2))
    by_point = fit_and_average_linear(X, y, models, Functional.linear_point([0.0, 0.0, 1.0, 0.0]))
    assert by_index.value == pytest.approx(by_point.value, abs=1e-12)
    assert_allclose(by_index.weights, by_point.weights, atol=1e-12)


def test_intercept_shift_moves_estimate_only(linear_data):
    X, y = linear_data
    models = enumerate_all_subsets(1, 3)
    functional = Functional.linear_point(X_STAR)
    base = fit_and_average_linear(X, y, models, functional)
    shifted = fit_and_average_linear(X, y + 3.0, models, functional)
    assert shifted.value == pytest.approx(base.value + 3.0, abs=1e-6)
    assert_allclose(shifted.weights, base.weights, atol=1e-6)


def test_aic_and_equal_schemes(linear_data):
    X, y = linear_data
    models = nested_forward(1, 3)
    functional = Functional.linear_point(X_STAR)
    aic = fit_and_average_linear(X, y, models, functional, scheme='aic')
    expected = akaike_weights([ols_fit(subset_columns(X, m), y, model=m).aic() for m in models])
    assert_allclose(aic.weights, expected)
    assert aic.q_hat is None
    equal = fit_and_average_linear(X, y, models, functional, scheme='equal')
    assert equal.value == pytest.approx(equal.per_model.mean())
    with pytest.raises(DataError):
        fit_and_average_linear(X, y, models, functional, scheme='bayes')


def test_functional_family_mismatch(linear_data):
    X, y = linear_data
    models = nested_forward(1, 3)
    with pytest.raises(DataError):
        fit_and_average_linear(X, y, models, Functional.logistic_point(X_STAR))
    with pytest.raises(DataError):
        fit_and_average_linear(X, y, models, Functional.linear_point([1.0, 2.0]))


def test_logistic_average(logistic_data):
    X, y = logistic_data
    models = nested_forward(1, 3)
    estimate = fit_and_average_logistic(X, y, models, Functional.logistic_point(X_STAR))
    assert 0.0 < estimate.value < 1.0
    assert np.all((estimate.per_model > 0) & (estimate.per_model < 1))
    assert estimate.weights.sum() == pytest.approx(1.0)
    assert estimate.solution.objective <= np.min(np.diag(estimate.q_hat.matrix)) + 1e-12


def test_predict_many_uses_per_row_weights(linear_data):
    X, y = linear_data
    models = enumerate_all_subsets(1, 3)
    X_test = X[:5] + 0.3
    estimates = predict_many(X, y, models, X_test)
    assert len(estimates) == 5
    for row, estimate in zip(X_test, estimates):
        single = fit_and_average_linear(X, y, models, Functional.linear_point(row))
        assert estimate.value == pytest.approx(single.value, abs=1e-10)


def test_band_degenerates_with_full_pool_and_no_noise(linear_data):
    X, y = linear_data
    models = nested_forward(1, 3)
    band = prediction_band(X, y, X_STAR, models=models, n_sub=len(y), n_reps=5, sigma=0.0, level=0.9, seed=1)
    estimate = fit_and_average_linear(X, y, models, Functional.linear_point(X_STAR))
    assert band.point == pytest.approx(estimate.value, abs=1e-8)
    assert band.lower == pytest.approx(band.point, abs=1e-8)
    assert band.upper == pytest.approx(band.point, abs=1e-8)


def test_bands_are_deterministic_and_ordered(linear_data):
    X, y = linear_data
    models = nested_forward(1, 3)
    kwargs = dict(models=models, n_sub=40, n_reps=8, sigma=0.5, level=0.8, seed=7)
    first = prediction_bands(X, y, X[:4], **kwargs)
    second = prediction_bands(X, y, X[:4], **kwargs)
    assert [b.to_dict() for b in first] == [b.to_dict() for b in second]
    assert all(b.lower <= b.upper for b in first)


def test_band_argument_checks(linear_data):
    X, y = linear_data
    with pytest.raises(DataError):
        prediction_bands(X, y, X[:2], n_sub=len(y) + 1, n_reps=2)
    with pytest.raises(DataError):
        prediction_bands(X, y, X[:2], n_sub=10, n_reps=2, level=1.0)


@pytest.mark.slow
def test_band_coverage():
    beta = np.array([1.0, 0.5, -0.3, 0.0])
    covered = []
    for pool in range(10):
        rng = np.random.default_rng(100 + pool)
        X_pool = np.column_stack([np.ones(67), rng.standard_normal((67, 3))])
        y_pool = X_pool @ beta + rng.standard_normal(67)
        X_test = np.column_stack([np.ones(100), rng.standard_normal((100, 3))])
        y_test = X_test @ beta + rng.standard_normal(100)
        bands = prediction_bands(X_pool, y_pool, X_test, n_sub=50, n_reps=50, sigma=1.0, level=0.9, seed=pool)
        covered.extend(b.covers(v) for b, v in zip(bands, y_test))
    assert len(covered) == 1000
    assert 0.85 <= np.mean(covered) <= 0.95
