import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from fma.errors import DataError
from fma.sim_harness import (
    STUDY2_BETA3_GRID, draw_dataset, error_metric, run_study1, run_study2, study2_beta, study2_models,
    study2_truth, study2_x_star, summarize, support_of, target_point,
)
from models.study import StudyConfig


@pytest.mark.parametrize('beta3, linear, logistic', [
    (0.001, -0.192, 0.452),
    (0.005, -0.196, 0.451),
    (0.01, -0.202, 0.450),
    (0.05, -0.243, 0.439),
    (0.1, -0.296, 0.427),
    (0.5, -0.714, 0.329),
])
def test_study2_truth_values(beta3, linear, logistic):
    assert study2_truth('linear', beta3) == pytest.approx(linear, abs=5e-4)
    assert study2_truth('logistic', beta3) == pytest.approx(logistic, abs=5e-4)


def test_support_of():
    assert support_of([0.3, 0.1, 0.0, 0.2], 1).included == (0, 2)


def test_error_metric():
    assert error_metric([1.0, 2.0, 3.0], 2.0) == pytest.approx(np.sqrt(2 / 3))
    assert error_metric([2.0, 2.0], 2.0) == 0.0
    with pytest.raises(DataError):
        error_metric([], 0.0)


def test_summary_decomposes_mse(rng):
    estimates = rng.normal(0.3, 0.2, size=500)
    stats = summarize(estimates, 0.25)
    assert stats['mse'] == pytest.approx(stats['bias2'] + stats['variance'], rel=1e-12)
    assert stats['error'] == pytest.approx(np.sqrt(stats['mse']))


def test_summary_with_one_truth_per_estimate(rng):
    truth = rng.standard_normal(400)
    estimates = truth + rng.normal(0.05, 0.1, size=400)
    stats = summarize(estimates, truth)
    assert stats['truth'] == pytest.approx(truth.mean())
    assert stats['mse'] == pytest.approx(stats['bias2'] + stats['variance'], rel=1e-12)
    # the spread of the targets does not count as estimator variance
    assert stats['variance'] < 0.02
    assert stats['bias2'] == pytest.approx(0.05 ** 2, abs=1.5e-3)


def make_config(case='A', beta3=0.5, redraw_design=True, redraw_x_star=False):
    return StudyConfig(
        family='linear', n=100, beta_true=study2_beta(beta3), candidate_set=study2_models(case),
        x_star=study2_x_star('linear'), n_reps=3, seed=11, schemes=('optimal',),
        true_support=support_of(study2_beta(beta3), 1), redraw_design=redraw_design, case=case,
        redraw_x_star=redraw_x_star,
    )


def test_cells_share_designs_and_noise():
    X_a, y_a = draw_dataset(make_config('A', 0.5), 1)
    X_b, y_b = draw_dataset(make_config('B', 0.01), 1)
    assert_array_equal(X_a, X_b)
    # same noise, different mean
    assert_allclose(y_a - X_a @ study2_beta(0.5), y_b - X_b @ study2_beta(0.01), atol=1e-12)


def test_fixed_design_reuses_first_replication():
    config = make_config(redraw_design=False)
    X_0, y_0 = draw_dataset(config, 0)
    X_2, y_2 = draw_dataset(config, 2)
    assert_array_equal(X_0, X_2)
    assert not np.array_equal(y_0, y_2)
    assert not np.array_equal(draw_dataset(make_config(), 2)[0], X_0)


def test_config_validation():
    with pytest.raises(DataError):
        StudyConfig(family='poisson', n=100, beta_true=study2_beta(0.1), candidate_set=study2_models('A'),
                    x_star=study2_x_star('linear'), n_reps=3, seed=1)
    with pytest.raises(DataError):
        StudyConfig(family='linear', n=4, beta_true=study2_beta(0.1), candidate_set=study2_models('A'),
                    x_star=study2_x_star('linear'), n_reps=3, seed=1)


def test_study2_rows():
    report = run_study2('linear', beta3_grid=(0.5,), cases=('A', 'B'), n_reps=4, seed=5)
    assert len(report.rows) == 6
    row = report.cell(case='A', scheme='optimal')
    assert row.truth == pytest.approx(study2_truth('linear', 0.5))
    assert row.n_reps == 4 and row.n_failed == 0
    assert row.mse == pytest.approx(row.bias2 + row.variance)
    assert {r.scheme for r in report.rows} == {'optimal', 'aic', 'oracle'}
    # the oracle does not depend on the candidate set
    assert report.cell(case='A', scheme='oracle').mean_estimate == report.cell(case='B', scheme='oracle').mean_estimate


def test_study2_logistic_rows():
    report = run_study2('logistic', beta3_grid=(0.1,), cases=('A',), n_reps=3, seed=5, oracle=False)
    assert [r.scheme for r in report.rows] == ['optimal', 'aic']
    assert all(0.0 < r.mean_estimate < 1.0 for r in report.rows)


def test_study_is_deterministic_across_worker_counts():
    serial = run_study2('linear', beta3_grid=(0.05, 0.5), cases=('A',), n_reps=4, seed=9, workers=1)
    parallel = run_study2('linear', beta3_grid=(0.05, 0.5), cases=('A',), n_reps=4, seed=9, workers=2)
    assert serial.to_records() == parallel.to_records()


def test_study1_rows():
    report = run_study1(n_grid=(100,), cases=('A', 'B'), n_reps=3, seed=2)
    assert len(report.rows) == 4
    assert all(r.beta3 is None for r in report.rows)
    assert report.cell(case='A', scheme='oracle').truth == report.cell(case='B', scheme='optimal').truth


def test_target_point_redraw():
    fixed = make_config()
    assert_array_equal(target_point(fixed, 0), target_point(fixed, 5))
    redrawn = make_config(redraw_x_star=True)
    first, second = target_point(redrawn, 1), target_point(redrawn, 2)
    assert first[0] == 1.0 and len(first) == 4
    assert not np.array_equal(first, second)
    assert_array_equal(first, target_point(redrawn, 1))


def test_study1_with_redrawn_x_star():
    fixed = run_study1(n_grid=(100,), cases=('A',), n_reps=6, seed=2)
    redrawn = run_study1(n_grid=(100,), cases=('A',), n_reps=6, seed=2, redraw_x_star=True)
    for scheme in ('optimal', 'oracle'):
        row = redrawn.cell(scheme=scheme)
        assert row.mse == pytest.approx(row.bias2 + row.variance)
        assert row.n_reps == 6
    assert redrawn.cell(scheme='oracle').truth != fixed.cell(scheme='oracle').truth
    again = run_study1(n_grid=(100,), cases=('A',), n_reps=6, seed=2, redraw_x_star=True)
    assert again.to_records() == redrawn.to_records()


@pytest.mark.slow
@pytest.mark.parametrize('redraw_x_star', [False, True])
def test_study1_variance_shrinks_with_n(redraw_x_star):
    report = run_study1(n_grid=(100, 1000), cases=('A',), n_reps=100, seed=4, redraw_x_star=redraw_x_star)
    for scheme in ('optimal', 'oracle'):
        small = report.cell(n=100, scheme=scheme)
        large = report.cell(n=1000, scheme=scheme)
        assert large.variance < small.variance
        assert large.mse < small.mse
        assert large.bias2 < 0.01


@pytest.mark.slow
@pytest.mark.parametrize('family, cases, beta3_grid', [
    ('linear', ('B',), (0.01, 0.05, 0.1)),
    ('logistic', ('A', 'B'), (0.1,)),
])
def test_optimal_weights_beat_aic(family, cases, beta3_grid):
    report = run_study2(family, beta3_grid=beta3_grid, cases=cases, oracle=False, n_reps=500, seed=7)
    for case in cases:
        for beta3 in beta3_grid:
            optimal = report.cell(case=case, beta3=beta3, scheme='optimal')
            aic = report.cell(case=case, beta3=beta3, scheme='aic')
            assert optimal.error < aic.error, (case, beta3)


@pytest.mark.slow
def test_study2_full_grid_runs():
    report = run_study2('linear', n_reps=50, seed=1)
    assert len(report.rows) == len(STUDY2_BETA3_GRID) * 2 * 3
    assert all(r.n_failed == 0 for r in report.rows)
