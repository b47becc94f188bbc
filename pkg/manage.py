#!/usr/bin/env python
"""
Command-line front end for the model averaging engine
"""

from dataclasses import dataclass

import click
import numpy as np
from dotenv import load_dotenv

# Load environment variables before Config reads them
load_dotenv()

from config import Config
from fma.averaging import fit_and_average_linear, fit_and_average_logistic, predict_many, prediction_bands
from fma.datasets import load_csv, split
from fma.errors import DataError
from fma.glm_fit import full_linear_fit
from fma.model_space import enumerate_all_subsets, nested_forward, nested_sequence
from fma.mse_weights import SCHEMES
from fma.selection import KNOWN_METHODS, METHODS, SELECTORS, cv_compare, default_n_train
from fma.sim_harness import STUDY1_N_GRID, STUDY2_BETA3_GRID, run_study1, run_study2
from models.candidate import ModelSet
from models.estimate import Functional
from utils.error_handlers import cli_errors
from utils.log import configure_logging
from utils.reports import render, write_atomic

SPACES = {
    'all': enumerate_all_subsets,
    'nested': nested_sequence,
    'forward': nested_forward,
}


@dataclass
class CliOptions:
    """Global flags shared by every subcommand"""
    seed: int
    reps: int
    workers: int
    out: str
    fmt: str
    dump_q: bool


def _split_list(text, cast=str):
    if text is None:
        return None
    try:
        return [cast(item.strip()) for item in text.split(',') if item.strip()]
    except ValueError as e:
        raise DataError(f'could not parse list {text!r}: {e}') from e


def _emit(opts, payload, rows):
    text = render(payload, rows, opts.fmt)
    if opts.out:
        write_atomic(opts.out, text)
        click.echo(f'Wrote {opts.out}', err=True)
    else:
        click.echo(text, nl=False)


def _load(path, response, family, columns, exclude, sep):
    return load_csv(path, response, family=family, feature_columns=_split_list(columns),
                    exclude_columns=_split_list(exclude) or (), sep=sep)


def _model_set(dataset, models_path, space, p_fixed):
    if models_path:
        with open(models_path, encoding='utf-8') as handle:
            models = ModelSet.from_jsonl(handle.read())
        if models.full_dim != dataset.d:
            raise DataError(f'model set covers {models.full_dim} columns, data has {dataset.d}')
        return models
    return SPACES[space](p_fixed, dataset.d - p_fixed)


def data_options(f):
    """Options shared by commands that read a CSV"""
    f = click.option('--sep', default=',', show_default=True, help='Field delimiter')(f)
    f = click.option('--exclude', default=None, help='Comma-separated columns to ignore')(f)
    f = click.option('--columns', default=None, help='Comma-separated predictor columns (default: all)')(f)
    f = click.option('--response', required=True, help='Response column name')(f)
    return f


@click.group()
@click.option('--seed', type=int, default=Config.FMA_SEED, show_default=True, help='Master random seed')
@click.option('--reps', type=int, default=None, help='Monte Carlo replications')
@click.option('--workers', type=int, default=Config.FMA_WORKERS, show_default=True, help='Worker processes')
@click.option('--out', type=click.Path(dir_okay=False), default=None, help='Output file (default: stdout)')
@click.option('--format', 'fmt', type=click.Choice(['csv', 'json']), default='csv', show_default=True)
@click.option('--dump-q', is_flag=True, help='Include the estimated MSE matrix in JSON output')
@click.option('--log-level', default=Config.LOG_LEVEL, show_default=True)
@click.pass_context
def cli(ctx, seed, reps, workers, out, fmt, dump_q, log_level):
    """Frequentist model averaging with estimated-MSE optimal weights"""
    configure_logging(log_level)
    ctx.obj = CliOptions(seed, reps, workers, out, fmt, dump_q)


@cli.command()
@click.argument('data', type=click.Path(exists=True, dir_okay=False))
@data_options
@click.option('--family', type=click.Choice(['linear', 'logistic']), default='linear', show_default=True)
@click.option('--models', 'models_path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Candidate set as JSON lines')
@click.option('--space', type=click.Choice(sorted(SPACES)), default='all', show_default=True)
@click.option('--p-fixed', type=int, default=1, show_default=True)
@click.option('--x-star', default=None, help='Target point, comma-separated, intercept first')
@click.option('--row', type=int, default=None, help='Use this data row (0-based) as the target point')
@click.option('--coordinate', type=int, default=None, help='Estimate this coefficient instead (linear)')
@click.option('--scheme', type=click.Choice(SCHEMES), default='optimal', show_default=True)
@click.pass_obj
@cli_errors
def weights(opts, data, response, columns, exclude, sep, family, models_path, space, p_fixed,
            x_star, row, coordinate, scheme):
    """Weights and averaged estimate at one target point"""
    dataset = _load(data, response, family, columns, exclude, sep)
    models = _model_set(dataset, models_path, space, p_fixed)
    if coordinate is not None:
        functional = Functional.coordinate(coordinate)
    elif row is not None:
        if not 0 <= row < dataset.n:
            raise DataError(f'row {row} out of range')
        functional = Functional('linear_point' if family == 'linear' else 'logistic_point',
                                x_star=dataset.design[row])
    elif x_star is not None:
        functional = Functional('linear_point' if family == 'linear' else 'logistic_point',
                                x_star=_split_list(x_star, float))
    else:
        raise DataError('give one of --x-star, --row or --coordinate')

    if family == 'linear':
        estimate = fit_and_average_linear(dataset.design, dataset.response, models, functional, scheme)
    else:
        estimate = fit_and_average_logistic(dataset.design, dataset.response, models, functional, scheme)

    rows = [
        {'model': model.describe(dataset.column_names), 'weight': float(w), 'estimate': float(v)}
        for model, w, v in zip(models, estimate.weights, estimate.per_model)
    ]
    payload = estimate.to_dict(include_q=opts.dump_q)
    payload['model_names'] = [model.describe(dataset.column_names) for model in models]
    _emit(opts, payload, rows)
    click.echo(f'Averaged estimate ({scheme}): {estimate.value:.6g}', err=True)
    for description, weight in estimate.top_models(3, dataset.column_names):
        click.echo(f'  {weight:.4f}  {description}', err=True)


@cli.command()
@click.argument('train', type=click.Path(exists=True, dir_okay=False))
@click.option('--test', 'test_path', type=click.Path(exists=True, dir_okay=False), required=True)
@data_options
@click.option('--family', type=click.Choice(['linear', 'logistic']), default='linear', show_default=True)
@click.option('--space', type=click.Choice(sorted(SPACES)), default='all', show_default=True)
@click.option('--p-fixed', type=int, default=1, show_default=True)
@click.option('--scheme', type=click.Choice(SCHEMES), default='optimal', show_default=True)
@click.pass_obj
@cli_errors
def predict(opts, train, test_path, response, columns, exclude, sep, family, space, p_fixed, scheme):
    """Averaged predictions for every row of a test file"""
    train_set = _load(train, response, family, columns, exclude, sep)
    test_set = _load(test_path, response, family, ','.join(train_set.feature_names), None, sep)
    models = _model_set(train_set, None, space, p_fixed)
    estimates = predict_many(train_set.design, train_set.response, models, test_set.design, scheme, family)
    rows = [
        {'index': i, 'actual': float(actual), 'predicted': est.value}
        for i, (actual, est) in enumerate(zip(test_set.response, estimates))
    ]
    payload = {'scheme': scheme, 'predictions': rows}
    if opts.dump_q:
        payload['estimates'] = [est.to_dict(include_q=True) for est in estimates]
    _emit(opts, payload, rows)


@cli.command()
@click.option('--n-grid', default=','.join(str(n) for n in STUDY1_N_GRID), show_default=True)
@click.option('--cases', default='A,B', show_default=True)
@click.option('--fixed-design', is_flag=True, help='Reuse one design across replications')
@click.option('--redraw-x-star', is_flag=True, help='Draw a fresh target point for every replication')
@click.pass_obj
@cli_errors
def study1(opts, n_grid, cases, fixed_design, redraw_x_star):
    """Bias/variance study of the averaged estimator against the oracle"""
    report = run_study1(n_grid=_split_list(n_grid, int), cases=_split_list(cases),
                        n_reps=opts.reps, seed=opts.seed, redraw_design=not fixed_design,
                        redraw_x_star=redraw_x_star, workers=opts.workers)
    _emit(opts, report.to_dict(), report.to_records())


@cli.command()
@click.option('--family', type=click.Choice(['linear', 'logistic']), default='linear', show_default=True)
@click.option('--beta3', default=','.join(str(b) for b in STUDY2_BETA3_GRID), show_default=True)
@click.option('--cases', default='A,B', show_default=True)
@click.option('--schemes', default='optimal,aic', show_default=True)
@click.option('--oracle/--no-oracle', default=True, show_default=True)
@click.option('--n', 'n', type=int, default=100, show_default=True)
@click.option('--fixed-design', is_flag=True, help='Reuse one design across replications')
@click.pass_obj
@cli_errors
def study2(opts, family, beta3, cases, schemes, oracle, n, fixed_design):
    """Averaged estimator against AIC weights over the beta3 grid"""
    schemes = _split_list(schemes)
    unknown = [s for s in schemes if s not in SCHEMES]
    if unknown:
        raise DataError(f'unknown schemes {unknown}')
    report = run_study2(family=family, beta3_grid=_split_list(beta3, float), cases=_split_list(cases),
                        schemes=schemes, oracle=oracle, n=n, n_reps=opts.reps, seed=opts.seed,
                        redraw_design=not fixed_design, workers=opts.workers)
    _emit(opts, report.to_dict(), report.to_records())


@cli.command()
@click.argument('data', type=click.Path(exists=True, dir_okay=False))
@data_options
@click.option('--repeats', type=int, default=None,
              help=f'Random splits (default: the global --reps, else {Config.FMA_CV_REPEATS})')
@click.option('--n-train', type=int, default=None, help='Training rows (default: 67/97 of n)')
@click.option('--methods', default=','.join(METHODS), show_default=True)
@click.option('--select-by', type=click.Choice(SELECTORS), default='cv', show_default=True)
@click.pass_obj
@cli_errors
def cv(opts, data, response, columns, exclude, sep, repeats, n_train, methods, select_by):
    """Paired prediction-error comparison over random train/test splits"""
    dataset = _load(data, response, 'linear', columns, exclude, sep)
    methods = _split_list(methods)
    unknown = [m for m in methods if m not in KNOWN_METHODS]
    if unknown:
        raise DataError(f'unknown methods {unknown}')
    if repeats is None:
        repeats = opts.reps if opts.reps is not None else Config.FMA_CV_REPEATS
    report = cv_compare(dataset, methods=methods, n_repeats=repeats, seed=opts.seed, n_train=n_train,
                        select_by=select_by, workers=opts.workers)
    _emit(opts, report.to_dict(), report.rows())
    for method in report.ranking():
        click.echo(f'  {report.errors[method]:.4f}  {method}', err=True)


@cli.command()
@click.argument('data', type=click.Path(exists=True, dir_okay=False))
@data_options
@click.option('--n-train', type=int, default=None, help='Training rows (default: 67/97 of n)')
@click.option('--n-sub', type=int, default=Config.FMA_BAND_SUBSAMPLE, show_default=True)
@click.option('--level', type=float, default=Config.FMA_BAND_LEVEL, show_default=True)
@click.option('--scheme', type=click.Choice(SCHEMES), default='optimal', show_default=True)
@click.pass_obj
@cli_errors
def band(opts, data, response, columns, exclude, sep, n_train, n_sub, level, scheme):
    """Prediction bands for one random test split"""
    dataset = _load(data, response, 'linear', columns, exclude, sep)
    n_train = default_n_train(dataset.n) if n_train is None else n_train
    train, test = split(dataset, n_train, opts.seed)
    sigma = full_linear_fit(train.design, train.response).sigma
    click.echo(f'sigma_full on the training split: {sigma:.4f}', err=True)
    bands = prediction_bands(train.design, train.response, test.design, n_sub=n_sub,
                             n_reps=opts.reps or Config.FMA_BAND_REPS, sigma=sigma, level=level,
                             seed=opts.seed, scheme=scheme, workers=opts.workers)
    rows = [
        {'index': i, 'actual': float(actual), 'predicted': b.point, 'lower': b.lower, 'upper': b.upper}
        for i, (actual, b) in enumerate(zip(test.response, bands))
    ]
    covered = np.mean([b.covers(actual) for actual, b in zip(test.response, bands)])
    click.echo(f'{covered:.0%} of test responses inside the {level:.0%} band', err=True)
    _emit(opts, {'sigma_full': sigma, 'level': level, 'bands': rows}, rows)


@cli.command('models')
@click.option('--p-fixed', type=int, default=1, show_default=True)
@click.option('--q', type=int, required=True)
@click.option('--space', type=click.Choice(sorted(SPACES)), default='all', show_default=True)
@click.pass_obj
@cli_errors
def list_models(opts, p_fixed, q, space):
    """Write a candidate set as JSON lines"""
    text = SPACES[space](p_fixed, q).to_jsonl()
    if opts.out:
        write_atomic(opts.out, text)
    else:
        click.echo(text, nl=False)


if __name__ == '__main__':
    cli()
