import numpy as np
import pytest
from scipy.special import expit

from app import create_app
from config import TestingConfig


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def app():
    return create_app(TestingConfig)


@pytest.fixture
def client(app):
    return app.test_client()


def make_design(rng, n, p):
    """Intercept plus p standard normal predictors"""
    return np.column_stack([np.ones(n), rng.standard_normal((n, p))])


@pytest.fixture
def linear_data(rng):
    X = make_design(rng, 60, 3)
    beta = np.array([1.0, 0.5, -0.3, 0.0])
    y = X @ beta + 0.5 * rng.standard_normal(60)
    return X, y


@pytest.fixture
def logistic_data(rng):
    X = make_design(rng, 200, 3)
    beta = np.array([0.2, 0.8, -0.5, 0.1])
    y = (rng.random(200) < expit(X @ beta)).astype(float)
    return X, y


@pytest.fixture
def write_csv(tmp_path):
    """Write a header plus rows to a CSV file under tmp_path and return its path"""
    def _write(name, header, rows):
        path = tmp_path / name
        lines = [','.join(header)] + [','.join(str(v) for v in row) for row in rows]
        path.write_text('\n'.join(lines) + '\n')
        return str(path)
    return _write
