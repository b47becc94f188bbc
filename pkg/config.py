"""
Configuration settings for the model averaging service
"""

import os


def _env_float(name, default):
    return float(os.environ.get(name) or default)


def _env_int(name, default):
    return int(os.environ.get(name) or default)


class Config:
    """Base configuration"""
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'INFO'

    # Monte Carlo defaults
    FMA_SEED = _env_int('FMA_SEED', 2024)
    FMA_REPS = _env_int('FMA_REPS', 500)
    FMA_WORKERS = _env_int('FMA_WORKERS', 1)

    # Model space
    FMA_MAX_SUBSETS_Q = _env_int('FMA_MAX_SUBSETS_Q', 20)

    # Fitting
    FMA_CONDITION_LIMIT = _env_float('FMA_CONDITION_LIMIT', 1e10)
    FMA_IRLS_MAX_ITER = _env_int('FMA_IRLS_MAX_ITER', 100)
    FMA_IRLS_TOL = _env_float('FMA_IRLS_TOL', 1e-8)
    FMA_SEPARATION_BOUND = _env_float('FMA_SEPARATION_BOUND', 30.0)

    # Simplex QP solver
    FMA_QP_MAX_ITER = _env_int('FMA_QP_MAX_ITER', 10000)
    FMA_QP_TOL = _env_float('FMA_QP_TOL', 1e-10)

    # Prediction bands (defaults follow the prostate analysis: 50 of 67 rows, 50 replications)
    FMA_BAND_LEVEL = _env_float('FMA_BAND_LEVEL', 0.9)
    FMA_BAND_SUBSAMPLE = _env_int('FMA_BAND_SUBSAMPLE', 50)
    FMA_BAND_REPS = _env_int('FMA_BAND_REPS', 50)

    # Cross-validation pipeline
    FMA_CV_REPEATS = _env_int('FMA_CV_REPEATS', 5)
    FMA_CV_FOLDS = _env_int('FMA_CV_FOLDS', 5)

    # Largest JSON body accepted by the API (bytes)
    MAX_CONTENT_LENGTH = _env_int('MAX_CONTENT_LENGTH', 16 * 1024 * 1024)

    # CORS settings
    cors_origins_env = os.environ.get('CORS_ORIGINS')
    if cors_origins_env:
        CORS_ORIGINS = [origin.strip() for origin in cors_origins_env.split(',')]
    else:
        CORS_ORIGINS = [
            'http://localhost:3000',
            'http://localhost:5173',
            'http://127.0.0.1:3000',
            'http://127.0.0.1:5173',
        ]


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False


class TestingConfig(Config):
    """Test configuration"""
    TESTING = True
    LOG_LEVEL = 'WARNING'


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
