"""
Request body parsing shared by the routes
"""

import numpy as np
from flask import request

from fma.errors import DataError
from fma.model_space import enumerate_all_subsets, nested_forward, nested_sequence
from models.candidate import CandidateModel, ModelSet


def get_payload():
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise DataError('a JSON object body is required')
    return data


def get_matrix(data, key):
    try:
        matrix = np.asarray(data[key], dtype=float)
    except KeyError:
        raise DataError(f'{key} required') from None
    except (TypeError, ValueError):
        raise DataError(f'{key} must be a numeric matrix') from None
    if matrix.ndim != 2:
        raise DataError(f'{key} must be a list of rows')
    return matrix


def get_vector(data, key):
    try:
        vector = np.asarray(data[key], dtype=float)
    except KeyError:
        raise DataError(f'{key} required') from None
    except (TypeError, ValueError):
        raise DataError(f'{key} must be a numeric list') from None
    if vector.ndim != 1:
        raise DataError(f'{key} must be a flat list')
    return vector


def get_models(data, full_dim):
    """Explicit `models` index lists, or a named model space ('all', 'nested', 'forward')"""
    try:
        p_fixed = int(data.get('p_fixed', 1))
    except (TypeError, ValueError):
        raise DataError('p_fixed must be an integer') from None
    q = full_dim - p_fixed
    if q < 0:
        raise DataError('p_fixed exceeds the number of design columns')
    if data.get('models') is not None:
        try:
            return ModelSet(tuple(CandidateModel(tuple(m), p_fixed, q) for m in data['models']), q)
        except DataError:
            raise
        except (TypeError, ValueError):
            raise DataError('models must be a list of index lists') from None
    kind = data.get('space', 'all')
    if kind == 'all':
        return enumerate_all_subsets(p_fixed, q)
    if kind == 'nested':
        return nested_sequence(p_fixed, q)
    if kind == 'forward':
        return nested_forward(p_fixed, q)
    raise DataError(f'unknown model space {kind!r}')
