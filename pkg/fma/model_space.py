"""
Candidate model sets, design subsetting and coefficient augmentation
"""

import logging

import numpy as np

from config import Config
from fma.errors import CapacityError, DataError
from fma.linalg import as_matrix, as_vector
from models.candidate import AugmentedVector, CandidateModel, ModelSet

logger = logging.getLogger(__name__)


def enumerate_all_subsets(p_fixed, q, max_q=None):
    """All 2^q candidates in binary-counting order.

    Bit i of the counter includes optional index i, so (p_fixed=1, q=2) gives
    {}, {0}, {1}, {0, 1}. With p_fixed=0 the empty model is skipped.
    """
    max_q = Config.FMA_MAX_SUBSETS_Q if max_q is None else max_q
    if q < 0:
        raise DataError('q must be non-negative')
    if q > max_q:
        raise CapacityError(f'2^{q} candidate models exceeds the enumeration guard (q <= {max_q})')
    models = [
        CandidateModel(tuple(i for i in range(q) if mask >> i & 1), p_fixed, q)
        for mask in range(1 << q)
        if p_fixed > 0 or mask
    ]
    logger.debug('enumerated %d candidate models (p_fixed=%d, q=%d)', len(models), p_fixed, q)
    return ModelSet(tuple(models), q)


def nested_sequence(p_fixed, q):
    """q+1 nested candidates dropping optional coefficients from the front.

    Model j keeps {j, ..., q-1}: the first model is the full model, the last
    keeps only the fixed block.
    """
    if q < 0:
        raise DataError('q must be non-negative')
    return ModelSet(tuple(CandidateModel(tuple(range(j, q)), p_fixed, q) for j in range(q + 1)), q)


def nested_forward(p_fixed, q):
    """q+1 nested candidates adding optional coefficients from the front: {}, {0}, {0, 1}, ..."""
    if q < 0:
        raise DataError('q must be non-negative')
    return ModelSet(tuple(CandidateModel(tuple(range(j)), p_fixed, q) for j in range(q + 1)), q)


def full_model(p_fixed, q):
    return CandidateModel(tuple(range(q)), p_fixed, q)


def subset_columns(full_design, model):
    """Fixed columns followed by the model's optional columns, order preserved"""
    full_design = as_matrix(full_design)
    if full_design.shape[1] != model.full_dim:
        raise DataError(
            f'design has {full_design.shape[1]} columns, model expects p_fixed + q = {model.full_dim}')
    return full_design[:, model.columns]


def subset_point(x_star, model):
    """Components of a full-length point indexed by the model"""
    x_star = as_vector(x_star, model.full_dim, name='x_star')
    return x_star[model.columns]


def augment(beta_k, model, fill=0.0):
    """Pad a model's coefficients to full length, absent coordinates set to `fill`"""
    beta_k = as_vector(beta_k, model.dim, name='beta_k')
    values = np.full(model.full_dim, float(fill))
    values[model.columns] = beta_k
    return AugmentedVector(values, float(fill))
