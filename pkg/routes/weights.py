"""
Weight selection and averaged prediction routes
"""

from flask import jsonify

from . import api_bp
from .payload import get_matrix, get_models, get_payload, get_vector
from fma.averaging import fit_and_average_linear, fit_and_average_logistic, predict_many
from fma.errors import DataError
from models.estimate import Functional
from utils.error_handlers import json_errors


@api_bp.route('/weights', methods=['POST'])
@json_errors
def compute_weights():
    """Averaged estimate at one point with its weights.

    Body: design, response, family (linear|logistic), p_fixed, models or space,
    x_star or coordinate, scheme (optimal|aic|equal), dump_q.
    """
    data = get_payload()
    X = get_matrix(data, 'design')
    y = get_vector(data, 'response')
    models = get_models(data, X.shape[1])
    family = data.get('family', 'linear')
    scheme = data.get('scheme', 'optimal')

    if family == 'linear':
        if data.get('coordinate') is not None:
            functional = Functional.coordinate(data['coordinate'])
        else:
            functional = Functional.linear_point(get_vector(data, 'x_star'))
        estimate = fit_and_average_linear(X, y, models, functional, scheme)
    elif family == 'logistic':
        functional = Functional.logistic_point(get_vector(data, 'x_star'))
        estimate = fit_and_average_logistic(X, y, models, functional, scheme)
    else:
        raise DataError(f'unknown family {family!r}')

    return jsonify(estimate.to_dict(include_q=bool(data.get('dump_q'))))


@api_bp.route('/predict', methods=['POST'])
@json_errors
def predict():
    """Averaged predictions for every test row, each with its own weights"""
    data = get_payload()
    X = get_matrix(data, 'train_design')
    y = get_vector(data, 'train_response')
    X_test = get_matrix(data, 'test_design')
    models = get_models(data, X.shape[1])
    estimates = predict_many(X, y, models, X_test,
                             scheme=data.get('scheme', 'optimal'),
                             family=data.get('family', 'linear'))
    return jsonify({
        'predictions': [est.value for est in estimates],
        'weights': [est.weights.tolist() for est in estimates],
        'models': [list(m.included) for m in models],
    })
