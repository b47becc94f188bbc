"""
Candidate model set routes
"""

from flask import jsonify, request

from . import api_bp
from fma.errors import DataError
from fma.model_space import enumerate_all_subsets, nested_forward, nested_sequence
from utils.error_handlers import json_errors

SPACES = {
    'all': enumerate_all_subsets,
    'nested': nested_sequence,
    'forward': nested_forward,
}


@api_bp.route('/models', methods=['GET'])
@json_errors
def get_models():
    """Enumerate a candidate set: ?p_fixed=1&q=3&kind=all|nested|forward"""
    p_fixed = request.args.get('p_fixed', 1, type=int)
    q = request.args.get('q', type=int)
    kind = request.args.get('kind', 'all')
    if q is None:
        raise DataError('q required')
    if kind not in SPACES:
        raise DataError(f'unknown model space {kind!r}')
    models = SPACES[kind](p_fixed, q)
    return jsonify({
        'models': [model.to_dict() for model in models],
        'total': len(models)
    })
