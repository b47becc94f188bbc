import numpy as np
import pytest


@pytest.fixture
def payload(linear_data):
    X, y = linear_data
    return {'design': X.tolist(), 'response': y.tolist(), 'x_star': [1.0, 0.4, -1.2, 0.8]}


def test_health(client):
    response = client.get('/health')
    assert response.status_code == 200
    assert response.get_json()['status'] == 'ok'


def test_models_endpoint(client):
    body = client.get('/api/models?q=2').get_json()
    assert body['total'] == 4
    assert [m['included'] for m in body['models']] == [[], [0], [1], [0, 1]]
    nested = client.get('/api/models?q=3&p_fixed=2&kind=nested').get_json()
    assert nested['total'] == 4
    assert client.get('/api/models').status_code == 400
    assert client.get('/api/models?q=2&kind=tree').status_code == 400


def test_models_endpoint_guard(client):
    response = client.get('/api/models?q=40')
    assert response.status_code == 400
    assert response.get_json()['type'] == 'CapacityError'


def test_weights_linear(client, payload):
    response = client.post('/api/weights', json=payload)
    assert response.status_code == 200
    body = response.get_json()
    assert len(body['weights']) == 8
    assert sum(body['weights']) == pytest.approx(1.0)
    assert min(body['per_model']) - 1e-9 <= body['value'] <= max(body['per_model']) + 1e-9
    assert 'q_hat' not in body
    assert body['solution']['objective'] >= 0.0
    assert body['solution']['converged'] is True


def test_weights_dump_q_and_explicit_models(client, payload):
    payload.update(models=[[], [0, 1], [0, 1, 2]], dump_q=True)
    body = client.post('/api/weights', json=payload).get_json()
    assert len(body['weights']) == 3
    matrix = np.array(body['q_hat']['matrix'])
    assert matrix.shape == (3, 3)
    np.testing.assert_allclose(matrix, matrix.T)


def test_weights_coordinate_and_aic(client, payload):
    del payload['x_star']
    payload.update(coordinate=1, scheme='aic', space='forward')
    body = client.post('/api/weights', json=payload).get_json()
    assert body['scheme'] == 'aic'
    assert len(body['weights']) == 4


def test_weights_logistic(client, logistic_data):
    X, y = logistic_data
    body = client.post('/api/weights', json={
        'design': X.tolist(), 'response': y.tolist(), 'family': 'logistic',
        'x_star': [1.0, 0.2, 0.1, -0.3], 'space': 'forward',
    }).get_json()
    assert 0.0 < body['value'] < 1.0


def test_weights_bad_requests(client, payload):
    assert client.post('/api/weights', data='nope', content_type='text/plain').status_code == 400
    missing = dict(payload)
    del missing['design']
    response = client.post('/api/weights', json=missing)
    assert response.status_code == 400
    assert response.get_json()['error'] == 'design required'
    payload['x_star'] = [1.0, 2.0]
    assert client.post('/api/weights', json=payload).status_code == 400
    payload['family'] = 'poisson'
    assert client.post('/api/weights', json=payload).status_code == 400


@pytest.mark.parametrize('update', [
    {'models': [['a']]},
    {'models': [[0], 5]},
    {'p_fixed': 'one'},
    {'coordinate': 'x'},
])
def test_malformed_integers_are_bad_requests(client, payload, update):
    if 'coordinate' in update:
        del payload['x_star']
    payload.update(update)
    response = client.post('/api/weights', json=payload)
    assert response.status_code == 400
    assert response.get_json()['type'] == 'DataError'


def test_singular_design_is_unprocessable(client, payload):
    payload['design'] = [row + [row[1]] for row in payload['design']]
    payload['x_star'] = payload['x_star'] + [0.4]
    response = client.post('/api/weights', json=payload)
    assert response.status_code == 422
    assert response.get_json()['type'] == 'SingularDesignError'


def test_predict(client, linear_data):
    X, y = linear_data
    body = client.post('/api/predict', json={
        'train_design': X[:50].tolist(), 'train_response': y[:50].tolist(), 'test_design': X[50:].tolist(),
    }).get_json()
    assert len(body['predictions']) == 10
    assert len(body['weights']) == 10
    assert all(sum(w) == pytest.approx(1.0) for w in body['weights'])
    assert len(body['models']) == 8
