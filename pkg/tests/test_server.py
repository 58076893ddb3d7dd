import sys
import os
import json

from fastapi.testclient import TestClient

# Add the project root to the Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from tests.utils import run_tests
from vankampen import CombinatorialComplex, entry, load_complex
from vankampen.server import app, register
from vankampen.utils import data_path

client = TestClient(app)

register('torus', load_complex(data_path('torus.cx2')))
register('sphere2', load_complex(data_path('sphere2.cx2')))
register('pair', CombinatorialComplex(('x', 'y'), name='pair'))
register('id(Z2)', entry('id(Z2)'))


def test_pi1():
    response = client.post("/v1/pi1", json={"name": "torus"})
    assert response.status_code == 200
    data = response.json()
    assert data['objects'] == ['v0']
    assert data['relations'] == [{"lhs": "a b a^-1 b^-1", "rhs": "1", "at": "v0"}]


def test_lookup_errors():
    assert client.post("/v1/pi1", json={"name": "nowhere"}).status_code == 404
    assert client.post("/v1/xmod/check", json={"name": "torus"}).status_code == 404
    response = client.post("/v1/pi1", json={"name": "pair", "base": ["x"]})
    assert response.status_code == 422
    assert client.post("/v1/pi1", json={"name": "pair"}).status_code == 200


def test_fox_and_kernel():
    response = client.post("/v1/fox", json={"name": "torus"})
    assert response.status_code == 200
    assert response.json()['generators'] == ['a', 'b']
    response = client.post("/v1/pi2", json={"name": "sphere2", "support": 3, "coeff": 3})
    assert response.status_code == 200
    data = response.json()
    assert data['count'] == 6
    assert data['basis'] == {"n": [{"word": "1", "coeff": 1}], "s": [{"word": "1", "coeff": -1}]}


def test_xmod_check():
    response = client.post("/v1/xmod/check", json={"name": "id(Z2)"})
    assert response.status_code == 200
    assert response.json()['ok'] is True


def test_law_stream():
    response = client.post("/v1/laws/stream", json={"name": "id(Z2)", "laws": ["groupoid_1", "rotation"]})
    assert response.status_code == 200
    events = [json.loads(line[len("data: "):]) for line in response.text.splitlines() if line.startswith("data: ")]
    assert events[0]['type'] == 'start'
    assert events[-1]['type'] == 'end'
    assert events[-1]['payload']['result']['ok'] is True
    assert client.post("/v1/laws/stream", json={"name": "id(Z2)", "laws": ["nonsense"]}).status_code == 422


def test_roundtrip_task():
    response = client.post("/v1/roundtrip", json={"name": "id(Z2)"})
    assert response.status_code == 200
    task_id = response.json()['task_id']
    status = client.get(f"/v1/tasks/{task_id}")
    assert status.status_code == 200
    assert status.json()['status'] in ('pending', 'running', 'completed')
    assert client.get("/v1/tasks/unknown").status_code == 404


def main():
    return run_tests(globals())


if __name__ == '__main__':
    sys.exit(main())
