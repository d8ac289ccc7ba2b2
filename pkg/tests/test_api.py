import pytest
from fastapi.testclient import TestClient

from app.core.suite_data import SUITE_ORDER
from main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root_and_health(client):
    assert client.get("/").json()["health"] == "/api/v1/health"
    health = client.get("/api/v1/health").json()
    assert health["status"] == "healthy"


def test_bracket(client):
    response = client.post("/api/v1/bracket", json={"left": "t1*D1", "right": "t1^-1*D1", "m": 1, "n": 0})
    assert response.status_code == 200
    data = response.json()
    assert data["text"] == "-2*D1"
    assert data["parity"] == 0
    assert data["json_form"] == {"terms": [{"c": "-2", "t": [0], "xi": [], "gen": "d1"}]}


def test_parse(client):
    response = client.post("/api/v1/parse", json={"text": "x1*x1 + 1/2*t1", "m": 1, "n": 1})
    data = response.json()
    assert data["canonical"] == "x1*x1 + 1/2*t1"
    assert data["value"] == "1/2*t1"
    assert data["sort"] == "function"


def test_syntax_error_is_a_bad_request(client):
    response = client.post("/api/v1/parse", json={"text": "t1^^2"})
    assert response.status_code == 400
    assert "column 3" in response.json()["detail"]


def test_wrong_sort_is_a_bad_request(client):
    response = client.post("/api/v1/bracket", json={"left": "t1", "right": "D1", "m": 1, "n": 0})
    assert response.status_code == 400


def test_unknown_kind_is_rejected(client):
    response = client.post("/api/v1/parse", json={"text": "D1", "kind": "sl2"})
    assert response.status_code == 422


def test_apply(client):
    response = client.post("/api/v1/apply", json={"field": "x1*P1", "function": "x1*t1^2", "m": 1, "n": 1})
    assert response.json()["text"] == "t1^2*x1"


def test_act(client):
    payload = {
        "module": {"kind": "wmn", "m": 1, "n": 0, "rep": "trivial", "lam": ["1/2"]},
        "field": "t1*D1",
        "vector": "t1^2",
    }
    response = client.post("/api/v1/act", json=payload)
    assert response.status_code == 200
    assert response.json()["text"] == "5/2*t1^3*v0"


def test_module_shape_is_validated(client):
    payload = {"module": {"kind": "wmn", "m": 1, "n": 0, "lam": ["1/2", "1/3"]}, "field": "D1", "vector": "1"}
    assert client.post("/api/v1/act", json=payload).status_code == 422


def test_multiplicity(client):
    module = {"kind": "wmn", "m": 1, "n": 1, "rep": "natural", "lam": ["1/2"]}
    single = client.post("/api/v1/multiplicity", json={"module": module, "weight": ["3/2"]}).json()
    assert single["multiplicity"] == 4
    table = client.post("/api/v1/multiplicity", json={"module": module, "radius": 1}).json()["table"]
    assert [row["offset"] for row in table] == [[-1], [0], [1]]


def test_twist_weights(client):
    response = client.post("/api/v1/twist", json={"theta": [[1, 1], [0, 1]], "m": 1, "weights": [["1", "0"]]})
    assert response.json()["weights"] == [["1", "-1"]]


def test_singular_twist_is_a_bad_request(client):
    response = client.post("/api/v1/twist", json={"theta": [[1, 1], [1, 1]], "m": 1, "weights": [["1", "0"]]})
    assert response.status_code == 400


def test_verma(client):
    report = client.post("/api/v1/verma", json={"m": 0, "n": 0, "lam0": "1", "depth": 2}).json()["report"]
    assert report["quotient_dims"] == [1, 1, 2]
    assert report["approximate"] is False


def test_suites_and_verify(client):
    listing = client.get("/api/v1/suites").json()
    assert listing["count"] == len(SUITE_ORDER)
    report = client.post("/api/v1/verify", json={"suite": "jacobi", "samples": 5}).json()
    assert report["passed"] is True
    assert report["exit_code"] == 0


def test_verify_reports_planted_failures(client):
    report = client.post("/api/v1/verify", json={"suite": "module-axiom", "samples": 20, "corrupt_sign": True}).json()
    assert report["passed"] is False
    assert report["exit_code"] == 1
