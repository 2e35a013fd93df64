"""
Testes dos endpoints HTTP com o TestClient do FastAPI.
"""

import pytest
from fastapi.testclient import TestClient

from vtree.api.main import app

MU1 = {
    "kind": "ordinary",
    "parent": {"kind": "depth0", "a": "0", "delta": "3/5"},
    "phi": "phi1",
    "gamma": "10/3",
}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def _depth0(a, delta):
    return {"kind": "depth0", "a": str(a), "delta": str(delta)}


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["endpoints"]["valuations"]["eval"] == "/api/v1/valuations/eval"


def test_health(client):
    body = client.get("/api/v1/health/").json()
    assert body["status"] == "healthy"
    assert body["config"]["rank"] >= 3


class TestEval:
    def test_named_polynomial(self, client):
        response = client.post(
            "/api/v1/valuations/eval", json={"node": MU1, "poly": "phi2", "prime": 7}
        )
        assert response.status_code == 200
        assert response.json()["value"] == "(0|10|0)"

    def test_coefficient_list(self, client):
        response = client.post(
            "/api/v1/valuations/eval",
            json={"node": _depth0(0, 1), "poly": ["49", "0", "1"], "prime": 7},
        )
        assert response.json()["value"] == "(0|2|0)"

    def test_float_is_rejected(self, client):
        node = {"kind": "depth0", "a": 0, "delta": 0.5}
        response = client.post("/api/v1/valuations/eval", json={"node": node, "poly": "x"})
        assert response.status_code == 422

    def test_malformed_polynomial(self, client):
        response = client.post(
            "/api/v1/valuations/eval", json={"node": _depth0(0, 1), "poly": "x^"}
        )
        assert response.status_code == 422
        assert response.json()["detail"].startswith("InputParseError")

    def test_precondition_is_bad_request(self, client):
        node = {"kind": "ordinary", "parent": _depth0(0, "3/5"), "phi": "phi1", "gamma": "3"}
        response = client.post(
            "/api/v1/valuations/eval", json={"node": node, "poly": "x", "prime": 7}
        )
        assert response.status_code == 400
        assert "PreconditionError" in response.json()["detail"]

    def test_invalid_prime(self, client):
        response = client.post(
            "/api/v1/valuations/eval", json={"node": _depth0(0, 1), "poly": "x", "prime": 9}
        )
        assert response.status_code == 400


class TestTree:
    def test_leq(self, client):
        pair = {"first": _depth0(0, 1), "second": _depth0(7, 2), "prime": 7}
        body = client.post("/api/v1/valuations/leq", json=pair).json()
        assert body == {"leq": True, "geq": False, "same": False}

    def test_gcln(self, client):
        pair = {"first": _depth0(0, 3), "second": _depth0(7, 2), "prime": 7}
        body = client.post("/api/v1/valuations/gcln", json=pair).json()
        assert body["sv"] == "(0|1|0)"
        assert body["node"]["kind"] in ("depth0", "ordinary")

    def test_distance(self, client):
        pair = {"first": _depth0(0, 3), "second": _depth0(7, 2), "prime": 7}
        body = client.post("/api/v1/valuations/distance", json=pair).json()
        assert body["distance"] == "(0|3|0)"

    def test_distance_to_leaf(self, client):
        leaf = {"kind": "ordinary", "parent": _depth0(0, 0), "phi": "x", "gamma": "inf"}
        pair = {"first": leaf, "second": _depth0(0, 1), "prime": 7}
        response = client.post("/api/v1/valuations/distance", json=pair)
        assert response.status_code == 400
        assert "DomainError" in response.json()["detail"]


def test_sme_classify(client):
    body = client.post("/api/v1/valuations/sme/classify", json={"value": "(0|1|-4)"}).json()
    assert body["cut"] == "ball_minus(1)"
    assert body["canonical"] == "(0|1|-1)"


def test_vaquie_example(client):
    response = client.get("/api/v1/valuations/example/vaquie", params={"prime": 11})
    body = response.json()
    assert response.status_code == 200
    assert body["ramification"] == 30
    assert body["prime"] == 11
    assert [row["label"] for row in body["scaled_rows"]][-1] == "ν = 30μ3"
    assert body["chain"]["steps"][-1]["gamma"] == "inf"


def test_vaquie_forbidden_prime(client):
    response = client.get("/api/v1/valuations/example/vaquie", params={"prime": 5})
    assert response.status_code == 400
    assert "ConfigurationError" in response.json()["detail"]
