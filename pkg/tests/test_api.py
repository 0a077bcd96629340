import pytest
from fastapi.testclient import TestClient

from resgaps.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "resgaps" in response.json()["message"]


class TestCatalogRoutes:
    def test_list(self, client):
        cases = client.get("/api/catalog/cases").json()
        ids = [case["id"] for case in cases]
        assert ids == sorted(ids)
        assert {1, 43, 62} <= set(ids)

    def test_case(self, client):
        record = client.get("/api/catalog/cases/43").json()
        assert record["T"] == "E7"
        assert record["mu"] == "1/2"
        assert record["c_max"] == record["c_min"] == "3/2"

    def test_missing_case(self, client):
        response = client.get("/api/catalog/cases/999")
        assert response.status_code == 404
        assert "999" in response.json()["detail"]

    def test_lookup(self, client):
        record = client.get("/api/catalog/lookup", params={"fibers": "I8,I1,I1,I1,I1"}).json()
        assert record["matches"] == [44, 45]

    def test_lookup_bad_symbol(self, client):
        assert client.get("/api/catalog/lookup", params={"fibers": "I4,XV"}).status_code == 422


class TestGapRoutes:
    def test_scan(self, client):
        record = client.get("/api/gaps/43", params={"max": 5}).json()
        assert record["gaps"] == [1, 4, 5]
        assert record["summary"] == {"realized": 3, "gap": 3, "unknown": 0}

    def test_scan_limit(self, client):
        assert client.get("/api/gaps/43", params={"max": 5000}).status_code == 422

    def test_density(self, client):
        record = client.get("/api/gaps/43/density", params={"max": 10}).json()
        assert record["density"] == "3/5"
        assert record["method"] == "closed-form"

    def test_density_bad_method(self, client):
        assert client.get("/api/gaps/43/density", params={"method": "guess"}).status_code == 422

    def test_one_gap(self, client):
        rows = {row["case_id"]: row for row in client.get("/api/gaps/one-gap").json()}
        assert rows[43] == {"case_id": 43, "has_1_gap": True, "method": "gap-certificate"}
        assert rows[62]["method"] == "rank-zero"

    def test_density_inapplicable(self, client):
        response = client.get("/api/gaps/31/density", params={"method": "closed-form"})
        assert response.status_code == 422


class TestFormRoutes:
    def test_represent(self, client):
        record = client.get("/api/forms/31/represent", params={"target": 2}).json()
        assert record["status"] == "represented"
        assert record["witness"] == [1, 0]

    def test_not_represented(self, client):
        record = client.get("/api/forms/43/represent", params={"target": 7}).json()
        assert record["status"] == "not-represented"
        assert record["witness"] is None
