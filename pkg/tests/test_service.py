import pytest
from fastapi.testclient import TestClient

from errorsearch.corpus import ProviderConfidenceTable
from errorsearch.errors import ProviderUnavailable
from errorsearch.pipeline import SearchPipeline
from errorsearch.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(SearchPipeline.from_fixtures()))


@pytest.fixture(scope="module")
def body(cases):
    case = next(c for c in cases if c.id == "npe-map-unboxing")
    return {"mode": "proactive", "raw_message": case.message, "stack_trace": case.stack_trace,
            "context_code": case.context_code, "top_k": 10}


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200 and r.json()["status"] == "ok"


def test_proactive_search(client, body, cases):
    r = client.post("/v1/search", json=body)
    assert r.status_code == 200
    data = r.json()
    assert len(data["results"]) == 10
    assert [x["rank"] for x in data["results"]] == list(range(1, 11))
    assert data["results"][0]["url"] in next(c for c in cases if c.id == "npe-map-unboxing").relevant_urls
    assert data["provider_query"].startswith("java.lang.NullPointerException")
    assert set(data["timing"]) == {"fetch_ms", "score_ms", "total_ms"}
    for x in data["results"]:
        assert 0 <= x["s_final"] <= 1.5
        assert all(0 <= x[k] <= 1 for k in ("s_cms", "s_stm", "s_ccx", "r_cxt", "s_pop", "s_sec"))


def test_identical_requests_identical_output(client, body):
    first = [x["url"] for x in client.post("/v1/search", json=body).json()["results"]]
    for _ in range(3):
        assert [x["url"] for x in client.post("/v1/search", json=body).json()["results"]] == first


def test_weight_override(client, body):
    r = client.post("/v1/search", json={**body, "weights": {"w_cxt": 0.0}})
    assert r.status_code == 200
    assert all(x["s_final"] <= 0.65 + 1e-9 for x in r.json()["results"])


@pytest.mark.parametrize("patch, status", [
    ({"mode": "interactive"}, 400),
    ({"mode": "interactive", "user_query": ""}, 400),
    ({"user_query": "npe"}, 400),
    ({"mode": "sideways"}, 422),
    ({"stack_trace": "just some words"}, 400),
    ({"stack_trace": ""}, 422),
    ({"top_k": 0}, 422),
    ({"top_k": 51}, 422),
    ({"weights": {"w_st": 0.9}}, 400),
    ({"weights": {"nonsense": 1}}, 400),
    ({"providers": ["engine-Z"]}, 400),
])
def test_validation(client, body, patch, status):
    assert client.post("/v1/search", json={**body, **patch}).status_code == status


def test_interactive_search(client, body, cases):
    case = next(c for c in cases if c.id == "npe-map-unboxing")
    r = client.post("/v1/search", json={**body, "mode": "interactive", "user_query": case.query})
    assert r.status_code == 200 and r.json()["provider_query"] == case.query


def test_unknown_query_is_empty_not_error(client):
    r = client.post("/v1/search", json={"stack_trace": "java.lang.Error: zzz\n\tat a.B.c(B.java:1)"})
    assert r.status_code == 200
    assert r.json()["results"] == [] and r.json()["warnings"]


class Down:
    def __init__(self, name):
        self.name = name

    def search(self, query, limit):
        raise ProviderUnavailable(self.name, "offline")


def _degraded(names_down):
    p = SearchPipeline.from_fixtures()
    for name in names_down:
        p.registry[name] = Down(name)
    return TestClient(create_app(p))


def test_all_providers_down(body):
    r = _degraded(["engine-A", "engine-B", "engine-C", "qa-site"]).post("/v1/search", json=body)
    assert r.status_code == 502


def test_partial_outage_warns(body):
    r = _degraded(["engine-B"]).post("/v1/search", json=body)
    assert r.status_code == 200
    assert r.json()["results"] and any("engine-B" in w for w in r.json()["warnings"])


def test_evaluate_endpoint(client):
    r = client.post("/v1/evaluate", json={"ks": [10], "ablation": True})
    assert r.status_code == 200
    data = r.json()
    assert set(data) == {"content", "content+context", "content+context+popularity", "all"}
    assert data["all"]["10"]["Recall"] >= data["content"]["10"]["Recall"]
    assert client.post("/v1/evaluate", json={"ks": [0]}).status_code == 400


def test_evaluate_inline_cases(client, cases):
    c = cases[0]
    payload = {"ks": [5], "cases": [{"id": c.id, "message": c.message, "stack_trace": c.stack_trace,
                                     "relevant_urls": sorted(c.relevant_urls)}]}
    r = client.post("/v1/evaluate", json=payload)
    assert r.status_code == 200 and r.json()["all"]["5"]["cases"] == 1
