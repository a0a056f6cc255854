# %% [markdown]
# # The HTTP service
#
# The same pipeline is served over JSON. This uses FastAPI's test client, so
# no port is opened. Run `errorsearch --serve` for a real server.

# %%
from fastapi.testclient import TestClient

from errorsearch import load_dataset
from errorsearch.pipeline import bundled_fixtures
from errorsearch.service import create_app

client = TestClient(create_app())
print(client.get("/v1/health").json())

# %%
case = load_dataset(bundled_fixtures() / "dataset.json")[1]
resp = client.post("/v1/search", json={
    "stack_trace": case.stack_trace,
    "raw_message": case.message,
    "context_code": case.context_code,
    "top_k": 3,
})
body = resp.json()
print(resp.status_code, body["provider_query"])
for r in body["results"]:
    print(r["rank"], round(r["s_final"], 3), r["url"])

# %% [markdown]
# Bad requests are rejected with 400 (bad values) or 422 (bad shape).

# %%
print(client.post("/v1/search", json={"stack_trace": case.stack_trace, "weights": {"alpha": 2}}).status_code)
print(client.post("/v1/search", json={"stack_trace": case.stack_trace, "top_k": 0}).status_code)

# %%
report = client.post("/v1/evaluate", json={"ks": [1, 10]}).json()
print({k: {m: v for m, v in s.items() if m != "rows"} for k, s in report["all"].items()})
