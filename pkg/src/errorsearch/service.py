"""JSON-over-HTTP front end for the search pipeline.

``POST /v1/search`` ranks results for one exception, ``GET /v1/health``
reports readiness and ``POST /v1/evaluate`` runs the metrics over a dataset.
All shared state (settings, provider registry, fixtures) is built once in
``create_app`` and never mutated; every request builds its own corpus.
"""

from __future__ import annotations

import logging
import time
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .corpus import MAX_LIMIT, canonicalize_url
from .errors import AllProvidersFailed, EmptyCorpus, InvalidWeights, QueryValidationError
from .evalkit import MASKS
from .pipeline import Case, SearchPipeline, bundled_fixtures, load_dataset, run_evaluation
from .queryform import ExceptionQuery

logger = logging.getLogger(__name__)

__all__ = ["SearchRequest", "EvaluateRequest", "create_app"]


class SearchRequest(BaseModel):
    mode: Literal["interactive", "proactive"] = "proactive"
    user_query: str | None = None
    raw_message: str | None = None
    stack_trace: str = Field(min_length=1)
    context_code: str | None = None
    top_k: int = Field(30, ge=1, le=MAX_LIMIT)
    weights: dict[str, float] | None = None
    providers: list[str] | None = None


class CaseModel(BaseModel):
    id: str
    message: str = ""
    stack_trace: str
    context_code: str | None = None
    query: str | None = None
    relevant_urls: list[str] = Field(min_length=1)


class EvaluateRequest(BaseModel):
    mode: Literal["interactive", "proactive"] = "proactive"
    ks: list[int] = Field(default_factory=lambda: [10, 20, 30])
    ablation: bool = False
    with_code: bool = True
    weights: dict[str, float] | None = None
    cases: list[CaseModel] | None = None


def _weights(pipeline: SearchPipeline, overrides):
    try:
        return pipeline.settings.weights.override(overrides or {})
    except InvalidWeights as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def create_app(pipeline: SearchPipeline | None = None) -> FastAPI:
    """Build the service around ``pipeline`` (the bundled fixtures by default)."""
    pipeline = pipeline or SearchPipeline.from_fixtures()
    app = FastAPI(title="errorsearch", version=__version__)

    @app.get("/v1/health")
    def health():
        return {
            "status": "ok",
            "version": __version__,
            "providers": list(pipeline.settings.providers),
        }

    @app.post("/v1/search")
    def search(req: SearchRequest):
        t0 = time.perf_counter()
        try:
            query = ExceptionQuery.create(
                req.stack_trace, req.raw_message, req.context_code, req.mode,
                req.user_query if req.mode == "interactive" else None,
            )
        except QueryValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        if req.mode == "proactive" and req.user_query:
            raise HTTPException(status_code=400, detail="proactive mode does not accept a user query")
        weights = _weights(pipeline, req.weights)
        unknown = sorted(set(req.providers or ()) - set(pipeline.registry))
        if unknown:
            raise HTTPException(status_code=400, detail=f"unknown provider(s): {unknown}")
        try:
            outcome = pipeline.search(query, weights, req.top_k, req.providers)
        except AllProvidersFailed as exc:
            raise HTTPException(status_code=502, detail={"error": str(exc), "warnings": exc.warnings}) from exc
        except EmptyCorpus as exc:
            provider_query = query.provider_query()
            return {
                "query": req.model_dump(exclude={"weights"}),
                "provider_query": provider_query,
                "results": [],
                "warnings": list(exc.warnings) + [str(exc)],
                "timing": {"fetch_ms": 0.0, "score_ms": 0.0,
                           "total_ms": (time.perf_counter() - t0) * 1000.0},
            }
        return {
            "query": req.model_dump(exclude={"weights"}),
            "provider_query": outcome.provider_query,
            "results": [
                {"rank": r.rank, "url": r.url, "title": r.title, "s_final": r.s_final, **r.components()}
                for r in outcome.results
            ],
            "warnings": outcome.warnings,
            "timing": {
                "fetch_ms": outcome.fetch_ms,
                "score_ms": outcome.score_ms,
                "total_ms": (time.perf_counter() - t0) * 1000.0,
            },
        }

    @app.post("/v1/evaluate")
    def evaluate_endpoint(req: EvaluateRequest):
        if not req.ks or min(req.ks) < 1:
            raise HTTPException(status_code=400, detail="ks must be non-empty positive cutoffs")
        weights = _weights(pipeline, req.weights)
        if req.cases is None:
            cases = load_dataset(bundled_fixtures() / "dataset.json")
        else:
            cases = [
                Case(c.id, c.message, c.stack_trace, frozenset(canonicalize_url(u) for u in c.relevant_urls),
                     c.context_code, c.query)
                for c in req.cases
            ]
        try:
            table = run_evaluation(pipeline, cases, req.mode, tuple(req.ks), weights,
                                   MASKS if req.ablation else None, req.with_code)
        except QueryValidationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return {
            name: {str(k): {**rep.summary(), "rows": rep.rows} for k, rep in reports.items()}
            for name, reports in table.items()
        }

    return app
