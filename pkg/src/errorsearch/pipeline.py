"""End-to-end search: exception query -> provider query -> corpus -> ranked results."""

from __future__ import annotations

import json
import logging
import os
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .config import Settings, load_settings
from .corpus import (
    Corpus,
    FixtureFetcher,
    FixtureManifest,
    FixtureProvider,
    JsonRankSource,
    RankSource,
    build_corpus,
    canonicalize_url,
)
from .errors import EmptyCorpus
from .evalkit import MASKS, EvalReport, ablation, evaluate
from .queryform import INTERACTIVE, PROACTIVE, ExceptionQuery
from .scoring import QueryFeatures, RankingWeights, ScoredResult, rank

logger = logging.getLogger(__name__)

__all__ = [
    "bundled_fixtures",
    "SearchOutcome",
    "SearchPipeline",
    "Case",
    "load_dataset",
    "run_evaluation",
]


def bundled_fixtures() -> Path:
    """Directory of the offline fixture set shipped with the package."""
    return Path(str(resources.files("errorsearch").joinpath("fixtures")))


@dataclass
class SearchOutcome:
    provider_query: str
    results: list[ScoredResult]
    corpus: Corpus
    fetch_ms: float
    score_ms: float
    warnings: list[str] = field(default_factory=list)


class SearchPipeline:
    """Collects results from providers, scores them and ranks them."""

    def __init__(self, settings: Settings, registry: Mapping, fetcher, rank_source: RankSource | None = None,
                 max_workers: int = 8):
        self.settings = settings
        self.registry = dict(registry)
        self.fetcher = fetcher
        self.rank_source = rank_source
        self.max_workers = max_workers

    @classmethod
    def from_fixtures(cls, fixture_dir: str | os.PathLike | None = None,
                      settings: Settings | None = None) -> SearchPipeline:
        root = Path(fixture_dir) if fixture_dir is not None else bundled_fixtures()
        manifest = FixtureManifest.load(root)
        settings = settings or load_settings()
        names = set(settings.providers) | set(manifest.provider_names()) | {"fixture"}
        registry = {name: FixtureProvider(manifest, name) for name in sorted(names)}
        ranks_path = root / "ranks.json"
        rank_source = JsonRankSource.load(ranks_path) if ranks_path.exists() else None
        return cls(settings, registry, FixtureFetcher(manifest), rank_source)

    def build(self, provider_query: str, providers: Sequence[str] | None = None) -> Corpus:
        names = list(providers) if providers else list(self.settings.providers)
        limit = max(self.settings.limit_for(n) for n in names)
        return build_corpus(
            provider_query,
            names,
            limit,
            self.settings.confidences,
            self.registry,
            self.fetcher,
            self.rank_source,
            self.max_workers,
        )

    def search(self, query: ExceptionQuery, weights: RankingWeights | None = None, top_k: int | None = None,
               providers: Sequence[str] | None = None) -> SearchOutcome:
        weights = weights or self.settings.weights
        top_k = top_k or self.settings.top_k
        provider_query = query.provider_query()
        t0 = time.perf_counter()
        corpus = self.build(provider_query, providers)
        t1 = time.perf_counter()
        results = rank(corpus, query, weights, top_k)
        t2 = time.perf_counter()
        return SearchOutcome(
            provider_query=provider_query,
            results=results,
            corpus=corpus,
            fetch_ms=(t1 - t0) * 1000.0,
            score_ms=(t2 - t1) * 1000.0,
            warnings=list(corpus.warnings),
        )


@dataclass(frozen=True)
class Case:
    id: str
    message: str
    stack_trace: str
    relevant_urls: frozenset[str]
    context_code: str | None = None
    query: str | None = None

    def to_query(self, mode: str = PROACTIVE, with_code: bool = True) -> ExceptionQuery:
        code = self.context_code if with_code else None
        if mode == INTERACTIVE:
            return ExceptionQuery.create(self.stack_trace, self.message, code, INTERACTIVE, self.query or self.message)
        return ExceptionQuery.create(self.stack_trace, self.message, code, PROACTIVE)


def load_dataset(path: str | os.PathLike) -> list[Case]:
    """Read evaluation cases: a JSON list (or ``{"cases": [...]}``) of case objects."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, Mapping):
        data = data["cases"]
    cases = []
    for item in data:
        urls = frozenset(canonicalize_url(u) for u in item["relevant_urls"])
        if not urls:
            raise ValueError(f"case {item['id']!r} has no relevant URLs")
        cases.append(Case(
            id=str(item["id"]),
            message=item.get("message", ""),
            stack_trace=item["stack_trace"],
            relevant_urls=urls,
            context_code=item.get("context_code") or None,
            query=item.get("query") or None,
        ))
    return cases


def run_evaluation(
    pipeline: SearchPipeline,
    cases: Sequence[Case],
    mode: str = PROACTIVE,
    ks: Sequence[int] = (10, 20, 30),
    weights: RankingWeights | None = None,
    masks: Mapping | None = None,
    with_code: bool = True,
) -> dict[str, dict[int, EvalReport]]:
    """Evaluate the dataset; with ``masks`` each score-aspect subset gets its own reports.

    Corpora are built once per case and re-ranked under every weight mask.
    """
    weights = weights or pipeline.settings.weights
    truth = {c.id: c.relevant_urls for c in cases}
    prepared: dict[str, tuple[Corpus, QueryFeatures] | None] = {}
    for case in cases:
        query = case.to_query(mode, with_code=with_code)
        try:
            corpus = pipeline.build(query.provider_query())
        except EmptyCorpus as exc:
            logger.warning("case %s: %s", case.id, exc)
            prepared[case.id] = None
            continue
        prepared[case.id] = (corpus, QueryFeatures.from_query(query))

    depth = max(ks)

    def rank_case(cid: str, w: RankingWeights):
        entry = prepared[cid]
        if entry is None:
            return None
        corpus, features = entry
        return rank(corpus, features, w, top_k=depth)

    ids = [c.id for c in cases]
    if masks is None:
        masks = {"all": MASKS["all"]}
    return ablation(rank_case, ids, truth, weights, masks, ks)
