"""Corpus construction: query providers, merge hits, fetch pages, attach page-level scores.

Providers and fetchers are small duck-typed objects so that the offline
fixture set and live HTTP adapters are interchangeable.  All tests use the
fixture implementations; the live ones are thin ``httpx`` wrappers.
"""

from __future__ import annotations

import json
import logging
import os
import re
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Protocol
from urllib.parse import parse_qsl, urlencode, urlsplit, urlunsplit

from .errors import (
    AllProvidersFailed,
    EmptyCorpus,
    ErrorSearchError,
    FetchError,
    InvalidRank,
    MalformedDocument,
    ProviderUnavailable,
    UnknownProvider,
)
from .pageextract import PageContent, extract_content

logger = logging.getLogger(__name__)

__all__ = [
    "ENGINE_A",
    "ENGINE_B",
    "ENGINE_C",
    "QA_SITE",
    "FIXTURE",
    "canonicalize_url",
    "ProviderConfidenceTable",
    "provider_confidence",
    "SearchHit",
    "ResultPage",
    "Corpus",
    "FixtureManifest",
    "FixtureProvider",
    "FixtureFetcher",
    "HttpFetcher",
    "StackExchangeProvider",
    "RankSource",
    "JsonRankSource",
    "AverageRankSource",
    "url_host",
    "finalize_pages",
    "search",
    "merge_hits",
    "build_corpus",
    "traffic_score",
    "so_vote_score",
]

ENGINE_A = "engine-A"
ENGINE_B = "engine-B"
ENGINE_C = "engine-C"
QA_SITE = "qa-site"
FIXTURE = "fixture"

MAX_LIMIT = 50

_TRACKING_PARAMS = re.compile(
    r"^(utm_\w+|gclid|fbclid|msclkid|yclid|dclid|mc_cid|mc_eid|_ga|_gl|ref_src|igshid)$",
    re.IGNORECASE,
)
_DEFAULT_PORTS = {"http": 80, "https": 443}


def canonicalize_url(url: str) -> str:
    """Normalize a URL for deduplication.

    Lowercases scheme and host, drops default ports, the fragment and known
    tracking parameters, and removes a trailing slash from non-root paths.
    """
    parts = urlsplit(url.strip())
    scheme = parts.scheme.lower()
    host = (parts.hostname or "").lower()
    netloc = host
    if parts.port is not None and _DEFAULT_PORTS.get(scheme) != parts.port:
        netloc = f"{host}:{parts.port}"
    if parts.username:
        cred = parts.username + (f":{parts.password}" if parts.password else "")
        netloc = f"{cred}@{netloc}"
    path = parts.path or "/"
    if len(path) > 1:
        path = path.rstrip("/") or "/"
    query = urlencode(
        [(k, v) for k, v in parse_qsl(parts.query, keep_blank_values=True) if not _TRACKING_PARAMS.match(k)]
    )
    return urlunsplit((scheme, netloc, path, query, ""))


def url_host(url: str) -> str:
    return (urlsplit(url).hostname or "").lower()


# --------------------------------------------------------------------------
# provider confidence


@dataclass(frozen=True)
class ProviderConfidenceTable:
    """Per-provider trust weights.

    ``general`` holds the general-purpose engines, whose values are derived
    from traffic ranks and sum to one.  ``fixed`` holds providers with a
    configured constant (the Q&A site gets 1.0).
    """

    general: Mapping[str, float]
    fixed: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name, value in {**self.general, **self.fixed}.items():
            if not 0.0 < value <= 1.0:
                raise ValueError(f"confidence for {name!r} must be in (0, 1], got {value}")
        overlap = set(self.general) & set(self.fixed)
        if overlap:
            raise ValueError(f"providers listed twice: {sorted(overlap)}")
        if self.general and abs(sum(self.general.values()) - 1.0) > 1e-9:
            raise ValueError("general-engine confidences must sum to 1")

    def __getitem__(self, name: str) -> float:
        if name in self.general:
            return self.general[name]
        return self.fixed[name]

    def __contains__(self, name: str) -> bool:
        return name in self.general or name in self.fixed

    def get(self, name: str, default: float = 0.0) -> float:
        return self[name] if name in self else default

    def as_dict(self) -> dict[str, float]:
        return {**self.general, **self.fixed}

    @classmethod
    def from_config(cls, data: Mapping) -> ProviderConfidenceTable:
        """Build from ``{"general": {...}, "fixed": {...}}`` or ``{"avg_ranks": {...}, "fixed": {...}}``."""
        fixed = {k: float(v) for k, v in data.get("fixed", {}).items()}
        if "avg_ranks" in data:
            return provider_confidence(data["avg_ranks"], fixed)
        return cls({k: float(v) for k, v in data.get("general", {}).items()}, fixed)


def provider_confidence(
    avg_ranks: Mapping[str, float], fixed: Mapping[str, float] | None = None
) -> ProviderConfidenceTable:
    """Confidence of each general engine from the mean popularity rank of its results.

    Ranks are first normalized to shares of their total; the shares are then
    inverted and renormalized, so an engine whose results sit on more popular
    sites (smaller rank numbers) gets the larger confidence.
    """
    if fixed is None:
        fixed = {QA_SITE: 1.0}
    for name, r in avg_ranks.items():
        if not r > 0:
            raise InvalidRank(f"average rank for {name!r} must be positive, got {r}")
    total = sum(avg_ranks.values())
    normal = {name: r / total for name, r in avg_ranks.items()}
    inv_total = sum(1.0 / v for v in normal.values())
    general = {name: (1.0 / v) / inv_total for name, v in normal.items()}
    return ProviderConfidenceTable(general, dict(fixed))


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class SearchHit:
    url: str
    title: str
    rank: int
    provider: str

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be >= 1")


@dataclass(frozen=True)
class ResultPage:
    canonical_url: str
    title: str
    content: PageContent
    providers: tuple[tuple[str, int], ...]
    raw_confidence: float = 0.0
    confidence: float = 0.0
    traffic_score: float = 0.0
    so_vote_score: float = 0.0

    @property
    def url(self) -> str:
        return self.canonical_url

    @property
    def host(self) -> str:
        return url_host(self.canonical_url)


@dataclass(frozen=True)
class Corpus:
    query: str
    pages: tuple[ResultPage, ...]
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        urls = [p.canonical_url for p in self.pages]
        if len(set(urls)) != len(urls):
            raise ValueError("canonical URLs must be unique within a corpus")

    def __len__(self) -> int:
        return len(self.pages)

    def __iter__(self):
        return iter(self.pages)

    def get(self, url: str) -> ResultPage | None:
        key = canonicalize_url(url)
        for p in self.pages:
            if p.canonical_url == key:
                return p
        return None


# --------------------------------------------------------------------------
# providers and fetchers


class SearchProvider(Protocol):
    name: str

    def search(self, query: str, limit: int) -> list[SearchHit]: ...


class PageFetcher(Protocol):
    def fetch(self, url: str) -> str: ...


def _query_key(query: str) -> str:
    return " ".join(query.split()).casefold()


@dataclass
class _ManifestEntry:
    url: str
    title: str
    rank: int
    providers: tuple[str, ...]


class FixtureManifest:
    """Offline search results and page sources loaded from a fixture directory.

    The manifest file maps query text to ranked entries and canonical URLs to
    HTML files relative to the manifest.
    """

    def __init__(self, queries: Mapping[str, list], pages: Mapping[str, str], root: Path):
        self.root = Path(root)
        self.queries: dict[str, list[_ManifestEntry]] = {}
        for q, entries in queries.items():
            self.queries[_query_key(q)] = [
                _ManifestEntry(
                    url=e["url"],
                    title=e.get("title", ""),
                    rank=int(e.get("rank", i + 1)),
                    providers=tuple(e.get("providers", ())),
                )
                for i, e in enumerate(entries)
            ]
        self.pages = {canonicalize_url(u): p for u, p in pages.items()}

    @classmethod
    def load(cls, path: str | os.PathLike) -> FixtureManifest:
        path = Path(path)
        if path.is_dir():
            path = path / "manifest.json"
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return cls(data.get("queries", {}), data.get("pages", {}), path.parent)

    def entries(self, query: str) -> list[_ManifestEntry]:
        return self.queries.get(_query_key(query), [])

    def page_path(self, url: str) -> Path | None:
        rel = self.pages.get(canonicalize_url(url))
        return None if rel is None else self.root / rel

    def provider_names(self) -> list[str]:
        names = {p for entries in self.queries.values() for e in entries for p in e.providers}
        return sorted(names)


class FixtureProvider:
    """Serves manifest entries tagged with this provider's name (``fixture`` serves all)."""

    def __init__(self, manifest: FixtureManifest, name: str = FIXTURE):
        self.manifest = manifest
        self.name = name

    def search(self, query: str, limit: int) -> list[SearchHit]:
        entries = [
            e for e in self.manifest.entries(query)
            if self.name == FIXTURE or self.name in e.providers
        ]
        entries.sort(key=lambda e: (e.rank, e.url))
        return [
            SearchHit(url=e.url, title=e.title, rank=i, provider=self.name)
            for i, e in enumerate(entries[:limit], start=1)
        ]


class FixtureFetcher:
    def __init__(self, manifest: FixtureManifest):
        self.manifest = manifest

    def fetch(self, url: str) -> str:
        path = self.manifest.page_path(url)
        if path is None:
            raise FetchError(f"no fixture page for {url}")
        try:
            return path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FetchError(f"{url}: {exc}") from exc


class HttpFetcher:
    """Fetch live pages with ``httpx``."""

    def __init__(self, timeout: float = 10.0, user_agent: str = "errorsearch/0.1", client=None):
        import httpx

        self._client = client or httpx.Client(
            timeout=timeout, headers={"User-Agent": user_agent}, follow_redirects=True
        )

    def fetch(self, url: str) -> str:
        import httpx

        try:
            resp = self._client.get(url)
            resp.raise_for_status()
        except httpx.HTTPError as exc:
            raise FetchError(f"{url}: {exc}") from exc
        return resp.text


class StackExchangeProvider:
    """Live Q&A search through the public Stack Exchange API."""

    endpoint = "https://api.stackexchange.com/2.3/search/advanced"

    def __init__(self, name: str = QA_SITE, site: str = "stackoverflow", timeout: float = 10.0,
                 user_agent: str = "errorsearch/0.1", client=None):
        import httpx

        self.name = name
        self.site = site
        self._client = client or httpx.Client(timeout=timeout, headers={"User-Agent": user_agent})

    def search(self, query: str, limit: int) -> list[SearchHit]:
        import httpx

        params = {"order": "desc", "sort": "relevance", "q": query, "site": self.site,
                  "pagesize": min(limit, MAX_LIMIT)}
        try:
            resp = self._client.get(self.endpoint, params=params)
            resp.raise_for_status()
            items = resp.json().get("items", [])
        except (httpx.HTTPError, ValueError) as exc:
            raise ProviderUnavailable(self.name, str(exc)) from exc
        hits = []
        for item in items[:limit]:
            if "link" not in item:
                continue
            hits.append(SearchHit(url=item["link"], title=item.get("title", ""),
                                  rank=len(hits) + 1, provider=self.name))
        return hits


def search(registry: Mapping[str, SearchProvider], provider: str, query: str, limit: int = 30) -> list[SearchHit]:
    """Ask one registered provider for at most ``limit`` hits in its rank order."""
    if provider not in registry:
        raise UnknownProvider(provider)
    if not query or not query.strip():
        raise ValueError("query must be non-empty")
    if not 1 <= limit <= MAX_LIMIT:
        raise ValueError(f"limit must be in 1..{MAX_LIMIT}")
    hits = registry[provider].search(query, limit)
    return list(hits[:limit])


# --------------------------------------------------------------------------
# rank sources


class RankSource(Protocol):
    def rank(self, host: str) -> float | None: ...


class JsonRankSource:
    """Host -> popularity rank table; ``www.`` and parent domains are tried in turn."""

    def __init__(self, ranks: Mapping[str, float]):
        self.ranks = {h.lower(): float(r) for h, r in ranks.items()}

    @classmethod
    def load(cls, path: str | os.PathLike) -> JsonRankSource:
        with open(path, encoding="utf-8") as fh:
            return cls(json.load(fh))

    def rank(self, host: str) -> float | None:
        host = host.lower()
        labels = host.split(".")
        for i in range(len(labels) - 1):
            r = self.ranks.get(".".join(labels[i:]))
            if r is not None:
                return r
        return self.ranks.get(host)


class AverageRankSource:
    """Mean of the ranks reported by several sources; unknown where none report."""

    def __init__(self, sources: Sequence[RankSource]):
        self.sources = list(sources)

    def rank(self, host: str) -> float | None:
        found = []
        for src in self.sources:
            try:
                r = src.rank(host)
            except Exception:  # a failing lookup counts as unknown
                logger.debug("rank lookup failed for %s", host, exc_info=True)
                continue
            if r is not None:
                found.append(r)
        return sum(found) / len(found) if found else None


# --------------------------------------------------------------------------
# page-level scores


def _min_max(values: Sequence[float], all_equal: float) -> list[float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        return [all_equal] * len(values)
    return [(v - lo) / (hi - lo) for v in values]


def traffic_score(pages: Sequence, rank_source: RankSource | None) -> list[float]:
    """Popularity of each page's host, min-max normalized and inverted (best host = 1)."""
    urls = [p if isinstance(p, str) else p.canonical_url for p in pages]
    ranks: list[float | None] = []
    cache: dict[str, float | None] = {}
    for url in urls:
        host = url_host(url)
        if host not in cache:
            r = None
            if rank_source is not None:
                try:
                    r = rank_source.rank(host)
                except Exception:
                    logger.debug("rank lookup failed for %s", host, exc_info=True)
            cache[host] = r if r is not None and r > 0 else None
        ranks.append(cache[host])
    known = [r for r in ranks if r is not None]
    if not known:
        return [0.0] * len(urls)
    lo, hi = min(known), max(known)
    out = []
    for r in ranks:
        if r is None:
            out.append(0.0)
        elif hi == lo:
            out.append(1.0)
        else:
            out.append((hi - r) / (hi - lo))
    return out


def so_vote_score(pages: Sequence) -> list[float]:
    """Normalized vote total of each Q&A page; non-Q&A pages score 0."""
    contents = [getattr(p, "content", p) for p in pages]
    totals = [sum(c.vote_counts) if c.is_qa else None for c in contents]
    qa = [t for t in totals if t is not None]
    if not qa:
        return [0.0] * len(contents)
    lam, hi = min(qa), max(qa)
    out = []
    for t in totals:
        if t is None:
            out.append(0.0)
        elif hi == lam:
            out.append(0.5)
        else:
            out.append((t - lam) / (hi - lam))
    return out


# --------------------------------------------------------------------------
# corpus building


@dataclass
class _Merged:
    title: str
    providers: dict[str, int]
    title_key: tuple[str, int] = ("", 0)


def merge_hits(hit_lists: Iterable[Sequence[SearchHit]]) -> dict[str, _Merged]:
    """Merge provider hit lists by canonical URL.

    Keeps each provider's best rank for a URL; the title comes from the
    provider that sorts first by (name, rank).  The result does not depend on
    the order in which hit lists arrive, and merging a list twice changes
    nothing.
    """
    by_url: dict[str, _Merged] = {}
    for hits in hit_lists:
        for hit in hits:
            key = canonicalize_url(hit.url)
            tkey = (hit.provider, hit.rank)
            merged = by_url.get(key)
            if merged is None:
                by_url[key] = _Merged(hit.title, {hit.provider: hit.rank}, tkey)
                continue
            prev = merged.providers.get(hit.provider)
            if prev is None or hit.rank < prev:
                merged.providers[hit.provider] = hit.rank
            if tkey < merged.title_key or (tkey == merged.title_key and hit.title < merged.title):
                merged.title, merged.title_key = hit.title, tkey
    return dict(sorted(by_url.items()))


def build_corpus(
    query: str,
    providers: Sequence[str],
    per_provider_limit: int,
    confidences: ProviderConfidenceTable,
    registry: Mapping[str, SearchProvider],
    fetcher: PageFetcher,
    rank_source: RankSource | None = None,
    max_workers: int = 8,
) -> Corpus:
    """Search every provider, merge, fetch and extract pages, and attach page scores."""
    if not providers:
        raise ValueError("at least one provider is required")
    warnings: list[str] = []
    names = sorted(set(providers))

    def run(name: str):
        try:
            return name, search(registry, name, query, per_provider_limit), None
        except (ProviderUnavailable, UnknownProvider) as exc:
            return name, [], exc

    with ThreadPoolExecutor(max_workers=max(1, min(max_workers, len(names)))) as pool:
        results = list(pool.map(run, names))

    hit_lists = []
    failed = 0
    for name, hits, exc in results:
        if exc is not None:
            failed += 1
            msg = f"provider {name} failed: {exc}"
            logger.warning(msg)
            warnings.append(msg)
        else:
            hit_lists.append(hits)
    if failed == len(names):
        raise AllProvidersFailed("all providers failed", warnings)

    merged = merge_hits(hit_lists)

    def fetch(url: str):
        try:
            return url, extract_content(fetcher.fetch(url), url), None
        except (FetchError, MalformedDocument, ErrorSearchError) as exc:
            return url, None, exc
        except Exception as exc:  # third-party fetchers may raise anything
            return url, None, exc

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as pool:
        fetched = list(pool.map(fetch, list(merged)))

    pages: list[ResultPage] = []
    for url, content, exc in fetched:
        if content is None:
            msg = f"dropped {url}: {exc}"
            logger.info(msg)
            warnings.append(msg)
            continue
        m = merged[url]
        raw = sum(confidences.get(name) for name in m.providers)
        pages.append(
            ResultPage(
                canonical_url=url,
                title=m.title or content.title,
                content=content,
                providers=tuple(sorted(m.providers.items())),
                raw_confidence=raw,
            )
        )
    if not pages:
        raise EmptyCorpus(f"no result pages survived for query {query!r}", warnings)
    return finalize_pages(query, pages, rank_source, warnings)


def finalize_pages(
    query: str,
    pages: Sequence[ResultPage],
    rank_source: RankSource | None = None,
    warnings: Sequence[str] = (),
) -> Corpus:
    """Normalize confidences and attach traffic and vote scores over a page set."""
    if not pages:
        raise EmptyCorpus("no pages", list(warnings))
    conf = _min_max([p.raw_confidence for p in pages], all_equal=1.0)
    traffic = traffic_score(pages, rank_source)
    votes = so_vote_score(pages)
    done = tuple(
        replace(p, confidence=c, traffic_score=t, so_vote_score=v)
        for p, c, t, v in zip(pages, conf, traffic, votes)
    )
    return Corpus(query=query, pages=done, warnings=tuple(warnings))
