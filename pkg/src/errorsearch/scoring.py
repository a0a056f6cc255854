"""Per-page component scores and their fusion into the final ranking."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, fields, replace

from .codecontext import CodeTokenSeq, context_similarity, tokenize_code
from .corpus import Corpus, ResultPage
from .errors import InvalidWeights
from .pageextract import PageContent
from .stacktrace import StackFrame, StackTrace, degree_of_interest, trace_tokens
from .textproc import PROSE, TokenBag, cosine, normalize

__all__ = [
    "RankingWeights",
    "ScoredResult",
    "QueryFeatures",
    "MATCH_FULL",
    "MATCH_CLASS_METHOD",
    "MATCH_METHOD",
    "frame_match",
    "content_score",
    "structural_trace_score",
    "trace_match_score",
    "code_context_score",
    "context_relevance",
    "popularity",
    "final_score",
    "score_page",
    "rank",
]

MATCH_FULL = 1.0
MATCH_CLASS_METHOD = 0.75
MATCH_METHOD = 0.5

_SUM_GROUPS = (
    ("alpha", "beta", "gamma"),
    ("delta", "sigma"),
    ("w_st", "w_cc"),
    ("w_so", "w_sr"),
)


@dataclass(frozen=True)
class RankingWeights:
    # content matching: title, blocks, discussion
    alpha: float = 0.5
    beta: float = 0.3
    gamma: float = 0.2
    # trace matching: structural, lexical
    delta: float = 0.5
    sigma: float = 0.5
    # context relevance: trace, code
    w_st: float = 0.6
    w_cc: float = 0.4
    # popularity: votes, traffic
    w_so: float = 0.7
    w_sr: float = 0.3
    # final fusion; deliberately not normalized
    w_cnt: float = 0.35
    w_cxt: float = 0.85
    w_pop: float = 0.20
    w_sec: float = 0.10

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or v < 0:
                raise InvalidWeights(f"{f.name} must be a finite non-negative number, got {v!r}")
        for group in _SUM_GROUPS:
            total = sum(getattr(self, name) for name in group)
            if abs(total - 1.0) > 1e-9:
                raise InvalidWeights(f"{' + '.join(group)} must sum to 1, got {total}")

    @property
    def max_final(self) -> float:
        return self.w_cnt + self.w_cxt + self.w_pop + self.w_sec

    def as_dict(self) -> dict[str, float]:
        return asdict(self)

    def override(self, changes: Mapping[str, float] | None = None, **kw) -> RankingWeights:
        """Copy with some weights replaced; unknown names are rejected."""
        merged = {**(changes or {}), **kw}
        known = {f.name for f in fields(self)}
        unknown = set(merged) - known
        if unknown:
            raise InvalidWeights(f"unknown weight(s): {sorted(unknown)}")
        return replace(self, **{k: float(v) for k, v in merged.items()})


@dataclass(frozen=True)
class QueryFeatures:
    """Query-side inputs to scoring, computed once per ranking."""

    message_bag: TokenBag
    trace: StackTrace | None
    trace_bag: TokenBag
    code_tokens: CodeTokenSeq

    @property
    def has_code(self) -> bool:
        return bool(self.code_tokens)

    @classmethod
    def build(cls, message: str, trace: StackTrace | None = None, context_code: str | None = None) -> QueryFeatures:
        return cls(
            message_bag=normalize(message or "", PROSE),
            trace=trace,
            trace_bag=trace_tokens(trace) if trace is not None else TokenBag(),
            code_tokens=tokenize_code(context_code) if context_code else (),
        )

    @classmethod
    def from_query(cls, query) -> QueryFeatures:
        return cls.build(query.filtered_message, query.trace, query.context_code)


@dataclass(frozen=True)
class ScoredResult:
    page: ResultPage
    s_cms: float
    s_stm: float
    s_ccx: float
    r_cxt: float
    s_pop: float
    s_sec: float
    s_final: float
    rank: int = 0

    @property
    def url(self) -> str:
        return self.page.canonical_url

    @property
    def title(self) -> str:
        return self.page.title

    def components(self) -> dict[str, float]:
        return {
            "s_cms": self.s_cms,
            "s_stm": self.s_stm,
            "s_ccx": self.s_ccx,
            "r_cxt": self.r_cxt,
            "s_pop": self.s_pop,
            "s_sec": self.s_sec,
        }


def _bag(message) -> TokenBag:
    return message if isinstance(message, TokenBag) else normalize(message or "", PROSE)


def content_score(query_message: str | TokenBag, page: PageContent, w: RankingWeights) -> float:
    """Weighted message similarity against the page title, code blocks and discussion."""
    msg = _bag(query_message)
    s_tts = cosine(msg, page.title_bag)
    s_tcx = cosine(msg, page.context_bag)
    s_tds = cosine(msg, page.discussion_bag)
    return _clip(w.alpha * s_tts + w.beta * s_tcx + w.gamma * s_tds)


def frame_match(q: StackFrame, c: StackFrame) -> float:
    """Confidence that two frames refer to the same call site, by match specificity."""
    if q.method_name != c.method_name:
        return 0.0
    if q.class_name != c.class_name:
        return MATCH_METHOD
    if q.package_name != c.package_name:
        return MATCH_CLASS_METHOD
    return MATCH_FULL


def structural_trace_score(query: StackTrace, candidate: StackTrace) -> float:
    """Mean over query frames of proximity weight times best frame-match confidence.

    Query frames are matched greedily top-down; a candidate frame serves at
    most one query frame.
    """
    n = query.frame_count
    if n == 0:
        raise ValueError("query trace has no frames")
    if candidate.frame_count == 0:
        return 0.0
    unused = list(candidate.frames)
    total = 0.0
    for qf in query.frames:
        best, best_i = 0.0, -1
        for i, cf in enumerate(unused):
            c = frame_match(qf, cf)
            if c > best:
                best, best_i = c, i
                if c == MATCH_FULL:
                    break
        if best_i >= 0:
            unused.pop(best_i)
            total += degree_of_interest(query, qf.position) * best
    return _clip(total / n)


def _trace_pair_score(query: StackTrace, query_bag: TokenBag, cand: StackTrace,
                      cand_bag: TokenBag, w: RankingWeights) -> float:
    s_stc = structural_trace_score(query, cand) if query.frame_count else 0.0
    s_lex = cosine(query_bag, cand_bag)
    return w.delta * s_stc + w.sigma * s_lex


def trace_match_score(query: StackTrace | QueryFeatures, page: PageContent, w: RankingWeights) -> float:
    """Best structural+lexical match between the query trace and any trace on the page."""
    if isinstance(query, QueryFeatures):
        trace, bag = query.trace, query.trace_bag
    else:
        trace, bag = query, trace_tokens(query)
    if trace is None or not page.traces:
        return 0.0
    best = 0.0
    for cand, cand_bag in zip(page.traces, page.trace_bags):
        best = max(best, _trace_pair_score(trace, bag, cand, cand_bag, w))
    return _clip(best)


def code_context_score(query_code: Sequence[str], page: PageContent) -> float:
    """Best clone coverage of the query's context code by any snippet on the page."""
    if not query_code:
        return 0.0
    best = 0.0
    for snippet in page.snippets:
        best = max(best, context_similarity(query_code, snippet))
        if best >= 1.0:
            break
    return best


def context_relevance(s_stm: float, s_ccx: float, w: RankingWeights, has_code: bool = True) -> float:
    """Weighted trace and code-context evidence; trace alone when there is no code."""
    if not has_code:
        return _clip(s_stm)
    return _clip(w.w_st * s_stm + w.w_cc * s_ccx)


def popularity(s_so: float, s_str: float, w: RankingWeights) -> float:
    return _clip(w.w_so * s_so + w.w_sr * s_str)


def final_score(r_cnt: float, r_cxt: float, s_pop: float, s_sec: float, w: RankingWeights) -> float:
    return w.w_cnt * r_cnt + w.w_cxt * r_cxt + w.w_pop * s_pop + w.w_sec * s_sec


def _clip(x: float) -> float:
    # guards against 1.0000000000000002 from float sums of weights
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


def score_page(page: ResultPage, q: QueryFeatures, w: RankingWeights) -> ScoredResult:
    content = page.content
    s_cms = content_score(q.message_bag, content, w)
    s_stm = trace_match_score(q, content, w)
    s_ccx = code_context_score(q.code_tokens, content)
    r_cxt = context_relevance(s_stm, s_ccx, w, has_code=q.has_code)
    s_pop = popularity(page.so_vote_score, page.traffic_score, w)
    s_sec = page.confidence
    s_final = final_score(s_cms, r_cxt, s_pop, s_sec, w)
    return ScoredResult(page, s_cms, s_stm, s_ccx, r_cxt, s_pop, s_sec, s_final)


def rank(corpus: Corpus | Sequence[ResultPage], query, w: RankingWeights | None = None,
         top_k: int = 30) -> list[ScoredResult]:
    """Score every page and return the ``top_k`` best, ranks starting at 1.

    ``query`` is an ``ExceptionQuery`` or a prepared :class:`QueryFeatures`.
    Ties go to the higher provider confidence, then the smaller URL.
    """
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    w = w or RankingWeights()
    q = query if isinstance(query, QueryFeatures) else QueryFeatures.from_query(query)
    pages = corpus.pages if isinstance(corpus, Corpus) else tuple(corpus)
    scored = [score_page(p, q, w) for p in pages]
    scored.sort(key=lambda s: (-s.s_final, -s.s_sec, s.page.canonical_url))
    return [replace(s, rank=i) for i, s in enumerate(scored[:top_k], start=1)]
