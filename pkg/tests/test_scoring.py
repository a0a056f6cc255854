import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errorsearch.corpus import ResultPage, finalize_pages
from errorsearch.errors import InvalidWeights
from errorsearch.pageextract import PageContent, extract_content
from errorsearch.scoring import (
    QueryFeatures,
    RankingWeights,
    code_context_score,
    content_score,
    context_relevance,
    final_score,
    frame_match,
    popularity,
    rank,
    structural_trace_score,
    trace_match_score,
)
from errorsearch.stacktrace import StackFrame, StackTrace, parse_trace

W = RankingWeights()
unit = st.floats(0.0, 1.0)


def trace(*frames, exc="java.lang.NullPointerException", msg=""):
    fs = tuple(StackFrame(p, c, m, f"{c}.java", 1, i) for i, (p, c, m) in enumerate(frames, start=1))
    return StackTrace(((exc, msg),), fs)


def page_with(*, title="", traces=(), snippets=(), discussion="", blocks=()):
    return PageContent(title=title, code_blocks=tuple(blocks), traces=tuple(traces),
                       snippets=tuple(snippets), discussion=discussion)


# -- weights ------------------------------------------------------------------

def test_default_weights():
    assert W.max_final == pytest.approx(1.5, abs=1e-12)
    assert (W.alpha, W.beta, W.gamma, W.delta, W.sigma) == (0.5, 0.3, 0.2, 0.5, 0.5)
    assert (W.w_st, W.w_cc, W.w_so, W.w_sr) == (0.6, 0.4, 0.7, 0.3)
    assert (W.w_cnt, W.w_cxt, W.w_pop, W.w_sec) == (0.35, 0.85, 0.20, 0.10)


@pytest.mark.parametrize("change", [{"alpha": 0.6}, {"w_st": -0.1, "w_cc": 1.1}, {"w_cnt": float("inf")},
                                    {"bogus": 1.0}])
def test_invalid_weights(change):
    with pytest.raises(InvalidWeights):
        W.override(change)


def test_override_keeps_others():
    w = W.override({"w_st": 1.0, "w_cc": 0.0}, w_pop=0.0)
    assert (w.w_st, w.w_cc, w.w_pop, w.alpha) == (1.0, 0.0, 0.0, 0.5)


# -- content ------------------------------------------------------------------

def test_content_examples():
    msg = "Workbench has not been created yet"
    assert content_score(msg, page_with(title=msg), W) == pytest.approx(W.alpha)
    full = page_with(title=msg, blocks=[msg], discussion=msg)
    assert content_score(msg, full, W) == pytest.approx(1.0)
    assert content_score(msg, page_with(title="Unrelated topic", discussion="cats"), W) == 0.0


# -- structural ----------------------------------------------------------------

def test_frame_match_tiers():
    q = StackFrame("a.b", "C", "m")
    assert frame_match(q, StackFrame("a.b", "C", "m", position=3)) == 1.0
    assert frame_match(q, StackFrame("x.y", "C", "m")) == 0.75
    assert frame_match(q, StackFrame("a.b", "D", "m")) == 0.5
    assert frame_match(q, StackFrame("a.b", "C", "n")) == 0.0


def test_structural_examples():
    t2 = trace(("a", "C", "m"), ("a", "D", "n"))
    assert structural_trace_score(t2, t2) == pytest.approx(0.75, abs=1e-12)
    assert structural_trace_score(t2, trace(("z", "Q", "x"))) == 0.0
    assert structural_trace_score(trace(("a", "C", "m")), trace(("b", "X", "m"))) == 0.5
    assert structural_trace_score(t2, StackTrace((("E", ""),))) == 0.0
    with pytest.raises(ValueError):
        structural_trace_score(StackTrace((("E", ""),)), t2)


def test_candidate_frames_used_once():
    q = trace(("a", "C", "m"), ("a", "C", "m"))
    once = trace(("a", "C", "m"))
    # second query frame finds nothing left: (1 * 1 + 0.5 * 0) / 2
    assert structural_trace_score(q, once) == pytest.approx(0.5)
    assert structural_trace_score(q, trace(("a", "C", "m"), ("a", "C", "m"))) == pytest.approx(0.75)


@given(st.integers(1, 30))
def test_identical_trace_structural_value(n):
    t = trace(*[("p", f"C{i}", f"m{i}") for i in range(n)])
    expected = sum(1 - (i - 1) / n for i in range(1, n + 1)) / n
    assert structural_trace_score(t, t) == pytest.approx(expected, abs=1e-12)


def test_trace_match_examples():
    t = trace(("a.b", "C", "m"))
    verbatim = page_with(traces=[t])
    assert trace_match_score(t, verbatim, W) == pytest.approx(1.0)
    assert trace_match_score(t, page_with(title="x"), W) == 0.0
    other_msg = trace(("a.b", "C", "m"), exc="java.lang.IllegalStateException", msg="totally different words")
    only_struct = W.override(delta=1.0, sigma=0.0)
    assert trace_match_score(t, page_with(traces=[other_msg]), only_struct) == \
        pytest.approx(structural_trace_score(t, other_msg))


names = st.sampled_from(["C", "D", "E"])
frames = st.lists(st.tuples(st.sampled_from(["a", "b"]), names, st.sampled_from(["m", "n"])), min_size=1, max_size=5)


@given(frames, st.lists(frames, max_size=3))
def test_adding_identical_trace_never_lowers(qf, others):
    q = trace(*qf)
    p = page_with(traces=[trace(*o) for o in others])
    before = trace_match_score(q, p, W)
    after = trace_match_score(q, page_with(traces=[*p.traces, q]), W)
    assert after >= before
    assert after >= W.delta * structural_trace_score(q, q) + W.sigma - 1e-12


def test_code_context_max_over_snippets():
    q = ("a", "b", "c", "d")
    p = page_with(snippets=[("a", "x"), ("a", "b", "c"), ()])
    assert code_context_score(q, p) == 0.75
    assert code_context_score((), p) == 0.0
    assert code_context_score(q, page_with()) == 0.0


# -- fusion -------------------------------------------------------------------

def test_relevance_popularity_final_examples():
    assert context_relevance(1, 1, W) == pytest.approx(1.0)
    assert context_relevance(0.5, 0.5, W) == pytest.approx(0.5)
    assert context_relevance(1, 0, W) == pytest.approx(0.6)
    assert context_relevance(0.8, 0.0, W, has_code=False) == 0.8
    assert popularity(1, 1, W) == pytest.approx(1.0)
    assert popularity(0, 0, W) == 0.0
    assert popularity(1, 0, W) == pytest.approx(0.7)
    assert final_score(1, 1, 1, 1, W) == pytest.approx(1.5)
    assert final_score(0, 0, 0, 0, W) == 0.0
    assert final_score(0, 1, 0, 0, W) == pytest.approx(0.85)


@given(unit, unit, unit, unit, st.integers(0, 3), st.floats(1e-3, 0.5))
def test_final_strictly_monotone(a, b, c, d, which, bump):
    args = [a, b, c, d]
    if args[which] + bump > 1.0:
        return
    higher = list(args)
    higher[which] += bump
    assert final_score(*higher, W) > final_score(*args, W)


@given(unit, unit, unit, unit)
def test_fusion_ranges(a, b, c, d):
    assert 0.0 <= context_relevance(a, b, W) <= 1.0
    assert 0.0 <= popularity(c, d, W) <= 1.0
    assert 0.0 <= final_score(a, b, c, d, W) <= W.max_final + 1e-12


# -- ranking ------------------------------------------------------------------

QUERY_TRACE = "java.lang.NullPointerException\n\tat a.b.C.m(C.java:3)\n\tat a.b.D.n(D.java:9)"


def _pages(n, seed=0):
    rng = random.Random(seed)
    words = "null pointer map get value stock order reserve handle thread".split()
    pages = []
    for i in range(n):
        body = " ".join(rng.choice(words) for _ in range(12))
        pre = QUERY_TRACE if rng.random() < 0.3 else "int x = map.get(k);"
        html = f"<title>{' '.join(rng.sample(words, 3))}</title><p>{body}</p><pre>{pre}</pre>"
        pages.append(ResultPage(f"https://h{i % 5}.org/p{i}", f"page {i}", extract_content(html),
                                (("engine-A", i + 1),), raw_confidence=rng.choice([0.29, 0.65, 2.0])))
    return list(finalize_pages("q", pages).pages)


def _features(code="int x = map.get(k);"):
    return QueryFeatures.build("java.lang.NullPointerException", parse_trace(QUERY_TRACE), code)


def test_rank_contiguous_and_sorted():
    out = rank(_pages(25), _features(), W, top_k=10)
    assert [r.rank for r in out] == list(range(1, 11))
    keys = [(-r.s_final, -r.s_sec, r.url) for r in out]
    assert keys == sorted(keys)
    for r in out:
        for v in r.components().values():
            assert 0.0 <= v <= 1.0


def test_rank_single_page_and_top_k_validation():
    one = _pages(1)
    assert [r.rank for r in rank(one, _features(), W)] == [1]
    with pytest.raises(ValueError):
        rank(one, _features(), W, top_k=0)


@given(st.randoms(use_true_random=False))
def test_rank_permutation_invariant(rnd):
    pages = _pages(12, seed=3)
    shuffled = list(pages)
    rnd.shuffle(shuffled)
    assert [r.url for r in rank(shuffled, _features(), W)] == [r.url for r in rank(pages, _features(), W)]


def test_tie_break_on_confidence_then_url():
    content = extract_content("<title>same</title><p>same</p>")
    pages = [ResultPage(u, "t", content, (("engine-A", 1),), raw_confidence=c)
             for u, c in [("https://b.org/", 0.29), ("https://c.org/", 0.29), ("https://a.org/", 0.29),
                          ("https://z.org/", 1.0)]]
    pages = list(finalize_pages("q", pages).pages)
    order = [r.url for r in rank(pages, _features(None), W.override(w_pop=0.0, w_sec=0.0))]
    assert order == ["https://z.org/", "https://a.org/", "https://b.org/", "https://c.org/"]


def test_higher_context_wins():
    trace_page = extract_content(f"<title>x</title><pre>{QUERY_TRACE}</pre>")
    plain = extract_content("<title>x</title><pre>foo();</pre>")
    pages = list(finalize_pages("q", [ResultPage("https://a.org/", "a", plain, (("e", 1),), 1.0),
                                      ResultPage("https://b.org/", "b", trace_page, (("e", 1),), 1.0)]).pages)
    assert rank(pages, _features(None), W)[0].url == "https://b.org/"


def test_zero_context_weight_is_content_only():
    pages = _pages(20, seed=7)
    no_cxt = W.override(w_cxt=0.0, w_pop=0.0, w_sec=0.0)
    ranked = rank(pages, _features(), no_cxt)
    by_content = sorted(ranked, key=lambda r: (-r.s_cms, -r.s_sec, r.url))
    assert [r.url for r in ranked] == [r.url for r in by_content]
