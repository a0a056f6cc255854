"""Extraction of titles, code/trace blocks, discussion text and votes from HTML."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import cached_property

from bs4 import BeautifulSoup, Comment, MarkupResemblesLocatorWarning, NavigableString, Tag

from .codecontext import CodeTokenSeq, tokenize_code
from .errors import MalformedDocument, NoTraceFound
from .stacktrace import StackTrace, continues_trace, parse_trace, trace_tokens
from .textproc import PROSE, TokenBag, normalize

__all__ = [
    "TRACE",
    "SNIPPET",
    "PageContent",
    "classify_block",
    "extract_content",
    "extract_votes",
]

TRACE = "trace"
SNIPPET = "snippet"

BLOCK_TAGS = ("pre", "code", "blockquote")
_INVISIBLE = ("script", "style", "noscript", "template", "head", "title")
_WS = re.compile(r"\s+")
_INT = re.compile(r"[-+−]?\d[\d,]*")

warnings.filterwarnings("ignore", category=MarkupResemblesLocatorWarning)


@dataclass(frozen=True)
class PageContent:
    title: str
    code_blocks: tuple[str, ...] = ()
    traces: tuple[StackTrace, ...] = ()
    snippets: tuple[CodeTokenSeq, ...] = ()
    discussion: str = ""
    vote_counts: tuple[int, ...] = ()
    url: str = ""

    @property
    def is_qa(self) -> bool:
        return bool(self.vote_counts)

    # Derived bags are cached on first use; the dataclass itself stays immutable.
    @cached_property
    def title_bag(self) -> TokenBag:
        return normalize(self.title, PROSE)

    @cached_property
    def context_bag(self) -> TokenBag:
        return normalize("\n".join(self.code_blocks), PROSE)

    @cached_property
    def discussion_bag(self) -> TokenBag:
        return normalize(self.discussion, PROSE)

    @cached_property
    def trace_bags(self) -> tuple[TokenBag, ...]:
        return tuple(trace_tokens(t) for t in self.traces)


def classify_block(block: str) -> str:
    """``trace`` when the block parses as a stack trace with frames, else ``snippet``."""
    try:
        trace = parse_trace(block)
    except NoTraceFound:
        return SNIPPET
    return TRACE if trace.frame_count >= 1 else SNIPPET


def _outermost_blocks(root: Tag) -> list[Tag]:
    return [
        el for el in root.find_all(BLOCK_TAGS)
        if el.find_parent(BLOCK_TAGS) is None
    ]


def _next_element_sibling(el: Tag) -> Tag | None:
    sib = el.next_sibling
    while sib is not None:
        if isinstance(sib, Tag):
            return sib
        if isinstance(sib, NavigableString) and not isinstance(sib, Comment) and sib.strip():
            return None
        sib = sib.next_sibling
    return None


def _group_blocks(blocks: list[Tag]) -> list[list[Tag]]:
    # Traces are often split over adjacent <pre>/<code> elements; join them.
    # Only a continuation is joined, so code shown right after a trace stays
    # a separate snippet.
    groups: list[list[Tag]] = []
    for el in blocks:
        if groups:
            prev = groups[-1][-1]
            if (prev.name in ("pre", "code") and el.name in ("pre", "code")
                    and _next_element_sibling(prev) is el and continues_trace(el.get_text())):
                groups[-1].append(el)
                continue
        groups.append([el])
    return groups


def _visible_text(node) -> str:
    parts = []
    for s in node.find_all(string=True):
        if isinstance(s, Comment):
            continue
        parts.append(str(s))
    return _WS.sub(" ", " ".join(parts)).strip()


def _parse_int(text: str) -> int | None:
    m = _INT.search(text or "")
    if not m:
        return None
    raw = m.group().replace(",", "").replace("−", "-")
    try:
        return int(raw)
    except ValueError:
        return None


def _votes_from_soup(soup: BeautifulSoup) -> list[int]:
    marked = soup.find_all(attrs={"data-vote-count": True})
    if marked:
        votes = [_parse_int(el.get("data-vote-count")) for el in marked]
        return [v for v in votes if v is not None]
    # Best-effort fallback for live Q&A markup.
    votes = []
    for el in soup.select('[itemprop="upvoteCount"], .js-vote-count, .vote-count-post'):
        v = _parse_int(el.get("data-value") or el.get_text())
        if v is not None:
            votes.append(v)
    return votes


def _soup(html: str | bytes) -> BeautifulSoup:
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    return BeautifulSoup(html, "html.parser")


def extract_votes(html: str | bytes) -> list[int]:
    """Per-post vote scores in document order; empty when the page has no vote markup."""
    return _votes_from_soup(_soup(html))


def extract_content(html: str | bytes, url: str = "") -> PageContent:
    """Split an HTML page into the pieces the scorers consume."""
    if isinstance(html, bytes):
        html = html.decode("utf-8", errors="replace")
    if not html or not html.strip():
        raise MalformedDocument(f"empty document: {url or '<no url>'}")
    soup = _soup(html)
    votes = _votes_from_soup(soup)

    title = ""
    if soup.title is not None:
        title = _WS.sub(" ", soup.title.get_text()).strip()
    if not title:
        h1 = soup.find("h1")
        if h1 is not None:
            title = _WS.sub(" ", h1.get_text()).strip()

    for el in soup.find_all(_INVISIBLE):
        el.decompose()

    blocks: list[str] = []
    for group in _group_blocks(_outermost_blocks(soup)):
        text = "\n".join(el.get_text() for el in group).strip("\n")
        if text.strip():
            blocks.append(text)
        for el in group:
            el.decompose()

    discussion = _visible_text(soup)
    if not title and not blocks and not discussion:
        raise MalformedDocument(f"no textual content: {url or '<no url>'}")

    traces, snippets = [], []
    for block in blocks:
        if classify_block(block) == TRACE:
            traces.append(parse_trace(block))
        else:
            snippets.append(tokenize_code(block))
    return PageContent(
        title=title,
        code_blocks=tuple(blocks),
        traces=tuple(traces),
        snippets=tuple(snippets),
        discussion=discussion,
        vote_counts=tuple(votes),
        url=url,
    )
