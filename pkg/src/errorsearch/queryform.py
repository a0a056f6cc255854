"""The exception query and proactive search-query formulation."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .codecontext import frequent_identifiers
from .errors import NoTraceFound, QueryValidationError
from .stacktrace import StackTrace, filter_message, parse_trace

__all__ = [
    "INTERACTIVE",
    "PROACTIVE",
    "MAX_CONTEXT_TERMS",
    "ExceptionQuery",
    "formulate",
]

INTERACTIVE = "interactive"
PROACTIVE = "proactive"
MODES = (INTERACTIVE, PROACTIVE)

MAX_CONTEXT_TERMS = 16
TRACE_FRAMES = 5
CODE_IDENTIFIERS = 5

_PLAIN_IDENT = re.compile(r"^[A-Za-z_$][\w$]*$")


@dataclass(frozen=True)
class ExceptionQuery:
    raw_message: str
    filtered_message: str
    trace: StackTrace
    context_code: str | None = None
    mode: str = PROACTIVE
    user_query: str | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise QueryValidationError(f"mode must be one of {MODES}, got {self.mode!r}")
        has_query = bool(self.user_query and self.user_query.strip())
        if self.mode == INTERACTIVE and not has_query:
            raise QueryValidationError("interactive mode requires a user query")
        if self.mode == PROACTIVE and self.user_query is not None:
            raise QueryValidationError("proactive mode does not accept a user query")
        if self.filtered_message != filter_message(self.raw_message):
            raise QueryValidationError("filtered_message must equal filter_message(raw_message)")

    @classmethod
    def create(
        cls,
        trace: StackTrace | str,
        raw_message: str | None = None,
        context_code: str | None = None,
        mode: str = PROACTIVE,
        user_query: str | None = None,
    ) -> ExceptionQuery:
        """Build a query from trace text (or a parsed trace).

        When ``raw_message`` is omitted, the trace headline is used.
        """
        if isinstance(trace, str):
            try:
                trace = parse_trace(trace)
            except NoTraceFound as exc:
                raise QueryValidationError(f"unparseable stack trace: {exc}") from exc
        if raw_message is None or not raw_message.strip():
            raw_message = trace.headline()
        code = context_code if context_code and context_code.strip() else None
        return cls(
            raw_message=raw_message,
            filtered_message=filter_message(raw_message),
            trace=trace,
            context_code=code,
            mode=mode,
            user_query=user_query,
        )

    def provider_query(self) -> str:
        """The text sent to search providers in this query's mode."""
        if self.mode == INTERACTIVE:
            return " ".join(self.user_query.split())
        return formulate(self)


def _context_terms(query: ExceptionQuery) -> list[str]:
    frames = sorted(query.trace.frames, key=lambda f: f.position)[:TRACE_FRAMES]
    terms = []
    for f in frames:
        terms.extend((f.class_name, f.method_name))
    if query.context_code:
        terms.extend(frequent_identifiers(query.context_code, CODE_IDENTIFIERS))
    return [t for t in terms if _PLAIN_IDENT.match(t)]


def formulate(query: ExceptionQuery) -> str:
    """Compose a compact provider query from message, trace and context code.

    The filtered message comes first, followed by class and method names of
    the top frames and the most frequent identifiers of the context code,
    deduplicated in order of first appearance and capped at 16 terms.
    """
    if query.mode != PROACTIVE:
        raise QueryValidationError("query formulation applies to proactive mode only")
    message_terms = query.filtered_message.split()
    seen = set(message_terms)
    extra = []
    for term in _context_terms(query):
        if term in seen:
            continue
        seen.add(term)
        extra.append(term)
        if len(extra) == MAX_CONTEXT_TERMS:
            break
    return " ".join(message_terms + extra)
