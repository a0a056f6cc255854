"""Parsing of JVM stack traces and the trace-derived signals used for ranking."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NoTraceFound, OutOfRange
from .textproc import IDENTIFIER, PROSE, TokenBag, normalize

__all__ = [
    "StackFrame",
    "StackTrace",
    "parse_trace",
    "degree_of_interest",
    "trace_tokens",
    "filter_message",
    "continues_trace",
]

_IDENT = r"[A-Za-z_$][\w$]*"

_FRAME_RE = re.compile(
    r"^\s*at\s+"
    r"(?:[\w$.\-]*(?:@[\w.\-]+)?/)*"  # java 9+ loader/module@version/ prefixes; loader-only is "app//"
    r"(?P<qual>[\w$]+(?:\.[\w$<>]+)+)"
    r"\s*\((?P<src>[^()]*)\)"
)
_HEADER_RE = re.compile(
    r"^\s*(?P<prefix>Caused by:\s*|Suppressed:\s*|Exception in thread \"[^\"]*\"\s+)?"
    rf"(?P<type>(?:{_IDENT}\.)*{_IDENT})"
    r"(?:\s*:\s?(?P<msg>.*?))?\s*$"
)
_ELIDED_RE = re.compile(r"^\s*\.\.\.\s*\d+\s+(?:more|common frames omitted)\s*$")
_THROWABLE_SUFFIX = re.compile(r"(Exception|Error|Throwable|Fault)$")
_SOURCE_RE = re.compile(r"^(?P<file>[^:]+?)(?::(?P<line>\d+))?$")


@dataclass(frozen=True)
class StackFrame:
    package_name: str
    class_name: str
    method_name: str
    source_file: str | None = None
    line: int | None = None
    position: int = 1

    def __post_init__(self):
        if not self.class_name or not self.method_name:
            raise ValueError("class_name and method_name must be non-empty")
        if self.position < 1:
            raise ValueError("position must be >= 1")
        if self.line is not None and self.line < 1:
            raise ValueError("line must be a positive integer")

    @property
    def qualified_class(self) -> str:
        if self.package_name:
            return f"{self.package_name}.{self.class_name}"
        return self.class_name

    def render(self) -> str:
        if self.source_file is None:
            src = "Unknown Source"
        elif self.line is None:
            src = self.source_file
        else:
            src = f"{self.source_file}:{self.line}"
        return f"at {self.qualified_class}.{self.method_name}({src})"


@dataclass(frozen=True)
class StackTrace:
    """Exception chain plus the frames of every segment, numbered top-down."""

    exceptions: tuple[tuple[str, str], ...]
    frames: tuple[StackFrame, ...] = field(default=())

    def __post_init__(self):
        for i, frame in enumerate(self.frames, start=1):
            if frame.position != i:
                raise ValueError("frames must be numbered contiguously from 1")

    @property
    def frame_count(self) -> int:
        return len(self.frames)

    @property
    def exception_type(self) -> str | None:
        return self.exceptions[0][0] if self.exceptions else None

    @property
    def message(self) -> str:
        return self.exceptions[0][1] if self.exceptions else ""

    def headline(self) -> str:
        """The first ``type: message`` line, as the IDE console shows it."""
        if not self.exceptions:
            return ""
        etype, msg = self.exceptions[0]
        return f"{etype}: {msg}" if msg else etype

    def render(self) -> str:
        lines = []
        for i, (etype, msg) in enumerate(self.exceptions):
            head = f"{etype}: {msg}" if msg else etype
            lines.append(head if i == 0 else f"Caused by: {head}")
        lines.extend("\t" + f.render() for f in self.frames)
        return "\n".join(lines)


def _parse_frame(match: re.Match, position: int) -> StackFrame | None:
    qual = match.group("qual")
    owner, _, method = qual.rpartition(".")
    package, _, cls = owner.rpartition(".")
    if not cls or not method:
        return None
    src = match.group("src").strip()
    source_file = line = None
    if src and src not in ("Native Method", "Unknown Source"):
        m = _SOURCE_RE.match(src)
        if m:
            source_file = m.group("file").strip() or None
            if m.group("line") is not None:
                line = int(m.group("line"))
                if line < 1:
                    line = None
    return StackFrame(package, cls, method, source_file, line, position)


def _parse_header(line: str) -> tuple[str, str] | None:
    m = _HEADER_RE.match(line)
    if not m:
        return None
    etype = m.group("type")
    explicit = m.group("prefix") is not None
    simple = etype.rpartition(".")[2]
    if not explicit and not _THROWABLE_SUFFIX.search(simple):
        return None
    return etype, (m.group("msg") or "").strip()


def parse_trace(raw: str | bytes) -> StackTrace:
    """Parse console text into a :class:`StackTrace`.

    Recognizes ``at pkg.Class.method(File.java:N)`` frames, ``Type: message``
    headers and ``Caused by:`` chains.  Frames of all chained segments are
    concatenated in textual order.  Lines that fit none of these shapes are
    skipped.
    """
    if isinstance(raw, bytes):
        raw = raw.decode("utf-8", errors="replace")
    exceptions: list[tuple[str, str]] = []
    frames: list[StackFrame] = []
    for line in raw.splitlines():
        if not line.strip():
            continue
        m = _FRAME_RE.match(line)
        if m:
            frame = _parse_frame(m, len(frames) + 1)
            if frame is not None:
                frames.append(frame)
            continue
        header = _parse_header(line)
        if header is not None:
            exceptions.append(header)
    if not frames and not exceptions:
        raise NoTraceFound("no stack frames or exception headers recognized")
    return StackTrace(tuple(exceptions), tuple(frames))


def continues_trace(text: str) -> bool:
    """True when ``text`` opens with a frame, a ``Caused by:`` line or ``... N more``.

    Such text is the tail of a trace that was split across elements.
    """
    first = next((line for line in text.splitlines() if line.strip()), "")
    return bool(
        _FRAME_RE.match(first)
        or _ELIDED_RE.match(first)
        or first.lstrip().startswith(("Caused by:", "Suppressed:"))
    )


def degree_of_interest(trace: StackTrace, position: int) -> float:
    """Proximity weight of a frame: ``1 - (position - 1) / N``."""
    n = trace.frame_count
    if not 1 <= position <= n:
        raise OutOfRange(f"position {position} outside 1..{n}")
    return 1.0 - (position - 1) / n


def trace_tokens(trace: StackTrace) -> TokenBag:
    """Lexical token set of a trace: exception types, message terms, frame identifiers."""
    idents: list[str] = []
    prose: list[TokenBag] = []
    for etype, msg in trace.exceptions:
        idents.append(etype)
        if msg:
            prose.append(normalize(msg, PROSE))
    for f in trace.frames:
        idents.extend((f.package_name, f.class_name, f.method_name))
    bags = [normalize(" ".join(idents), IDENTIFIER), *prose]
    return TokenBag.union(bags)


_URL_RE = re.compile(r"(?<![\w])[A-Za-z][\w+.\-]*:(?:[A-Za-z][\w+.\-]*:)*//\S+")
_HEX_RE = re.compile(r"(?<![\w])0[xX][0-9a-fA-F]+\b|@[0-9a-f]{6,}\b")
_SIZE_RE = re.compile(
    r"(?<![\w.])\d+(?:\.\d+)?\s?(?:[KMGTkmgt]i?[Bb]|bytes?|B)(?![\w])"
)
_CANDIDATE_PATH_RE = re.compile(r"[^\s()\[\]{}<>\"'`,;]+")
_SPACES_RE = re.compile(r"[ \t]+")


def _drop_paths(text: str) -> str:
    def repl(m: re.Match) -> str:
        token = m.group(0)
        if token.count("/") + token.count("\\") >= 2:
            return ""
        return token

    return _CANDIDATE_PATH_RE.sub(repl, text)


def filter_message(raw: str) -> str:
    """Strip URLs, absolute paths, hex addresses and memory sizes from a message."""
    text = _URL_RE.sub("", raw)
    text = _drop_paths(text)
    text = _HEX_RE.sub("", text)
    text = _SIZE_RE.sub("", text)
    text = _SPACES_RE.sub(" ", text)
    return "\n".join(line.strip() for line in text.splitlines()).strip()
