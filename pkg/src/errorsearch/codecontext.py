"""Island lexing of code fragments and token-LCS clone similarity.

Code pasted into forum posts rarely compiles, so nothing here builds an AST.
The lexer picks out identifiers, keywords and literals wherever it can find
them and ignores everything else.  Literals are abstracted to ``NUM`` and
``STR`` so that near-miss clones (same code, different constants) still line
up.
"""

from __future__ import annotations

import re
from collections import Counter
from collections.abc import Sequence

__all__ = [
    "CodeTokenSeq",
    "JAVA_KEYWORDS",
    "MAX_LCS_TOKENS",
    "tokenize_code",
    "lcs_length",
    "context_similarity",
    "frequent_identifiers",
]

MAX_LCS_TOKENS = 5000

JAVA_KEYWORDS = frozenset(
    """
    abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while var record yield
    true false null
    """.split()
)

CodeTokenSeq = tuple[str, ...]

_LEXER = re.compile(
    r"""
    (?P<comment>//[^\n]*|/\*.*?(?:\*/|\Z))
  | (?P<text>\"\"\"[\s\S]*?(?:\"\"\"|\Z))
  | (?P<str>"(?:\\.|[^"\\\n])*(?:"|$))
  | (?P<chr>'(?:\\.|[^'\\\n]){0,6}')
  | (?P<num>\b(?:0[xX][0-9a-fA-F_]+|0[bB][01_]+|\d[\d_]*\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)[lLfFdD]?\b)
  | (?P<ident>[A-Za-z_$][\w$]*)
    """,
    re.VERBOSE | re.DOTALL | re.MULTILINE,
)


def tokenize_code(code: str) -> CodeTokenSeq:
    """Lex identifiers, keywords and literal placeholders out of arbitrary text."""
    tokens = []
    for m in _LEXER.finditer(code):
        kind = m.lastgroup
        if kind == "ident":
            tokens.append(m.group())
        elif kind == "num":
            tokens.append("NUM")
        elif kind in ("str", "chr", "text"):
            tokens.append("STR")
    return tuple(tokens)


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of the longest common subsequence of two token sequences.

    Bit-parallel evaluation of the standard LCS dynamic program: each row of
    the DP table is packed into one integer, so a row update costs a few
    big-integer operations instead of ``len(b)`` Python steps.
    """
    if not a or not b:
        return 0
    masks: dict[str, int] = {}
    for j, tok in enumerate(b):
        masks[tok] = masks.get(tok, 0) | (1 << j)
    full = (1 << len(b)) - 1
    v = full
    for tok in a:
        m = masks.get(tok)
        if m is None:
            continue
        u = v & m
        v = ((v + u) | (v - u)) & full
    return len(b) - bin(v).count("1")


def context_similarity(query: Sequence[str], candidate: Sequence[str]) -> float:
    """Fraction of the query's tokens covered by the LCS with the candidate."""
    query = tuple(query[:MAX_LCS_TOKENS])
    if not query:
        return 0.0
    candidate = tuple(candidate[:MAX_LCS_TOKENS])
    return lcs_length(query, candidate) / len(query)


_STRIP = re.compile(
    r"//[^\n]*|/\*.*?(?:\*/|\Z)|\"\"\"[\s\S]*?(?:\"\"\"|\Z)|\"(?:\\.|[^\"\\\n])*(?:\"|$)|'(?:\\.|[^'\\\n]){0,6}'",
    re.DOTALL | re.MULTILINE,
)
_IMPORT = re.compile(r"\bimport\s+(?:static\s+)?([\w$]+(?:\s*\.\s*[\w$]+)*)(?:\s*\.\s*\*)?\s*;")
_CALL = re.compile(r"(?<![\w$])([A-Za-z_$][\w$]*)\s*\(")
_NEW = re.compile(r"\bnew\s+([A-Z][\w$]*)")
_DECL = re.compile(
    r"(?<![\w$.])([A-Z][\w$]*)(?:\s*<[^;{}()=]*>)?(?:\s*\[\s*\])*\s+[a-z_$][\w$]*\s*(?=[=;,):])"
)
_TYPE_DECL = re.compile(r"\b(?:class|interface|enum|record|extends|implements)\s+([A-Z][\w$]*)")


def frequent_identifiers(code: str, k: int = 5) -> list[str]:
    """Most frequent method-call names and imported or declared type names.

    Ranked by descending count; ties go to the name seen first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    text = _STRIP.sub(" ", code)
    hits: list[tuple[int, str]] = []
    import_spans = []
    for m in _IMPORT.finditer(text):
        import_spans.append(m.span())
        if "*" in m.group(0):
            continue
        name =re.sub(r"\s+", "", m.group(1)).rpartition(".")[2]
        hits.append((m.start(1), name))

    def in_import(pos: int) -> bool:
        return any(s <= pos < e for s, e in import_spans)

    for pattern in (_CALL, _NEW, _DECL, _TYPE_DECL):
        for m in pattern.finditer(text):
            if in_import(m.start(1)):
                continue
            hits.append((m.start(1), m.group(1)))
    # `new Foo(` matches both _NEW and _CALL at the same offset
    seen_at: set[tuple[int, str]] = set()
    ordered = []
    for pos, name in sorted(hits):
        if (pos, name) in seen_at or name in JAVA_KEYWORDS:
            continue
        seen_at.add((pos, name))
        ordered.append(name)
    counts = Counter(ordered)
    first = {}
    for i, name in enumerate(ordered):
        first.setdefault(name, i)
    ranked = sorted(counts, key=lambda n: (-counts[n], first[n]))
    return ranked[:k]
