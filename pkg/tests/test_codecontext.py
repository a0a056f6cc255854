import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errorsearch.codecontext import (
    JAVA_KEYWORDS,
    MAX_LCS_TOKENS,
    context_similarity,
    frequent_identifiers,
    lcs_length,
    tokenize_code,
)

from oracles import lcs_exhaustive, lcs_oracle

seqs = st.lists(st.sampled_from("abcde"), max_size=12)


@pytest.mark.parametrize("code, expected", [
    ("int x = 5;", ("int", "x", "NUM")),
    ("// only a comment", ()),
    ('foo("bar")', ("foo", "STR")),
    ("", ()),
    ("/* block\n comment */ char c = 'x'; double d = 1.5e3;", ("char", "c", "STR", "double", "d", "NUM")),
    ('String s = "a \\" // not a comment";', ("String", "s", "STR")),
    ("Map<String, Integer> m = new HashMap<>();", ("Map", "String", "Integer", "m", "new", "HashMap")),
])
def test_tokenize(code, expected):
    assert tokenize_code(code) == expected


def test_tokenize_tolerates_broken_code():
    assert tokenize_code("for (int i=0;;) { if (") == ("for", "int", "i", "NUM", "if")


def test_context_similarity_examples():
    assert context_similarity(["a", "b"], ["a", "b"]) == 1.0
    assert context_similarity(["a", "b"], ["x", "y"]) == 0.0
    assert context_similarity(list("abcd"), list("axcy")) == 0.5
    assert context_similarity([], list("abc")) == 0.0
    assert context_similarity(list("abc"), []) == 0.0


@given(seqs.filter(bool))
def test_self_similarity(q):
    assert context_similarity(q, q) == 1.0


@settings(max_examples=500)
@given(seqs, seqs)
def test_lcs_matches_dp_oracle(a, b):
    assert lcs_length(a, b) == lcs_oracle(a, b)
    if a:
        assert abs(context_similarity(a, b) - lcs_oracle(a, b) / len(a)) <= 1e-9


def test_lcs_exhaustive_small_alphabet():
    # Every pair of sequences of length <= 4 over {a, b, c}.
    words = [w for n in range(5) for w in itertools.product("abc", repeat=n)]
    for a in words:
        for b in words:
            assert lcs_length(a, b) == lcs_exhaustive(a, b)


@given(seqs, seqs, seqs)
def test_appending_never_decreases(q, c, extra):
    assert context_similarity(q, c + extra) >= context_similarity(q, c)


def test_lcs_input_cap():
    # Tokens past the cap are ignored on both sides.
    long = ["t"] * (MAX_LCS_TOKENS + 100)
    assert context_similarity(long, long) == 1.0
    assert context_similarity(["t"], ["x"] * MAX_LCS_TOKENS + ["t"]) == 0.0
    assert context_similarity(["x"] * MAX_LCS_TOKENS + ["t"], ["t"]) == 0.0


def test_lcs_long_inputs_fast():
    import random
    rng = random.Random(0)
    a = [rng.choice("abcdefghij") for _ in range(5000)]
    b = [rng.choice("abcdefghij") for _ in range(5000)]
    assert 0 < lcs_length(a, b) <= 5000


@pytest.mark.parametrize("code, k, expected", [
    ("a.read(); a.read(); b.close();", 2, ["read", "close"]),
    ("", 5, []),
    ("import java.util.List; List l;", 1, ["List"]),
    ("import java.util.*; if (x) { while (y) { foo(); } }", 3, ["foo"]),
    ("// a.read(); a.read();\nb.close(); String s = \"x.read()\";", 2, ["close", "String"]),
])
def test_frequent_identifiers(code, k, expected):
    assert frequent_identifiers(code, k) == expected


def test_frequent_identifiers_rejects_bad_k():
    with pytest.raises(ValueError):
        frequent_identifiers("a();", 0)


@given(st.text(alphabet="abcxyz().;= \nimportnewclass", max_size=120), st.integers(1, 6))
def test_frequent_identifiers_properties(code, k):
    out = frequent_identifiers(code, k)
    assert len(out) <= k
    assert len(set(out)) == len(out)
    assert not set(out) & JAVA_KEYWORDS
