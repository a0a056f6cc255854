import pytest
from hypothesis import given
from hypothesis import strategies as st

from errorsearch.errors import NoTraceFound, OutOfRange
from errorsearch.textproc import PROSE, normalize
from errorsearch.stacktrace import (
    StackFrame,
    StackTrace,
    continues_trace,
    degree_of_interest,
    filter_message,
    parse_trace,
    trace_tokens,
)

from oracles import doi_oracle

NPE = "java.lang.NullPointerException\n\tat a.b.C.m(C.java:10)"

CHAINED = """\
Exception in thread "main" java.lang.RuntimeException: wrapper
\tat com.x.Service.run(Service.java:12)
\tat com.x.Main.main(Main.java:5)
Caused by: java.io.IOException: disk
\tat java.io.FileInputStream.readBytes(Native Method)
\tat java.io.FileInputStream.read(Unknown Source)
\tat com.x.Service$Worker.lambda$load$0(Service.java:40)
\t... 2 more
"""


def test_minimal_trace():
    t = parse_trace(NPE)
    assert t.exceptions == (("java.lang.NullPointerException", ""),)
    assert t.frames == (StackFrame("a.b", "C", "m", "C.java", 10, 1),)
    assert t.frame_count == 1


def test_caused_by_chain():
    t = parse_trace(CHAINED)
    assert [e[0] for e in t.exceptions] == ["java.lang.RuntimeException", "java.io.IOException"]
    assert t.exceptions[1][1] == "disk"
    assert [f.position for f in t.frames] == [1, 2, 3, 4, 5]
    native, unknown, inner = t.frames[2:]
    assert (native.source_file, native.line) == (None, None)
    assert (unknown.source_file, unknown.line) == (None, None)
    assert inner.class_name == "Service$Worker"
    assert inner.method_name == "lambda$load$0"


def test_module_prefix_and_constructor():
    t = parse_trace("java.lang.IllegalArgumentException: bad\n"
                    "\tat java.base/java.util.Objects.requireNonNull(Objects.java:233)\n"
                    "\tat app//org.demo.Thing.<init>(Thing.java:7)")
    assert [(f.package_name, f.class_name, f.method_name) for f in t.frames] == [
        ("java.util", "Objects", "requireNonNull"),
        ("org.demo", "Thing", "<init>"),
    ]


def test_bytes_input_and_noise_lines():
    raw = b"INFO starting\njava.lang.IllegalStateException: boom\n  garbage line\n\tat x.Y.z(Y.java:1)\n"
    t = parse_trace(raw)
    assert t.exception_type == "java.lang.IllegalStateException"
    assert t.frame_count == 1


@pytest.mark.parametrize("raw", ["hello world", "", "   \n\n", "Error handling is hard: really"])
def test_no_trace(raw):
    with pytest.raises(NoTraceFound):
        parse_trace(raw)


def test_frames_only_is_a_trace():
    assert parse_trace("\tat x.Y.z(Y.java:3)").exceptions == ()


def test_doi_examples():
    five = parse_trace("E: x\n" + "\n".join(f"\tat p.C.m{i}(C.java:{i})" for i in range(1, 6)))
    assert degree_of_interest(five, 1) == 1.0
    assert degree_of_interest(five, 5) == pytest.approx(0.2, abs=1e-12)
    assert degree_of_interest(parse_trace(NPE), 1) == 1.0


@pytest.mark.parametrize("pos", [0, 2, -1])
def test_doi_out_of_range(pos):
    with pytest.raises(OutOfRange):
        degree_of_interest(parse_trace(NPE), pos)


def _trace_of(n):
    frames = tuple(StackFrame("p", "C", f"m{i}", "C.java", i, i) for i in range(1, n + 1))
    return StackTrace((("p.SomeException", ""),), frames)


@given(st.integers(1, 60))
def test_doi_monotone_bounded_and_matches_oracle(n):
    t = _trace_of(n)
    values = [degree_of_interest(t, p) for p in range(1, n + 1)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(1.0 / n - 1e-12 <= v <= 1.0 for v in values)
    assert all(abs(v - doi_oracle(n, p)) <= 1e-9 for p, v in enumerate(values, start=1))


def test_trace_tokens_examples():
    bag = trace_tokens(parse_trace(NPE))
    assert {"NullPointerException", "C", "m"} <= set(bag)
    twice = parse_trace("java.lang.NullPointerException\n\tat a.b.C.m(C.java:10)\n\tat a.b.C.m(C.java:10)")
    assert trace_tokens(twice)["C"] == 2 and trace_tokens(twice)["m"] == 2


def test_trace_tokens_message_is_prose():
    bag = trace_tokens(parse_trace("java.io.IOException: Connections were refused\n\tat a.B.c(B.java:1)"))
    assert set(normalize("Connections were refused", PROSE)) <= set(bag)
    assert "Connections" not in bag


def test_stackframe_validation():
    with pytest.raises(ValueError):
        StackFrame("p", "", "m")
    with pytest.raises(ValueError):
        StackFrame("p", "C", "m", position=0)
    with pytest.raises(ValueError):
        StackTrace((), (StackFrame("p", "C", "m", position=2),))


@pytest.mark.parametrize("raw, expected", [
    ("FileNotFoundException: /usr/local/a.txt (No such file)", "FileNotFoundException: (No such file)"),
    ("OutOfMemoryError: Java heap space", "OutOfMemoryError: Java heap space"),
    ("see http://x.y/z for details", "see for details"),
    ("No suitable driver found for jdbc:mysql://localhost:3306/shop", "No suitable driver found for"),
    ("Cannot open C:\\Users\\me\\a.txt now", "Cannot open now"),
    ("object java.lang.Object@1b6d3586 at 0x7ffd1234", "object java.lang.Object at"),
    ("Requested array size 512 MB exceeds 1.5GiB limit", "Requested array size exceeds limit"),
    ("For input string: \"12a\"", "For input string: \"12a\""),
])
def test_filter_message(raw, expected):
    assert filter_message(raw) == expected


def test_filter_keeps_relative_names():
    assert filter_message("cannot load conf/app.properties") == "cannot load conf/app.properties"


idents = st.from_regex(r"[A-Za-z_][A-Za-z0-9_$]{0,6}", fullmatch=True)
frames_st = st.lists(
    st.tuples(st.lists(st.from_regex(r"[a-z][a-z0-9]{0,4}", fullmatch=True), max_size=3), idents, idents,
              st.one_of(st.none(), st.tuples(idents, st.one_of(st.none(), st.integers(1, 99999))))),
    min_size=1, max_size=8,
)


@given(frames_st, st.text(alphabet="abc xyz:()", max_size=20))
def test_parse_render_round_trip(specs, msg):
    frames = []
    for i, (pkg, cls, meth, src) in enumerate(specs, start=1):
        source, line = (None, None) if src is None else (src[0] + ".java", src[1])
        frames.append(StackFrame(".".join(pkg), cls, meth, source, line, i))
    trace = StackTrace((("org.demo.BrokenException", msg.strip()),), tuple(frames))
    parsed = parse_trace(trace.render())
    assert parsed.frames == trace.frames
    assert parsed.exceptions == trace.exceptions
    assert parse_trace(parsed.render()) == parsed


@given(st.text(max_size=200))
def test_trace_tokens_have_no_whitespace(text):
    try:
        t = parse_trace(text)
    except NoTraceFound:
        return
    assert all(not any(c.isspace() for c in term) for term in trace_tokens(t))


@pytest.mark.parametrize("text, expected", [
    ("\tat a.B.c(B.java:1)", True),
    ("\n  at app//a.B.<init>(B.java:1)", True),
    ("Caused by: java.io.IOException: y", True),
    ("\t... 12 more", True),
    ("java.lang.Exception: x\n\tat a.B.c(B.java:1)", False),
    ("int x = 1;", False),
    ("", False),
])
def test_continues_trace(text, expected):
    assert continues_trace(text) is expected
