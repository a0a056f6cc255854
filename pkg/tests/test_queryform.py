import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errorsearch.errors import QueryValidationError
from errorsearch.queryform import INTERACTIVE, MAX_CONTEXT_TERMS, PROACTIVE, ExceptionQuery, formulate
from errorsearch.stacktrace import StackFrame, StackTrace, filter_message, parse_trace

ONE = "java.lang.IllegalStateException: Workbench has not been created yet.\n\tat org.x.C.m(C.java:1)"


def test_single_frame_no_code():
    q = ExceptionQuery.create(ONE)
    assert formulate(q) == "java.lang.IllegalStateException: Workbench has not been created yet. C m"


def test_message_filtered_first():
    raw = "java.io.FileNotFoundException: /home/u/app/conf.properties (No such file or directory)"
    q = ExceptionQuery.create(ONE, raw)
    assert q.filtered_message == "java.io.FileNotFoundException: (No such file or directory)"
    assert formulate(q).startswith(q.filtered_message + " ")


def test_top_five_frames_then_code_identifiers():
    text = "java.lang.RuntimeException: x\n" + "\n".join(f"\tat p.C{i}.m{i}(C.java:{i})" for i in range(1, 8))
    q = ExceptionQuery.create(text, context_code="C1.m1(); helper(); helper(); other();")
    terms = formulate(q).split()
    assert terms[2:12] == ["C1", "m1", "C2", "m2", "C3", "m3", "C4", "m4", "C5", "m5"]
    assert "C6" not in terms
    # m1 already present from the trace; code adds helper and other only once
    assert terms[12:] == ["helper", "other"]


def test_term_count_bounded():
    # 5 frames x 2 names + 5 code identifiers = 15, always under the 16-term cap.
    text = "p.BoomException: boom\n" + "\n".join(f"\tat p.Class{i}.method{i}(C.java:1)" for i in range(1, 6))
    code = " ".join(f"call{i}(); " * (10 - i) for i in range(8))
    terms = formulate(ExceptionQuery.create(text, context_code=code)).split()
    assert len(terms) == 2 + 15
    assert len(terms) - 2 <= MAX_CONTEXT_TERMS


def test_mode_rules():
    t = parse_trace(ONE)
    with pytest.raises(QueryValidationError):
        ExceptionQuery.create(t, mode=INTERACTIVE)
    with pytest.raises(QueryValidationError):
        ExceptionQuery.create(t, mode=INTERACTIVE, user_query="   ")
    with pytest.raises(QueryValidationError):
        ExceptionQuery.create(t, mode=PROACTIVE, user_query="npe")
    with pytest.raises(QueryValidationError):
        ExceptionQuery.create(t, mode="sideways")
    with pytest.raises(QueryValidationError):
        ExceptionQuery("a /x/y/z", "a /x/y/z", t)
    with pytest.raises(QueryValidationError):
        ExceptionQuery.create("nothing to see here")


def test_interactive_uses_user_query():
    q = ExceptionQuery.create(ONE, mode=INTERACTIVE, user_query="  workbench   not created ")
    assert q.provider_query() == "workbench not created"
    with pytest.raises(QueryValidationError):
        formulate(q)


def test_headline_default_and_blank_code():
    q = ExceptionQuery.create(ONE, raw_message="  ", context_code="\n")
    assert q.raw_message == "java.lang.IllegalStateException: Workbench has not been created yet."
    assert q.context_code is None


def test_generic_and_init_names_skipped():
    q = ExceptionQuery.create("p.BadException: x\n\tat p.Thing.<init>(Thing.java:3)")
    assert formulate(q) == "p.BadException: x Thing"


idents = st.from_regex(r"[A-Za-z][A-Za-z0-9]{0,5}", fullmatch=True)
messages = st.text(alphabet="abc /:.0x1@Kk B", max_size=60)


@given(messages, st.lists(st.tuples(idents, idents), min_size=1, max_size=8),
       st.lists(idents, max_size=20))
def test_formulate_properties(msg, frames, calls):
    fs = tuple(StackFrame("p", c, m, None, None, i) for i, (c, m) in enumerate(frames, start=1))
    trace = StackTrace((("p.E", ""),), fs)
    code = " ".join(f"{c}();" for c in calls)
    q = ExceptionQuery.create(trace, "p.E: " + msg + " see http://x.y/z at /usr/lib/a.so", code)
    out = formulate(q)
    assert out == formulate(ExceptionQuery.create(trace, "p.E: " + msg + " see http://x.y/z at /usr/lib/a.so", code))
    assert len(out.split()) <= MAX_CONTEXT_TERMS + len(q.filtered_message.split())
    assert "://" not in out
    assert not re.search(r"\S*[/\\]\S*[/\\]", out)
    assert q.filtered_message == filter_message(q.raw_message)
