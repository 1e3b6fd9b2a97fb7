import io
import json

import pytest

from pantsorder.cli import fmt_real, run
from pantsorder.words import parse_word


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_length_and_trace():
    code, out, _ = call("length", "ab^-1")
    assert code == 0
    assert out.startswith("length 4.9557")
    assert "trace 12.0" in out
    code, out, _ = call("trace", "ab^-1", "--format", "json")
    assert json.loads(out)["trace"] == 12.0


def test_negative_trace_flag():
    code, out, _ = call("trace", "ab", "--traces", "-2.5,-4,-7.25")
    assert code == 0 and float(out) == pytest.approx(-7.25)
    code, out, _ = call("length", "a", "--lengths", "1,2,3", "--format", "json")
    assert json.loads(out)["length"] == pytest.approx(1.0)


def test_extended_precision_output():
    code, out, _ = call("trace", "ab^-1", "--bits", "200")
    assert code == 0 and out.strip().startswith("12.0")


def test_selfint_methods_agree():
    outs = [call("selfint", "aaba^-1b", "--method", m, "--format", "json")[1] for m in ("axis", "boundary")]
    counts = [json.loads(o)["count"] for o in outs]
    assert counts == [5, 5]


def test_certify():
    code, out, _ = call("certify", "aab^-1", "a^-1b", "--format", "json")
    assert code == 0
    assert json.loads(out)["case"] in ("NoCancellation", "OneCancellation")


def test_enumerate_text():
    code, out, _ = call("enumerate", "--k", "3")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert json.loads(lines[-1])["count"] == 2
    for line in lines[:-1]:
        word, i, xi = line.split("\t")
        assert int(i) >= 3 and parse_word(word)


def test_enumerate_csv_and_json_agree():
    _, c, _ = call("enumerate", "--k", "4", "--format", "csv")
    _, j, _ = call("enumerate", "--k", "4", "--format", "json")
    rows = c.splitlines()[1:]
    members = json.loads(j)["members"]
    assert [r.split(",")[0] for r in rows] == [m["word"] for m in members]


def test_systole_outputs():
    code, out, _ = call("systole", "--k", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["argmin_word"] == "a^2 b^-1" and d["argmin_selfint"] == 2
    code, out, _ = call("systole", "--k", "1", "--format", "csv")
    assert out.splitlines()[0] == "word,length,selfint"


def test_distinguish():
    code, out, _ = call("distinguish", "--x", "1,2,3", "--xprime", "3,2,1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    lx1, lx2, lp1, lp2 = d["lengths"]
    assert lx1 > lx2 and lp1 < lp2


@pytest.mark.parametrize("argv", [
    ("length", "abx"),
    ("length", "1"),
    ("length", "ab", "--traces", "-1,-3,-3"),
    ("selfint", "ab^-1ab^-1"),
    ("enumerate", "--k", "9"),
    ("distinguish", "--x", "1,2,3", "--xprime", "1,2,3"),
])
def test_domain_errors_exit_1(argv):
    code, out, err = call(*argv)
    assert code == 1 and not out and err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ("frobnicate",),
    ("length",),
    ("length", "ab", "--traces", "1,2"),
    ("length", "ab", "--traces", "-3,-3,-3", "--lengths", "1,1,1"),
    ("length", "ab", "--bits", "20"),
    ("enumerate", "--k", "x"),
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_output_is_deterministic():
    for argv in (("systole", "--k", "3", "--format", "json"), ("verify", "--suite", "identities", "--seed", "3")):
        assert call(*argv) == call(*argv)


def test_emitted_words_reparse():
    _, out, _ = call("enumerate", "--k", "4", "--format", "json")
    for m in json.loads(out)["members"]:
        assert str(parse_word(m["word"])) == m["word"]


def test_fmt_real_round_trips():
    import mpmath

    assert float(fmt_real(0.1)) == 0.1
    with mpmath.workprec(200):
        x = mpmath.sqrt(2)
        assert abs(mpmath.mpf(fmt_real(x, 200)) - x) < mpmath.mpf(2) ** -190


def test_verify_all_passes():
    code, out, _ = call("verify", "--suite", "all", "--seed", "7")
    assert code == 0, out
    assert out.count(": pass") == 4
