import pytest
from hypothesis import given, strategies as st

from pencils import catalog
from pencils.dsl import ParseError, diagnose, parse, parse_document, serialize
from pencils.symplectic import verify


@pytest.mark.parametrize("entry_id", [e.id for e in catalog.entries()]
                         + ["W1(2,3)", "Wphi(1,4)", "ck(2)"])
def test_round_trip(entry_id):
    e = catalog.entry(entry_id)
    text = serialize(e.factorization, e.base_points)
    doc = parse_document(text)
    assert doc.factorization == e.factorization
    assert doc.base_points == e.base_points
    assert serialize(doc.factorization, doc.base_points) == text


def test_whitespace_and_comments_are_ignored():
    e = catalog.entry("W1")
    text = serialize(e.factorization, 1)
    noisy = "# a comment\n\n" + "\n".join("   " + ln.replace(" ", "  ") + "  # trailing"
                                          for ln in text.splitlines())
    assert parse(noisy) == e.factorization


def test_trivial_word():
    f = parse("surface g=2 b=0\ncurve C hom=[1,0,1,0] sep=false\nword: C ~C\ntarget: identity\n")
    assert len(f.twists) == 2 and verify(f).passed


def test_powers_bars_and_conj():
    f = parse("surface g=2 b=1\nword: a1^2 | ~b1^3 conj(b2^-2 a2){ a1 ~b1 }\ntarget: d1\n")
    assert [t.exponent for t in f.twists] == [2, -3, 1, -1]
    assert str(f.twists[2].conj) == "b2^-2 a2"
    assert f.target == (1,)


def test_nested_conj_composes():
    f = parse("surface g=1 b=0\nword: conj(a1){ conj(b1){ a1 } }\ntarget: identity\n")
    assert str(f.twists[0].conj) == "a1 b1"


def _one(text):
    d = diagnose(text)
    assert d, "expected a diagnostic"
    return d[0]


def test_unknown_curve_located():
    d = _one("surface g=1 b=0\nword: a1 Bogus\ntarget: identity\n")
    assert (d.line, d.column) == (2, 10) and "unknown curve" in d.message


def test_malformed_exponent():
    d = _one("surface g=1 b=0\nword: a1^x\ntarget: identity\n")
    assert "malformed exponent" in d.message and d.line == 2
    assert "malformed exponent" in _one("surface g=1 b=0\nword: a1^0\ntarget: identity\n").message


def test_unbalanced_blocks():
    d = _one("surface g=1 b=0\nword: conj(a1){ b1\ntarget: identity\n")
    assert "unbalanced conj" in d.message and (d.line, d.column) == (2, 7)
    assert "unbalanced '}'" in _one("surface g=1 b=0\nword: b1 }\ntarget: identity\n").message


def test_curve_declaration_errors():
    base = "surface g=1 b=1\n{}\nword: a1\ntarget: d1\n"
    cases = {
        "curve X hom=[1,0,0]": "length",
        "curve X hom=[1,0] sep=maybe": "sep must be",
        'curve X hom=[1,0] word="b1"': "abelianizes",
        "curve X": "needs hom",
        "curve X hom=[1,0] colour=red": "unknown curve attribute",
        "curve a1 hom=[1,0]\ncurve a1 hom=[0,1]": "declared twice",
    }
    for line, msg in cases.items():
        d = _one(base.format(line))
        assert msg in d.message and d.line >= 2, (line, d)


def test_structure_errors():
    assert "first" in _one("word: a1\n").message
    assert "missing 'target:'" in _one("surface g=1 b=0\nword: a1\n").message
    assert "bad boundary" in _one("surface g=1 b=1\nword: a1\ntarget: d2\n").message
    assert "unknown directive" in _one("surface g=1 b=0\nfoo: 1\ntarget: identity\n").message


def test_parse_error_carries_all_diagnostics():
    with pytest.raises(ParseError) as info:
        parse("surface g=1 b=0\nword: X Y\ntarget: identity\n")
    assert [d.column for d in info.value.diagnostics] == [7, 9]


@given(st.lists(st.tuples(st.sampled_from(["a1", "b1", "a2", "b2"]),
                          st.integers(-3, 3).filter(bool)), max_size=8))
def test_generated_words_round_trip(twists):
    word = " ".join(f"{n}^{e}" for n, e in twists)
    f = parse(f"surface g=2 b=0\nword: {word}\ntarget: identity\n")
    assert parse(serialize(f)) == f
    assert [t.exponent for t in f.twists] == [e for _, e in twists]
