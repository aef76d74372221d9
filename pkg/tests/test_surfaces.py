import pytest
from hypothesis import given, strategies as st

from pencils.surfaces import (FreeWord, HomologyClass, Surface, SurfaceError, abelianize_word,
                              boundary_curve, intersection, make_curve, validate_curve)

from conftest import classes


def test_generator_order_and_rank():
    s = Surface(3, 2)
    assert s.generators == ["a1", "b1", "a2", "b2", "a3", "b3"]
    assert s.boundary_symbols == ["d1", "d2"]
    assert s.rank == 6


def test_standard_pairing():
    s = Surface(2)
    assert intersection(s.basis("a1"), s.basis("b1")) == 1
    assert intersection(s.basis("b1"), s.basis("a1")) == -1
    assert intersection(s.basis("a1"), s.basis("b2")) == 0


def test_word_parsing_powers_and_commutators():
    w = FreeWord.parse("a1 ~b1^3 [a2,b2]")
    assert str(w) == "a1 ~b1 ~b1 ~b1 a2 b2 ~a2 ~b2"
    assert FreeWord.parse("a1 ~a1 b1") == FreeWord.parse("b1")
    assert FreeWord.parse("b1^-2") == FreeWord.parse("~b1 ~b1")


def test_bad_word_rejected():
    with pytest.raises(SurfaceError):
        FreeWord.parse("a1 * b1")
    with pytest.raises(SurfaceError):
        FreeWord.parse("[a1]")


def test_abelianization_drops_boundary_symbols():
    s = Surface(2, 1)
    assert abelianize_word(FreeWord.parse("a1 d1 ~b2 [a2,b1]"), s) == s.homology(a1=1, b2=-1)
    with pytest.raises(SurfaceError):
        abelianize_word(FreeWord.parse("a3"), s)


def test_curve_from_word_and_validation():
    s = Surface(2, 1)
    c = make_curve(s, "x2", "a1 ~b1^3 a2 b2 a2")
    assert c.homology == s.homology(a1=1, b1=-3, a2=2, b2=1)
    assert validate_curve(c, s).valid
    bad = make_curve(s, "bad", "a1", homology=s.homology(b1=1))
    rep = validate_curve(bad, s)
    assert not rep.valid and "abelianizes" in str(rep)


def test_separating_curve_with_class_flagged():
    s = Surface(2)
    c = make_curve(s, "C", homology=s.homology(a1=1), separating=True)
    assert not validate_curve(c, s).valid
    assert validate_curve(boundary_curve(Surface(2, 1), 1)).valid


def test_dimension_mismatch():
    with pytest.raises(SurfaceError):
        Surface(2).basis("a1") + Surface(3).basis("a1")
    with pytest.raises(SurfaceError):
        HomologyClass((1, 2, 3))


@given(classes(3), classes(3))
def test_pairing_is_antisymmetric(x, y):
    assert intersection(x, y) == -intersection(y, x)


@given(st.lists(st.tuples(st.sampled_from(["a1", "b1", "a2", "b2"]), st.sampled_from([1, -1])),
                max_size=12))
def test_abelianization_is_a_homomorphism(letters):
    s = Surface(2)
    w = FreeWord(tuple(letters))
    assert abelianize_word(w.inverse(), s) == -abelianize_word(w, s)
    assert abelianize_word(w * w, s) == 2 * abelianize_word(w, s)
