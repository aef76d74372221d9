import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from pencils import catalog
from pencils import factorizations as fz
from pencils.factorizations import (ConjugationWord, Embedding, Factorization,
                                    FactorizationError, Twist)
from pencils.surfaces import Surface, boundary_curve, make_curve
from pencils.symplectic import product, verify


def _torus():
    s = Surface(1)
    a = make_curve(s, "a", "a1")
    b = make_curve(s, "b", "b1")
    return s, a, b


def test_elementary_and_compact_are_inverse():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a, 3), Twist(b, -2)))
    e = fz.elementary(f)
    assert [t.exponent for t in e.twists] == [1, 1, 1, -1, -1]
    assert fz.compact(e) == f
    assert f.length == 5


def test_zero_exponent_rejected():
    _, a, _ = _torus()
    with pytest.raises(FactorizationError):
        Twist(a, 0)


def test_hurwitz_preserves_product_and_inverts():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a), Twist(b)) * 6)
    g = fz.hurwitz_move(f, 0, "right", name="ab")
    assert g.twists[1].curve == a
    assert g.twists[0].homology == s.homology(a1=1, b1=1)
    assert product(g) == product(f)
    assert fz.hurwitz_move(g, 0, "left") == f


def test_hurwitz_word_must_match_class():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a), Twist(b)))
    with pytest.raises(FactorizationError):
        fz.hurwitz_move(f, 0, name="ab", word="a1")
    assert fz.hurwitz_move(f, 0, name="ab", word="a1 b1").twists[0].word is not None


def test_hurwitz_needs_elementary_twists():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a, 2), Twist(b)))
    with pytest.raises(FactorizationError):
        fz.hurwitz_move(f, 0)


def test_declared_disjoint_pairs_swap():
    s = Surface(2)
    a1, a2 = make_curve(s, "a1", "a1"), make_curve(s, "a2", "a2")
    f = Factorization(s, (Twist(a1), Twist(a2))).declare([("a1", "a2")])
    assert [t.name for t in fz.hurwitz_move(f, 0).twists] == ["a2", "a1"]


def test_cancel_requires_commutation():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a), Twist(b), Twist(a, -1)))
    with pytest.raises(FactorizationError, match="not declared disjoint"):
        fz.cancel_opposite_pair(f, 0, 2)
    g = Factorization(s, (Twist(a), Twist(a, 2), Twist(a, -1)))
    assert fz.cancel_opposite_pair(g, 0, 2).twists == (Twist(a, 2),)


def test_cancel_rejects_false_disjointness_claims():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a), Twist(b), Twist(a, -1))).declare([("a", "b")])
    with pytest.raises(FactorizationError, match="Sp"):
        fz.cancel_opposite_pair(f, 0, 2)


def test_block_commutation_needs_whole_block():
    f = catalog.entry("W").factorization
    assert verify(f).passed
    blocks = f.blocks()
    assert set(blocks) == {"P", "P'"} and all(len(v) == 6 for v in blocks.values())


def test_partial_conjugation_keeps_product():
    f = catalog.entry("W1").factorization
    g = catalog.entry("W1(3,5)").factorization
    assert verify(f).passed and verify(g).passed
    assert [t.conj is not None for t in f.twists] == [t.conj is not None for t in g.twists]


def test_partial_conjugation_checks_commutation():
    s, a, b = _torus()
    f = Factorization(s, (Twist(a), Twist(b)))
    with pytest.raises(FactorizationError):
        fz.partial_conjugate(f, 0, 1, ConjugationWord(((b, 1),)))
    # t_a conjugated by itself is t_a and keeps its word
    g = fz.partial_conjugate(f, 0, 1, ConjugationWord(((a, 1),)))
    assert g.twists[0] == f.twists[0]
    # the whole relation commutes with everything; moved curves lose their words
    h = Factorization(s, (Twist(a), Twist(b)) * 6)
    k = fz.partial_conjugate(h, 0, 12, ConjugationWord(((b, 1),)))
    assert k.twists[0].homology == s.homology(a1=1, b1=-1) and k.twists[0].word is None
    assert k.twists[1].word is not None and product(k).is_identity()


def test_conjugation_by_disjoint_curves_keeps_words():
    s = Surface(2)
    a1, a2 = make_curve(s, "a1", "a1"), make_curve(s, "a2", "a2")
    f = Factorization(s, (Twist(a1),)).declare([("a1", "a2")])
    g = fz.partial_conjugate(f, 0, 1, ConjugationWord(((a2, 3),)))
    assert g.twists[0].conj is None and g.twists[0].word is not None


def test_embed_moves_glued_boundary_into_word():
    h = catalog.entry("hamada22").factorization
    capped = fz.cap_boundary(h, [1])
    assert capped.target == (1,) and capped.surface == Surface(2, 1)
    closed = fz.achiral_closure(capped, [1])
    assert closed.target == () and closed.twists[-1].exponent == -1
    assert closed.twists[-1].curve.boundary_index == 1


def test_embedding_must_cover_synthesized_curves():
    f = catalog.entry("chain21").factorization
    s = Surface(2, 1)
    m = {x: make_curve(s, x, x) for x in s.generators}
    with pytest.raises(FactorizationError):
        fz.embed(f, Embedding(s, s, m))


def test_capped_four_boundary_lift_descends():
    # B_{j,i} -> B_j and C_i -> C after capping two boundaries
    f4 = fz.cap_boundary(catalog.entry("hamada24").factorization, [3, 4])
    f2 = catalog.entry("hamada22").factorization
    assert [t.homology for t in f4.twists] == [t.homology for t in f2.twists]
    assert [t.separating for t in f4.twists] == [t.separating for t in f2.twists]
    assert verify(f4).passed


def test_target_must_exist():
    s, a, _ = _torus()
    with pytest.raises(FactorizationError):
        Factorization(s, (Twist(a),), (1,))


# -------------------------------------------------------------- properties

def _random_moves(f: Factorization, rng: random.Random, steps: int) -> Factorization:
    f = fz.elementary(f)
    g = f.surface.genus
    gens = [make_curve(f.surface, x, x) for x in f.surface.generators]
    for k in range(steps):
        op = rng.choice(["hurwitz", "conj", "cancel"])
        n = len(f.twists)
        if op == "hurwitz" and n >= 2:
            i = rng.randrange(n - 1)
            f = fz.hurwitz_move(f, i, rng.choice(["left", "right"]), name=f"h{k}")
        elif op == "conj":
            phi = ConjugationWord(tuple((rng.choice(gens), rng.choice([-1, 1]))
                                        for _ in range(rng.randint(1, 2))))
            f = fz.partial_conjugate(f, 0, n, phi, label=f"c{k}")
        else:
            c = rng.choice(gens)
            i = rng.randrange(n + 1)
            tw = list(f.twists)
            tw[i:i] = [Twist(c, 1), Twist(c, -1)]
            f = fz.cancel_opposite_pair(replace(f, twists=tuple(tw)), i, i + 1)
    assert f.surface.genus == g
    return f


@settings(max_examples=100)
@given(st.sampled_from(["hamada22", "hamada24", "chain21", "matsumoto", "W1", "W2", "W3",
                        "W", "Wphi", "ck-base", "ck"]),
       st.integers(0, 2**32 - 1))
def test_moves_preserve_the_product(entry_id, seed):
    f = catalog.entry(entry_id).factorization
    g = _random_moves(f, random.Random(seed), 6)
    assert product(g) == product(f)
    assert verify(g).passed


@given(st.integers(0, 2**32 - 1))
def test_hurwitz_round_trip(seed):
    rng = random.Random(seed)
    f = fz.elementary(catalog.entry("matsumoto").factorization)
    i = rng.randrange(len(f.twists) - 1)
    assert fz.hurwitz_move(fz.hurwitz_move(f, i, "right", name="t"), i, "left") == f


def test_false_disjointness_claim_for_conjugation_rejected():
    s = Surface(2)
    a1, b1 = make_curve(s, "a1", "a1"), make_curve(s, "b1", "b1")
    f = Factorization(s, (Twist(a1), Twist(b1)) * 6).declare([("a1", "b1")])
    with pytest.raises(FactorizationError, match="meets it in homology"):
        fz.partial_conjugate(f, 0, 12, ConjugationWord(((b1, 1),)))
