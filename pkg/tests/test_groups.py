import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from pencils import catalog
from pencils.groups import (AbelianInvariants, FPGroup, abelianization, check_certificate,
                            h1_pipeline, invariants_of_relations, parse_certificate,
                            presentation, prove_abelian, replay, surface_relator)
from pencils.groups.prover import Step, TraceError, free_reduce
from pencils.surfaces import FreeWord
from pencils.factorizations import Twist

from conftest import pi1_of


def _minor_gcd_invariants(rows, ncols):
    """Oracle: d_k = gcd of k-minors / gcd of (k-1)-minors."""
    M = Matrix(rows) if rows else Matrix.zeros(0, ncols)
    prev, diag = 1, []
    for k in range(1, min(M.rows, ncols) + 1):
        g = 0
        for r in itertools.combinations(range(M.rows), k):
            for c in itertools.combinations(range(ncols), k):
                g = math.gcd(g, int(M.extract(list(r), list(c)).det()))
        if g == 0:
            break
        diag.append(g // prev)
        prev = g
    return AbelianInvariants(ncols - len(diag), tuple(d for d in diag if d > 1))


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=0, max_size=4)
    .map(lambda rows: (rows, n))))
def test_snf_matches_minor_gcd_oracle(data):
    rows, n = data
    assert invariants_of_relations(rows, n) == _minor_gcd_invariants(rows, n)


def test_abelian_invariant_normalization():
    assert str(AbelianInvariants.from_cyclic_orders([2, 3])) == "Z/6"
    assert str(AbelianInvariants.from_cyclic_orders([0, 4, 6])) == "Z + Z/2 + Z/12"
    assert str(AbelianInvariants.from_cyclic_orders([1, 1])) == "0"
    with pytest.raises(ValueError):
        AbelianInvariants(0, (4, 2))


def test_surface_relator_and_group():
    assert str(surface_relator(2)) == "a1 b1 ~a1 ~b1 a2 b2 ~a2 ~b2"
    assert str(abelianization(FPGroup.surface_group(2))) == "Z^4"


def test_presentation_requires_words_unless_partial():
    f = catalog.entry("W").factorization
    G = presentation(f, 4)
    assert G.complete and len(G.relators) == 13
    f1 = catalog.entry("W1").factorization
    with pytest.raises(ValueError):
        presentation(f1, 1)
    P = presentation(f1, 1, partial=True)
    assert not P.complete and "B2" in P.labels


def test_prover_on_free_abelian_group():
    G = FPGroup(("a1", "b1"), (FreeWord.parse("[a1,b1]"),))
    v = prove_abelian(G)
    assert v.proven and check_certificate(G, v)


def test_prover_never_claims_a_free_group_abelian():
    G = FPGroup(("a1", "b1"), ())
    v = prove_abelian(G, max_nodes=2000)
    assert not v.proven and v.unproven == [("a1", "b1")]


def test_genus2_surface_group_is_inconclusive():
    v = prove_abelian(FPGroup.surface_group(2), max_nodes=3000)
    assert not v.proven


def test_certificate_round_trip_and_tamper_detection():
    G = presentation(catalog.entry("matsumoto").factorization, 0, partial=True)
    v = prove_abelian(G)
    assert v.proven
    gens, lemmas = parse_certificate(v.serialize())
    assert gens == G.generators and [l.word for l in lemmas] == [l.word for l in v.lemmas]
    bad = type(v)(v.status, v.generators, [type(l)(l.word, l.steps[:-1] or (Step("rotate", 1),),
                                                   l.label) for l in v.lemmas])
    assert not check_certificate(G, bad)


def test_replay_steps():
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert replay((1, 2), [Step("rotate", 1)], [], []) == (2, 1)
    assert replay((1,), [Step("insert", 0, ("R", 0, 0, True)), Step("reduce")], [(1,)], []) == ()
    with pytest.raises(TraceError):
        replay((1,), [Step("insert", 0, ("L", 0, 0, False))], [], [])
    with pytest.raises(TraceError):
        Step.parse("jump 3")


def test_pi1_two_stage_reports():
    assert str(pi1_of("W")) == "Certified Z^4 (pi_1)"
    assert pi1_of("W1").certified and pi1_of("W1").invariants.is_trivial
    r = pi1_of("ck")
    assert not r.certified and str(r.invariants) == "Z^4"


def test_h1_pipeline_uses_conjugated_classes():
    assert str(h1_pipeline(catalog.entry("W1(2,3)").factorization)) == "Z/6"
    assert str(h1_pipeline(catalog.entry("Wphi(2,3)").factorization)) == "Z^2 + Z/6"


@given(st.sampled_from(["hamada22", "chain21", "W1", "W2(2,5)", "W", "Wphi(3,4)", "ck(2)"]),
       st.data())
def test_h1_is_invariant_under_orientation_flips(entry_id, data):
    f = catalog.entry(entry_id).factorization
    names = sorted({t.curve.name for t in f.twists})
    flip = dict(zip(names, data.draw(st.lists(st.booleans(), min_size=len(names),
                                              max_size=len(names)))))
    tw = tuple(Twist(t.curve.negated(), t.exponent, t.conj, t.block) if flip[t.curve.name]
               else t for t in f.twists)
    g = type(f)(f.surface, tw, f.target)
    assert h1_pipeline(g) == h1_pipeline(f)
