import pytest

from pencils import catalog
from pencils.catalog import DERIVED, PAPER, BreedError, Step, breed
from pencils.groups import h1_pipeline
from pencils.surfaces import validate_curve
from pencils.symplectic import verify

from conftest import pi1_of, report_of

DEFAULTS = [e.id for e in catalog.entries()]
SAMPLES = DEFAULTS + ["W1(0,3)", "W2(5,2)", "W3(4,4)", "Wphi(6,1)", "ck(2)", "ck-base(3)"]


@pytest.mark.parametrize("entry_id", SAMPLES)
def test_replay_reproduces_the_entry(entry_id):
    e = catalog.entry(entry_id)
    assert e.replay() == e.factorization


@pytest.mark.parametrize("entry_id", SAMPLES)
def test_curve_data_is_consistent(entry_id):
    e = catalog.entry(entry_id)
    for c in e.curves().values():
        assert validate_curve(c, e.surface).valid, c.name
        assert c.provenance


@pytest.mark.parametrize("entry_id", SAMPLES)
def test_expected_block_matches_recomputation(entry_id):
    e = catalog.entry(entry_id)
    assert e.expected and all(v.tag in (PAPER, DERIVED) for v in e.expected.values())
    f = e.factorization
    rep = report_of(entry_id)
    got = {"length": f.length, "target": f.target, "verify": verify(f).label,
           "separating": {t.curve.name for t in f.twists if t.separating},
           "e_fib": rep.e_fib, "e_pencil": rep.e_pencil, "sigma": rep.sigma,
           "c1sq_fib": rep.c1sq_fib, "c1sq_pencil": rep.c1sq_pencil, "chi_h": rep.chi_h,
           "b1": rep.b1, "h1": str(rep.h1), "scy": rep.predicates.get("scy")}
    for key, exp in e.expected.items():
        if key == "pi1":
            r = pi1_of(entry_id)
            assert f"{r.status} {r.invariants}" == exp.value
        else:
            assert got[key] == exp.value, (key, exp)


def test_ids_and_parameters():
    assert catalog.entry("W2").id == "W2"
    assert catalog.entry("Wphi( 1, 2 )").id == "Wphi(1,2)"
    assert catalog.entry("ck").id == "ck(1)"
    for bad in ("nope", "W1(1)", "ck(0)", "W2(-1,2)", "W(1,1)"):
        with pytest.raises(KeyError):
            catalog.entry(bad)


def test_w2_published_value_recorded():
    exp = catalog.entry("W2").expected["h1"]
    assert exp.tag == DERIVED and exp.value == "Z/3" and "published" in exp.note


def test_ck_lift_sizes():
    for h in (1, 2, 3):
        f = catalog.ck_lift(h)
        assert len(f.twists) == 4 * h + 4 and f.target == (1, 2)
        assert catalog.entry(f"ck({h})").factorization.length == 8 * h + 4


def test_breed_reports_the_failing_step():
    bad = catalog.recipe_exotic(1)
    # without the commutation facts the cancellation must fail
    bad = [s for s in bad if s.op != "declare"]
    with pytest.raises(BreedError) as info:
        breed(bad)
    assert bad[info.value.step].op == "cancel_all"
    with pytest.raises(BreedError) as info:
        breed([Step("load", ("x", "matsumoto")), Step("frobnicate", ("x",))])
    assert info.value.step == 1


def test_w_is_fixed_by_deleting_nothing():
    f = catalog.entry("W").factorization
    assert h1_pipeline(f).rank == 4 and len(f.twists) == 12
