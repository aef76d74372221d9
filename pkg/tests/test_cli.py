import json

import pytest

from pencils import catalog, dsl
from pencils.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_json_for_w(capsys):
    code, out, _ = run(capsys, "invariants", "catalog:W", "--json")
    d = json.loads(out)
    assert code == 0
    assert (d["e_fib"], d["sigma"], d["c1sq_fib"]) == (4, -4, -4)
    assert d["predicates"]["scy"] == "PASS"


def test_pi1_for_w(capsys):
    code, out, _ = run(capsys, "pi1", "catalog:W")
    assert code == 0 and out.strip() == "Certified Z^4"


def test_verify_exit_codes(capsys, tmp_path):
    assert run(capsys, "verify", "catalog:W1")[:2] == (0, "PASS\n")
    e = catalog.entry("W")
    bad = type(e.factorization)(e.factorization.surface, e.factorization.twists[1:])
    p = tmp_path / "bad.txt"
    p.write_text(dsl.serialize(bad))
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 1 and out.startswith("FAIL")
    p.write_text("surface g=1 b=0\nword: Bogus\ntarget: identity\n")
    code, _, err = run(capsys, "verify", str(p))
    assert code == 2 and "unknown curve" in err and ":2:7:" in err
    assert run(capsys, "verify", "catalog:nope")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 2


def test_verify_all_is_sorted(capsys):
    code, out, _ = run(capsys, "verify", "--all")
    ids = [ln.split(":")[0] for ln in out.splitlines()]
    assert code == 0 and ids == sorted(ids) and all(ln.endswith("PASS") for ln in out.splitlines())


def test_files_use_their_base_points(capsys, tmp_path):
    e = catalog.entry("W")
    p = tmp_path / "w.txt"
    p.write_text(dsl.serialize(e.factorization, e.base_points))
    d = json.loads(run(capsys, "invariants", str(p), "--json")[1])
    assert d["base_points"] == 4 and d["sigma"] == -4 and d["predicates"]["sigma_method"].startswith("meyer")


def test_h1_and_breed(capsys, tmp_path):
    assert run(capsys, "h1", "catalog:Wphi(2,3)")[1].strip() == "Z^2 + Z/6"
    out = tmp_path / "w1.txt"
    assert run(capsys, "breed", "W1", "-o", str(out))[0] == 0
    assert dsl.parse(out.read_text()) == catalog.entry("W1").factorization


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--json")
    ids = [r["id"] for r in json.loads(out)["entries"]]
    assert code == 0 and "W" in ids and "ck(1)" in ids


def test_oracles(capsys):
    assert run(capsys, "oracle", "rational-obstruction", "3", "2")[1].strip() == "NoSolution"
    d = json.loads(run(capsys, "oracle", "ruled-exclusion", "3", "4", "--json")[1])
    assert d["S2xT2"]["status"] == d["S2~T2"]["status"] == "Excluded"


def test_budget_environment_override(capsys, monkeypatch):
    monkeypatch.setenv("PENCILS_PI1_NODES", "5")
    code, out, _ = run(capsys, "pi1", "catalog:W", "--json")
    d = json.loads(out)
    assert code == 0 and d["status"] == "H1-only" and d["group"] == "Z^4"
    monkeypatch.setenv("PENCILS_PI1_NODES", "lots")
    assert run(capsys, "pi1", "catalog:W")[0] == 2


def test_certificate_output(capsys, tmp_path):
    p = tmp_path / "cert.txt"
    assert run(capsys, "pi1", "catalog:matsumoto", "--certificate", str(p))[0] == 0
    assert p.read_text().startswith("generators a1 b1 a2 b2")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
