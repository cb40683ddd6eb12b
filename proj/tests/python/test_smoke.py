from pathlib import Path

import pytest

import pbsym

DATA = Path(__file__).resolve().parents[1] / "data"
PHP = (DATA / "php32.cnf").read_text()
SYMS = (DATA / "php32.sym").read_text()


def test_golden_proof_is_verified():
    r = pbsym.check(PHP, (DATA / "php32_golden.pbp").read_text())
    assert r["verdict"] == "VERIFIED-DERIVATION"
    assert r["counters"]["spec_materializations"] > 0


def test_rejection_carries_location():
    bad = (DATA / "php32_golden.pbp").read_text().replace("$a1 -> 0;", "$a1 -> 1;")
    with pytest.raises(pbsym.Rejection, match=r"line:\d+ goal:"):
        pbsym.check(PHP, bad)
    with pytest.raises(pbsym.ParseError):
        pbsym.check(PHP, "not a proof")


@pytest.mark.parametrize("method,cp", [("new", False), ("new", True), ("old", False)])
def test_break_round_trip(method, cp):
    out = pbsym.break_symmetries(PHP, SYMS, method=method, cp_variant=cp)
    assert len(out["fragments"]) == 2
    assert out["breaking"]
    assert pbsym.check(PHP, out["proof"])["verdict"] == "VERIFIED-DERIVATION"


def test_reference_lists():
    out = pbsym.break_symmetries(PHP, SYMS, order=["x5", "x6", "x1", "x2", "x3", "x4"])
    assert len(out["breaking"]) == 26
    assert "+1 ~x1 +1 x3 >= 1" in out["breaking"]


def test_generate_and_oracle():
    inst = pbsym.generate("php", [4])
    assert inst["num_vars"] == 12
    out = pbsym.break_symmetries(inst["cnf"], inst["symmetries"])
    assert pbsym.check(inst["cnf"], out["proof"])["verdict"] == "VERIFIED-DERIVATION"
    assert pbsym.oracle_lex([False, True], [True, False])
    with pytest.raises(pbsym.PbsymError):
        pbsym.break_symmetries(PHP, "(x1 x2)\n")
