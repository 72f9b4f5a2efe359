"""Smoke tests for the Python bindings."""

import json
from pathlib import Path

import pytest

import measuring_lab as ml

CORPUS = Path(__file__).resolve().parents[2] / "corpus"


def load(rel):
    return json.loads((CORPUS / rel).read_text())


def test_standard_structures_check():
    for name, n in [("truncated_polynomial", 3), ("group_algebra_cyclic", 2), ("matrix_algebra", 2),
                    ("grouplike_coalgebra", 2), ("divided_power_coalgebra", 2), ("group_bimonoid_cyclic", 2)]:
        assert ml.check(ml.standard(name, "F2", n))["ok"], name


def test_relative_refs_resolve_against_base():
    doc = load("modules/dual_numbers_regular.json")
    assert ml.check(doc, str(CORPUS / "modules"))["ok"]


def test_broken_algebra_reports_failure():
    doc = ml.standard("truncated_polynomial", "F2", 3)
    doc["mult"].append([1, 1, 0, "1"])
    r = ml.check(doc)
    assert not r["ok"] and "Associativity" in r["failure"]


def test_dual_round_trip_checks():
    a = ml.standard("group_algebra_cyclic", "F3", 3)
    c = ml.dual(a)
    assert c["kind"] == "coalgebra" and ml.check(c)["ok"]
    assert ml.check(ml.dual(c))["ok"]


def test_convolution_dimension():
    c = ml.standard("matrix_coalgebra", "Q", 2)
    a = ml.standard("group_algebra_cyclic", "Q", 2)
    conv = ml.convolution(c, a)
    assert conv["dim"] == 8 and ml.check(conv)["ok"]


def test_pab_and_census():
    a = ml.standard("truncated_polynomial", "F2", 2)
    k = ml.standard("ground_algebra", "F2")
    assert ml.pab(a, k)["kind"] == "pab_bundle"
    r = ml.census(a, k, ml.dual(a))
    assert r["ok"] and r["measurings"] == r["coalgebra_maps"]


def test_isocomod_regular_module():
    a = ml.standard("truncated_polynomial", "F2", 2)
    k = ml.standard("ground_algebra", "F2")
    r = ml.isocomod(a, k, 1, load("modules/k_f2.json") | {"over": load("algebras/k_f2.json")})
    assert r["ok"]


def test_fib_corpus_omega_matches_liftings():
    insts = ml.fib_corpus()
    assert len(insts) == 10
    for inst in insts:
        r = ml.fib_synthesize(inst)
        assert r["bijection"] and r["natural"]
        assert r["omega_invertible"] == r["preserves_liftings"]


def test_hopf_lift():
    assert ml.hopf_lift(ml.standard("regular_hopf_module", "F2", 2))["ok"]


def test_errors_are_typed():
    with pytest.raises(ml.Error, match="SchemaError"):
        ml.check({"kind": "algebra", "dim": 0})
    with pytest.raises(ml.Error, match="ParseError"):
        ml.check("{")
