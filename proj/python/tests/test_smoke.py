import pytest

import gdpa

SPECIAL_Z2 = {"ring": "Z", "family": "classical", "special": {"ideal": [2], "h": 2}}


def test_commands_listed():
    assert "hilbert" in gdpa.commands()
    assert len(gdpa.commands()) == 15


def test_cbinom():
    assert gdpa.cbinom(4, 2) == "6"
    assert gdpa.cbinom(4, 2, ring="Z[q]", family="cyclotomic") == "1+q+2*q^2+q^3+q^4"


def test_pi_check_violation():
    res = gdpa.pi_check(10, values={"2": 2, "3": 2}, family="custom")
    assert res.code == 1
    assert res.data["violation"] == [2, 3]


def test_hilbert_fit():
    res = gdpa.hilbert(SPECIAL_Z2, horizon=12)
    assert res.ok
    assert res.data["fit"] == "[Z/2]/(1-t^2)"
    assert [p["piece"]["text"] for p in res.data["pieces"][:3]] == ["Z/2", "0", "Z/2"]


def test_tor_of_residue_field():
    module = {"ring": "GF(2)", "generators": [0], "relations": [{"degree": 1, "coeffs": [1]}]}
    res = gdpa.tor(module, max_i=2, horizon=8)
    assert res.ok
    by_i = {i: [e["degree"] for e in res.data["nonzero"] if e["i"] == i] for i in range(3)}
    assert by_i == {0: [0], 1: [1], 2: [2]}


def test_torsion_and_special():
    poly_quotient = {"ring": "Q", "family": "all_ones", "generators": [0],
                     "relations": [{"degree": 1, "coeffs": [1]}]}
    assert gdpa.torsion(poly_quotient).data["verdict"] == "has-torsion"
    res = gdpa.special_resolution({"ring": "GF(3)", "generators": [0],
                                   "relations": [{"degree": 4, "coeffs": [1]}]})
    assert res.ok and res.data["verified"]


def test_bound_check_and_a2():
    res = gdpa.bound_check({"ring": "Z", "chain": [[12], [12], [12]]})
    assert res.data["reports"][0]["N"] == 12
    assert res.data["reports"][0]["pass"]
    a2 = gdpa.a2_check([6])
    assert a2.ok and a2.data["n"] == 6


def test_counterexample_and_recovery():
    ce = gdpa.counterexample(2, 1)
    assert ce.data["relation_holds"] and ce.data["not_generated_below"]
    rec = gdpa.recover_pi(ring="Z_(3)", up_to=9)
    assert rec.data["locus"] == [1, 3, 9]


def test_schema_error_has_pointer():
    with pytest.raises(gdpa.SchemaError, match="/relations/0/coeffs") as info:
        gdpa.hilbert({"ring": "Z", "generators": [0], "relations": [{"degree": 1}]})
    assert info.value.pointer == "/relations/0/coeffs"
    with pytest.raises(gdpa.PreconditionError):
        gdpa.run("cbinom", n=2, m=3)
    with pytest.raises(gdpa.UnsupportedRing):
        gdpa.special_resolution(SPECIAL_Z2)
    with pytest.raises(TypeError):
        gdpa.run("cbinom", bogus=1)
