"""End-to-end smoke tests for the Python bindings."""

import json

import pytest

import chatelet2


def test_construct_base_field_instance():
    inst = chatelet2.construct_dict(1)
    assert inst["m"] == 1
    assert inst["gamma"] == "1"
    assert inst["n"] == 1
    assert inst["b"] == ["0", "1"]                      # b = t
    assert inst["a"] == ["1", "0", "0", "1", "1"]       # a = t^4 + t^3 + 1


def test_construct_is_deterministic():
    assert chatelet2.construct(1) == chatelet2.construct(1, threads=4)


def test_field_helpers():
    assert chatelet2.find_gamma(1) == "1"
    assert chatelet2.find_gamma(2) == "2"  # the generator of F_4 has trace 1
    assert chatelet2.trace(2, "2") == 1
    assert chatelet2.trace(2, "1") == 0
    assert chatelet2.is_irreducible(1, ["1", "1", "1"])       # t^2 + t + 1
    assert not chatelet2.is_irreducible(1, ["1", "0", "1"])   # (t + 1)^2


def test_factor_expands_back():
    # (t^2 + t + 1)^2 * t = t^5 + t^3 + t
    factors = chatelet2.factor(1, ["0", "1", "0", "1", "0", "1"])
    assert factors == [(["0", "1"], 1), (["1", "1", "1"], 2)]


def test_certify_and_verify_round_trip():
    inst = chatelet2.construct(1)
    cert = chatelet2.certify(inst, degree_bound=2, prec=16, count=5, seed=7, height=1)
    chatelet2.verify(cert)  # must not raise

    parsed = json.loads(cert)
    assert parsed["invariant_sum"] == "1/2"
    halves = [r for r in parsed["reports"] if r["invariant"] == "1/2"]
    assert len(halves) == 1
    assert halves[0]["place"] == {"kind": "finite", "prime": ["0", "1"]}


def test_verify_rejects_tampering():
    inst = chatelet2.construct(1)
    cert = json.loads(chatelet2.certify(inst, degree_bound=2, prec=16, count=5,
                                        seed=7, height=1))
    assert cert["reports"][0]["invariant"] == "0"  # the infinite place
    cert["reports"][0]["invariant"] = "1/2"  # recomputation must contradict this
    with pytest.raises(chatelet2.CertificateInvalid):
        chatelet2.verify(json.dumps(cert))


def test_search_excludes_every_x():
    inst = chatelet2.construct(1)
    report = chatelet2.search_dict(inst, height=1)
    assert report["points_found"] == 0
    assert report["height"] == 1
    # x = num/den with deg <= 1, den monic, coprime: num in {0,1,t,t+1} over
    # den = 1, plus 1/t, (t+1)/t, 1/(t+1), t/(t+1) -- 8 coordinates in all.
    assert len(report["excluding_places"]) == 8
    for entry in report["excluding_places"]:
        assert entry["valuation"] % 2 == 1
