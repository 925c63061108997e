import copy
import json
from fractions import Fraction

import pytest
import sympy

from cubicdiv.arith import valuation
from cubicdiv.poly import roots_mod_p
from cubicdiv.primesearch import (
    CongruenceSolution,
    assignments,
    augment_ramification,
    base_conditions,
    base_from_json,
    build_base,
    check_conditions,
    hypothesis_probe,
    is_lth_nonresidue,
    role_value,
    search_pairs,
    solve_congruences,
    splits_completely,
    verify_certificate,
)
from cubicdiv.uchida import TOTALLY_RAMIFIED, ParameterError, build_instance, classify_prime, uchida_m, uchida_poly

# smallest pairs below 10^6 for a~=1, n=5, s=1, d=-7 (frozen from a full run,
# each re-verified by verify_certificate)
Q1 = 491
Q2 = {2: 2591, 5: 2521}


@pytest.fixture(scope="module")
def result(base15):
    return search_pairs(base15, -7, 10**6, workers=2)


def test_base_fixtures(base15):
    assert base15.m == 7
    assert base15.poly == uchida_poly(7)
    assert base15.disc == 49
    assert base15.sigma_coords == (Fraction(-7), Fraction(-5), Fraction(-1))
    assert base15.field.discriminant == 49
    assert base15.ells == [2, 5]
    assert len(base15.triples()) == 4 + 25


def test_base_large_and_rejected():
    assert build_base(5, 5, 1).m == (5**10 + 27) // 4 == 2441413
    for args in [(5, 3, 1), (2, 5, 1), (1, 5, 0), (-1, 5, 1)]:
        with pytest.raises(ParameterError):
            build_base(*args)


def test_base_roundtrip(base15):
    again = base_from_json(json.loads(json.dumps(base15.to_json())))
    assert again.m == base15.m and again.sigma_coords == base15.sigma_coords


def test_splitting_in_cyclic_cubic(base15):
    for q in sympy.primerange(3, 10**4):
        if 6 * base15.disc % q == 0:
            continue
        roots = roots_mod_p(base15.poly, q)
        assert len(roots) in (0, 1, 3)
        split = splits_completely(q, base15)
        assert (split is not None) == (len(roots) == 3)
        if split:
            assert split == roots
            # sigma~ permutes the roots cyclically
            images = [base15.sigma_mod(c, q) for c in roots]
            assert sorted(images) == roots and images != roots


def test_assignments_cover_six_ordered_pairs(base15):
    roots = splits_completely(491, base15)
    pairs = assignments(roots, base15, 491)
    assert len(pairs) == 6
    assert {(c, g) for c, g, _ in pairs} == {(a, b) for a in roots for b in roots if a != b}
    assert {k for _, _, k in pairs} == {1, 2}


def test_lth_nonresidue_brute_force():
    for q in sympy.primerange(3, 500):
        for l in (2, 3, 5, 7):
            if (q - 1) % l:
                continue
            powers = {pow(y, l, q) for y in range(1, q)}
            for v in range(1, q):
                assert is_lth_nonresidue(v, l, q) == (v not in powers)


def test_condition_filters(base15):
    assert base_conditions(2, base15, -7) is not None
    assert base_conditions(7, base15, -7) is not None
    assert base_conditions(13, base15, -7) == "not-1-mod-2^s n"
    assert check_conditions(2521, base15, -7, (5, 0, 0), 2) == {"rejected": "unit-condition-trivial"}
    ev = check_conditions(491, base15, -7, (5, 1, 0), 1)
    assert ev["q"] == "491"
    c, g = (int(x) for x in ev["assignment"])
    assert role_value(c, g, 1, 0, 491, 1) == int(ev["value"])


def test_search_fixture(result, base15):
    assert not result.missing
    assert len(result.certificates) == 29
    for (l, i, j), cert in result.certificates.items():
        assert int(cert["q1"]["q"]) == Q1
        if (i, j) == (0, 0):
            assert cert["q2"] is None and "unit-condition-trivial" in cert["flags"]
        else:
            assert int(cert["q2"]["q"]) == Q2[l]
        for role in ("q1", "q2"):
            if cert[role] is not None:
                assert (int(cert[role]["q"]) - 1) % base15.modulus == 0
        assert verify_certificate(cert, base15, -7) == []
    assert result.to_json()["sigma_powers_used"] == [1, 2]


def test_tampered_certificates_fail(result, base15):
    cert = copy.deepcopy(result.certificates[(5, 1, 0)])
    cert["q2"]["value"] = str(int(cert["q2"]["value"]) + 1)
    assert verify_certificate(cert, base15, -7)
    cert = copy.deepcopy(result.certificates[(5, 1, 0)])
    cert["q2"] = copy.deepcopy(cert["q1"])
    assert "q1 == q2" in verify_certificate(cert, base15, -7)
    cert = copy.deepcopy(result.certificates[(2, 1, 1)])
    cert["q2"] = None
    assert "missing q2" in verify_certificate(cert, base15, -7)


def test_search_minimality(result, base15):
    # no smaller admissible q1 exists for any triple
    for q in sympy.primerange(3, Q1):
        for t in base15.triples():
            assert "rejected" in check_conditions(q, base15, -7, t, 1)


def test_resume(tmp_path, base15, result):
    path = tmp_path / "scan.json"
    partial = search_pairs(base15, -7, 1000, resume=str(path), segment=500)
    assert partial.missing
    state = json.loads(path.read_text())
    assert int(state["scanned_up_to"]) == 1000
    full = search_pairs(base15, -7, 10**6, resume=str(path), segment=500)
    assert full.to_json()["certificates"] == result.to_json()["certificates"]


def test_solve_congruences(result, base15):
    sol = solve_congruences(list(result.certificates.values()), base15, -7)
    assert sol.check() == []
    assert sol.a % 2 == 1
    assert sol.modulus == 2 * Q1 * 2521 * 2591
    m = uchida_m(-7, 5, 1, sol.a)
    for q in (Q1, 2521, 2591):
        assert (m - base15.m) % q == 0
        assert all((x - y) % q == 0 for x, y in zip(uchida_poly(m).coeffs, base15.poly.coeffs))
    again = CongruenceSolution.from_json(json.loads(json.dumps(sol.to_json())))
    assert again == sol


def test_augment_ramification(result, base15):
    sol = solve_congruences(list(result.certificates.values()), base15, -7)
    assert augment_ramification(sol, 0) == sol
    aug = augment_ramification(sol, 2)
    assert len(aug.ramified) == 2
    assert aug.modulus == sol.modulus * aug.ramified[0] ** 2 * aug.ramified[1] ** 2
    assert aug.check() == []
    assert (aug.a - sol.a) % sol.modulus == 0
    m = uchida_m(-7, 5, 1, aug.a)
    inst = build_instance(-7, 5, 1, aug.a)
    for p in aug.ramified:
        assert valuation(m, p) == 1
        assert classify_prime(p, inst) == TOTALLY_RAMIFIED


def test_hypothesis_probe_reports_unit_alpha(base15):
    report = hypothesis_probe(base15)
    assert report["alpha_norm"] == "-1"
    assert report["alpha_valuations"] == []
    assert {v["status"] for v in report["lth_power"].values()} == {"violated"}
    assert report["unit_index"]["status"].startswith("unverified")
