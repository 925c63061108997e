import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cubicdiv.poly import Poly, poly_discriminant
from cubicdiv.uchida import (
    SQUARE_TIMES_PRIME,
    THREE_SPECIAL,
    TOTALLY_RAMIFIED,
    UNRAMIFIED,
    ParameterError,
    alpha_data,
    beta_ideal,
    build_instance,
    classify_and_check,
    classify_prime,
    decompose_alpha,
    ramification_report,
    uchida_m,
    uchida_poly,
    unit_eps,
    validate_parameters,
)

valid_d = st.integers(-200, -1).filter(lambda d: d % 4 == 1 and sympy.factorint(-d) and all(e == 1 for e in sympy.factorint(-d).values()))
params = st.tuples(valid_d, st.sampled_from([1, 3, 5, 7]), st.integers(1, 3), st.integers(-15, 15).filter(lambda a: a % 2))


def test_m_fixtures():
    assert uchida_m(-7, 3, 1, 1) == -62505
    assert uchida_m(-3, 3, 1, 1) == -4914


@pytest.mark.parametrize(
    "args, code",
    [
        ((5, 3, 1, 1), "d-positive"),
        ((-5, 3, 1, 1), "d-not-1-mod-4"),
        ((-4, 3, 1, 1), "d-not-1-mod-4"),
        ((-27, 3, 1, 1), "d-not-squarefree"),
        ((-7, 2, 1, 1), "n-even"),
        ((-7, 0, 1, 1), "n-nonpositive"),
        ((-7, 3, 0, 1), "s-nonpositive"),
        ((-7, 3, 1, 2), "a-even"),
    ],
)
def test_parameter_errors(args, code):
    with pytest.raises(ParameterError) as info:
        validate_parameters(*args)
    assert info.value.code == code


@settings(max_examples=200, deadline=None)
@given(params)
def test_polynomial_identities(p):
    d, n, s, a = p
    m = uchida_m(d, n, s, a)
    u = uchida_poly(m)
    assert 4 * m - 27 == 3**6 * d**n * a ** (2**s * n)
    assert poly_discriminant(u) == m * m * (4 * m - 27) < 0
    x = Poly.x()
    assert u - (x + 3) ** 2 * (x + (m - 6)) == (27 - 4 * m) * (x + 2)
    assert u.compose(x - 1) == Poly([-1, 3, m - 3, 1])


def test_trace_identity(inst7, inst3):
    for inst in (inst7, inst3):
        kf, m = inst.KF, inst.m
        z = (kf.pi + (m - 6)) * (kf.pi_sigma + (m - 6))
        assert 16 * z.trace_to_F() == inst.F.element((4 * m - 61) * (4 * m - 27) + 81)


def test_alpha_fixture(inst7):
    data = alpha_data(inst7)
    F = inst7.F
    S = inst7.sqrt_disc
    assert S == F.from_sqrt_coords(0, -189)
    # the norm to F is -S/27 = 7 sqrt(-7) = (-sqrt(-7))^3
    assert data.norm_F == F.from_sqrt_coords(0, 7)
    assert data.norm_F * 27 == -S
    r = -F.sqrt_d
    assert data.norm_F == r * r * r
    assert data.norm_Q == 343
    assert data.trace == F.element(20805, 63)
    assert data.trace_alpha_alpha_sigma == F.element(6914, 63)
    assert [c.to_json() for c in data.h] == [["7", "-14"], ["6914", "63"], ["-20805", "-63"], ["1", "0"]]
    assert data.h1[0] == F.element(-1)


@pytest.mark.parametrize("args", [(-7, 3, 1, 1), (-3, 3, 1, 1), (-11, 3, 1, 1), (-7, 5, 1, 1), (-7, 3, 2, 1), (-15, 3, 1, 1)])
def test_alpha_invariants(args):
    inst = build_instance(*args)
    data = alpha_data(inst)
    assert all(c.is_integral() for c in data.h + data.h1)
    assert data.trace.divisible_by(3)
    assert not data.trace_alpha_alpha_sigma.divisible_by(3)
    kf = inst.KF
    acc = kf.element(0)
    for c in reversed(data.h):
        acc = acc * data.alpha + kf.from_quad(c)
    assert acc.is_zero()
    d, n, s, a = args
    assert data.norm_Q == abs(d) ** n * a ** (2**s * n)
    assert data.norm_F * 27 == -inst.sqrt_disc


def test_unit_eps(inst7):
    eps = unit_eps(inst7)
    assert eps.min_poly == Poly([-1, 3, inst7.m - 3, 1])
    assert eps.eps.norm() == 1
    assert eps.regulator[0] > 0


def test_classify_fixtures(inst7, inst3):
    assert classify_prime(5, inst7) == TOTALLY_RAMIFIED
    assert classify_prime(7, inst7) == SQUARE_TIMES_PRIME
    assert classify_prime(11, inst3) == UNRAMIFIED
    assert classify_prime(3, inst3) == THREE_SPECIAL
    with pytest.raises(ValueError):
        classify_prime(9, inst3)


def test_classify_agrees_with_direct_factorization():
    inst = build_instance(-11, 3, 1, 1)
    for p in sympy.primerange(2, 400):
        rule, direct = classify_and_check(p, inst)
        if rule in (TOTALLY_RAMIFIED, SQUARE_TIMES_PRIME, UNRAMIFIED):
            assert rule == direct


def test_ramification_reports(inst7, inst3):
    r3 = ramification_report(inst3)
    assert r3.cube_free == (-182, 3)
    assert {2, 7, 13} <= set(r3.totally_ramified)
    r7 = ramification_report(inst7)
    assert r7.cube_free == (-2315, 3)
    assert {5, 463} <= set(r7.totally_ramified)
    assert r7.t == 0 and r7.complete
    for inst in (inst3, inst7):
        for p in sympy.factorint(abs(inst.disc_part)):
            if p != 3:
                assert inst.m % p


def test_decompose_alpha(inst7, inst3):
    w7 = decompose_alpha(inst7)
    assert w7.all_divisible() and all(w7.structure_checks.values())
    assert sorted(v.valuation for v in w7.entries[7]) == [0, 0, 3]
    assert all(v.valuation == 0 for v in w7.entries[3])
    w3 = decompose_alpha(inst3)
    assert w3.structure_checks["three_splits_completely"] and w3.structure_checks["alpha_in_one_prime_above_3"]
    assert sorted(v.valuation for v in w3.entries[3]) == [0, 0, 3]


def test_decompose_alpha_auxiliary_prime():
    inst = build_instance(-7, 3, 1, 5)
    w = decompose_alpha(inst)
    assert w.all_divisible()
    assert any(v.valuation for v in w.entries[5])


def test_beta_fixture(inst7):
    b = beta_ideal(inst7)
    K = inst7.K
    assert [str(c) for c in b.beta.coords] == ["1/3", "-62507/9", "1/9"]
    assert b.ideal.norm == 7
    assert b.ideal.to_json()["hnf"] == [["7", "0", "0"], ["5", "1", "0"], ["2", "0", "1"]]
    assert b.ideal ** 3 == K.principal_ideal(b.beta)
    assert b.ideal.norm ** 3 == abs(b.beta.norm())
    kf = inst7.KF
    assert b.unit_ratio == -kf.pi_sigma / kf.pi.sigma(2)


def test_beta_d3(inst3):
    b = beta_ideal(inst3)
    assert b.ideal.norm == 3
    assert b.ideal ** 3 == inst3.K.principal_ideal(b.beta)
