import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cubicdiv.arith import (
    FactorizationBudgetExceeded,
    crt,
    cube_free_split,
    factorize,
    integer_nth_root,
    is_prime,
    is_squarefree,
    kronecker,
    next_prime,
    power_residue_test,
    primes_up_to,
    rth_root_mod,
    valuation,
)


def test_factorize_fixtures():
    assert factorize(-4914).factors == ((2, 1), (3, 3), (7, 1), (13, 1))
    assert factorize(-4914).sign == -1
    f = factorize(1)
    assert f.factors == () and f.sign == 1
    assert factorize(-250047).factors == ((3, 6), (7, 3))


def test_factorize_zero_rejected():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_budget_is_explicit():
    p, q = sympy.nextprime(2**80), sympy.nextprime(2**81)
    with pytest.raises(FactorizationBudgetExceeded) as info:
        factorize(12 * p * q, effort=10)
    assert info.value.partial.value() * info.value.cofactor == 12 * p * q


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-(2**64), max_value=2**64).filter(lambda x: x != 0))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.value() == n
    assert list(f.primes) == sorted(f.primes)
    assert all(sympy.isprime(p) for p in f.primes)


def test_factorize_large_roundtrip():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 2**512)
        try:
            f = factorize(n, effort=20_000)
        except FactorizationBudgetExceeded as exc:
            assert exc.partial.value() * exc.cofactor == n
            assert not sympy.isprime(exc.cofactor)
        else:
            assert f.value() == n


def test_valuation():
    assert valuation(-4914, 3) == 3
    assert valuation(7, 7) == 1
    assert valuation(-250047, 7) == 3


def test_cube_free_split():
    assert cube_free_split(-4914) == (-182, 3)
    assert cube_free_split(8) == (1, 2)
    assert cube_free_split(-62505) == (-2315, 3)


@given(st.integers(min_value=-(10**12), max_value=10**12).filter(lambda x: x != 0))
def test_cube_free_split_property(m):
    b, c = cube_free_split(m)
    assert b * c**3 == m and c > 0
    assert all(e < 3 for _, e in factorize(b).factors)


def test_crt_fixtures():
    assert crt([(1, 3), (2, 5)]) == (7, 15)
    assert crt([(0, 11)]) == (0, 11)
    # exhaustive oracle over 0..1000
    expected = next(x for x in range(1001) if x % 7 == 2 and x % 11 == 3 and x % 13 == 5)
    assert expected == 135
    assert crt([(2, 7), (3, 11), (5, 13)]) == (135, 1001)


def test_crt_inconsistent():
    with pytest.raises(ValueError):
        crt([(1, 4), (2, 6)])


@given(st.lists(st.tuples(st.integers(0, 10**6), st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23])), min_size=1, max_size=5,
                unique_by=lambda t: t[1]))
def test_crt_property(pairs):
    x, M = crt(pairs)
    assert 0 <= x < M
    for r, m in pairs:
        assert (x - r) % m == 0


def test_power_residue_fixtures():
    assert power_residue_test(3, 6, 13) is False
    assert power_residue_test(1, 7, 29) is True
    assert power_residue_test(4, 2, 7) is True


def test_power_residue_brute_force():
    for q in sympy.primerange(3, 200):
        for r in range(1, 13):
            powers = {pow(y, r, q) for y in range(1, q)}
            for x in range(1, q):
                assert power_residue_test(x, r, q) == (x in powers)


def test_rth_root_fixtures():
    assert rth_root_mod(4, 2, 7) in (2, 5)
    assert rth_root_mod(10, 1, 13) == 10
    assert rth_root_mod(3, 6, 13) is None


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 10**6), st.integers(1, 64), st.integers(1, 10**9))
def test_rth_root_property(qseed, r, x):
    q = sympy.nextprime(qseed)
    x %= q
    if x == 0:
        return
    z = rth_root_mod(x, r, q)
    if z is None:
        assert not power_residue_test(x, r, q)
    else:
        assert pow(z, r, q) == x


def test_primes_and_primality():
    assert primes_up_to(100) == list(sympy.primerange(2, 101))
    for n in range(2, 3000):
        assert is_prime(n) == sympy.isprime(n)
    big = 2**127 - 1
    assert is_prime(big)
    assert next_prime(100) == 101


def test_squarefree_kronecker():
    for n in range(-200, 200):
        if n:
            assert is_squarefree(n) == all(e == 1 for e in sympy.factorint(abs(n)).values())
    for a in range(-30, 30):
        for n in range(1, 60, 2):
            assert kronecker(a, n) == sympy.jacobi_symbol(a % n, n)


def test_integer_nth_root():
    assert integer_nth_root(3**30, 5) == 3**6
    assert integer_nth_root(3**30 + 1, 5) is None
