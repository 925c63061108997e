
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cubicdiv.poly import Poly, factor_mod_p, poly_discriminant, resultant, root_multiplicities, roots_mod_p
from cubicdiv.uchida import uchida_poly

X = sympy.Symbol("x")


def to_sympy(f: Poly):
    return sum(sympy.Rational(c) * X**i for i, c in enumerate(f.coeffs))


def test_roots_fixtures():
    assert roots_mod_p(Poly([0, -1, 0, 1]), 5) == [0, 1, 4]
    assert roots_mod_p(Poly([1, 0, 1]), 3) == []
    with pytest.raises(ValueError):
        roots_mod_p(Poly([7, 14]), 7)


def test_roots_agree_with_exhaustive_evaluation():
    f = Poly([7, 14, 7, 1])
    for p in sympy.primerange(2, 1000):
        assert roots_mod_p(f, p) == [x for x in range(p) if f(x) % p == 0]


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=6), st.integers(10**4, 2 * 10**4))
def test_roots_gcd_route_against_exhaustive(coeffs, seed):
    # above the exhaustive threshold the gcd(x^p - x, f) route is taken
    p = sympy.nextprime(seed)
    f = Poly(coeffs + [1])
    assert roots_mod_p(f, p) == [x for x in range(p) if f(x) % p == 0]


def test_uchida_roots_mod_disc_part():
    # u = (x+3)^2 (x+m-6) mod p for p | 4m-27
    m = -62505
    u = uchida_poly(m)
    mult = root_multiplicities(u, 7)
    assert mult == {(-3) % 7: 2, (6 - m) % 7: 1} or mult == {(-3) % 7: 3}
    for p in (7, 5, 463):
        for x in range(p):
            assert (u(x) - (x + 3) ** 2 * (x + m - 6)) % (4 * m - 27) == (27 - 4 * m) * (x + 2) % (4 * m - 27)


def test_factor_mod_p_matches_sympy():
    f = Poly([-1, -1, 0, 1])
    for p in sympy.primerange(2, 200):
        ours = sorted(len(g) - 1 for g, e in factor_mod_p(f, p) for _ in range(e))
        theirs = sorted(sympy.degree(g, X) for g, e in sympy.factor_list(to_sympy(f), modulus=p)[1] for _ in range(e))
        assert ours == theirs and sum(ours) == 3


def test_discriminant_fixtures():
    m = -4914
    assert poly_discriminant(uchida_poly(m)) == m * m * (4 * m - 27)
    assert m * m * (4 * m - 27) == (-4914) ** 2 * (-19683)
    b, c = -182, 3
    g = Poly([b, 2 * b * c, b * c * c, 1])  # x^3 + b (c x + 1)^2
    assert poly_discriminant(g) == b * b * (4 * b * c**3 - 27)
    assert poly_discriminant(Poly([5, 3, 1])) == 9 - 20


@given(st.integers(-(10**9), 10**9).filter(lambda m: m != 0))
def test_uchida_discriminant_symbolic(m):
    assert poly_discriminant(uchida_poly(m)) == m * m * (4 * m - 27)


def sylvester_det(f: Poly, g: Poly) -> int:
    m, n = f.degree, g.degree
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return int(sympy.Matrix(rows).det())


def test_resultant_small():
    assert resultant(Poly([0, 1]), Poly([2, 0, 0, 1])) == 2
    assert resultant(Poly([-2, 1]), Poly([1, 0, 1])) == 5


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_resultant_against_sylvester(a, b):
    f, g = Poly(a + [1]), Poly(b + [1])
    assert resultant(f, g) == sylvester_det(f, g)
