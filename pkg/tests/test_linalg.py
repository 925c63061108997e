import itertools
from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from cubicdiv.linalg import det, hnf, hnf_contains, hnf_det, inverse, kernel_mod, mat_mul, smith_normal_form
from cubicdiv.numberfield.lattice import fincke_pohst, lll

small = st.integers(-30, 30)
square3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


@given(square3)
def test_det_and_inverse(A):
    assert det(A) == sympy.Matrix(A).det()
    if det(A):
        I = mat_mul(A, inverse(A))
        assert I == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=6))
def test_hnf_spans_same_lattice(gens):
    if sympy.Matrix(gens).rank() < 3:
        return
    H = hnf(gens, 3)
    for j, col in enumerate(H):
        assert col[j] > 0 and all(x == 0 for x in col[j + 1:])
    for g in gens:
        assert hnf_contains(H, g)
    # index of the lattice equals the gcd of maximal minors
    minors = [abs(sympy.Matrix([gens[i] for i in rows]).det()) for rows in itertools.combinations(range(len(gens)), 3)]
    assert hnf_det(H) == sympy.gcd(minors)


@settings(max_examples=60)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=5))
def test_snf_against_sympy(A):
    diag, U, V = smith_normal_form(A)
    D = mat_mul(mat_mul(U, A), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == 0 if i != j else abs(x) == diag[i]
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    for a, b in zip(diag, diag[1:]):
        assert b == 0 or (a != 0 and b % a == 0)
    theirs = sympy_snf(sympy.Matrix(A))
    assert [abs(theirs[i, i]) for i in range(min(theirs.shape))] == diag


def test_kernel_mod():
    A = [[1, 2, 3], [2, 4, 6]]
    K = kernel_mod(A, 7)
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) % 7 == 0 for row in A)
    assert len(K) == 2


def test_lll_and_enumeration():
    basis = [[1, 0, 0], [1000, 1, 0], [777, 555, 1]]
    T = lll(basis)
    red = [[sum(T[i][k] * basis[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert abs(det(T)) == 1
    assert max(sum(x * x for x in v) for v in red) < min(sum(x * x for x in v) for v in basis[1:])
    gram = [[2, 1, 0], [1, 2, 1], [0, 1, 2]]
    found = set(fincke_pohst(gram, 2.5))
    brute = set()
    for x in itertools.product(range(-3, 4), repeat=3):
        q = sum(x[i] * gram[i][j] * x[j] for i in range(3) for j in range(3))
        if 0 < q <= 2.5:
            brute.add(max(x, tuple(-c for c in x)))
    assert len(found) == len(brute)
    assert {max(x, tuple(-c for c in x)) for x in found} == brute
