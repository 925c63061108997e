"""Orders and ideals in a commutative Q-algebra given by structure constants.

The same code serves the cubic field K (dimension 3, power basis) and the
compositum KF (dimension 6), where only p-maximal orders at a handful of
primes are ever built.

Coordinates:
  * algebra coordinates: Fractions over the algebra's basis e_0 = 1, ..., e_{n-1}
  * order coordinates: over a Z-basis w_0..w_{n-1} of the order (ints for
    order elements)
Ideals are integral ideals of an order, stored as an HNF in order
coordinates (see linalg.hnf for the column convention).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from ..arith import valuation as int_valuation
from ..linalg import (
    det,
    hnf,
    hnf_contains,
    hnf_det,
    hnf_solve,
    inverse,
    kernel_mod,
    mat_pow_mod,
    mat_vec,
    reduce_mod_subspace,
    rref_mod,
    transpose,
)
from ..poly import roots_mod_p


class Algebra:
    """Q-algebra with basis e_0 = 1, e_1, ..., e_{n-1}."""

    def __init__(self, table: Sequence[Sequence[Sequence[Fraction]]]):
        self.n = len(table)
        self.table = [[[Fraction(c) for c in v] for v in row] for row in table]
        self._sparse = [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in self.table]

    def one(self) -> list[Fraction]:
        return [Fraction(int(i == 0)) for i in range(self.n)]

    def mul(self, a: Sequence, b: Sequence) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        sp = self._sparse
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = sp[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in row[j]:
                    out[k] += c * t
        return out

    def mult_matrix(self, a: Sequence) -> list[list[Fraction]]:
        """Matrix M with M x = a*x (columns are a*e_j)."""
        cols = [self.mul(a, [int(i == j) for i in range(self.n)]) for j in range(self.n)]
        return transpose(cols)

    def norm(self, a: Sequence) -> Fraction:
        return det(self.mult_matrix(a))

    def trace(self, a: Sequence) -> Fraction:
        M = self.mult_matrix(a)
        return sum((M[i][i] for i in range(self.n)), Fraction(0))

    def inverse(self, a: Sequence) -> list[Fraction]:
        from ..linalg import solve

        return solve(self.mult_matrix(a), self.one())

    def charpoly(self, a: Sequence) -> list[Fraction]:
        """Characteristic polynomial of multiplication by a, low degree first."""
        return charpoly_matrix(self.mult_matrix(a))


def charpoly_matrix(M: Sequence[Sequence]) -> list[Fraction]:
    """Faddeev-LeVerrier; returns monic coefficients low degree first."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # Mk = A*(M_{k-1}) + c_{n-k+1} I
        prev = Mk
        Mk = [[sum(A[i][t] * prev[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            Mk[i][i] += c
        AM = [[sum(A[i][t] * Mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


class Order:
    """A full-rank subring of an Algebra, given by a Z-basis."""

    def __init__(self, algebra: Algebra, basis: Sequence[Sequence[Fraction]]):
        self.algebra = algebra
        self.n = algebra.n
        self.basis = [[Fraction(c) for c in b] for b in basis]
        self._B = transpose(self.basis)  # columns = basis vectors
        self._Binv = inverse(self._B)
        self.table: list[list[list[int]]] = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                c = self.to_order(algebra.mul(self.basis[i], self.basis[j]))
                if any(x.denominator != 1 for x in c):
                    raise ValueError("basis does not span a ring")
                row.append([int(x) for x in c])
            self.table.append(row)
        one = self.to_order(algebra.one())
        if any(x.denominator != 1 for x in one):
            raise ValueError("order does not contain 1")
        self.one = [int(x) for x in one]
        self._sparse = [[[(k, c) for k, c in enumerate(v) if c] for v in row] for row in self.table]
        self._mult_mats: list[list[list[int]]] | None = None

    # coordinates ---------------------------------------------------------
    def to_order(self, a: Sequence) -> list[Fraction]:
        return mat_vec(self._Binv, [Fraction(x) for x in a])

    def from_order(self, c: Sequence) -> list[Fraction]:
        return mat_vec(self._B, [Fraction(x) for x in c])

    def contains(self, a: Sequence) -> bool:
        return all(x.denominator == 1 for x in self.to_order(a))

    # arithmetic in order coordinates ---------------------------------------
    def mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        out = [0] * self.n
        sp = self._sparse
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = sp[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in row[j]:
                    out[k] += c * t
        return out

    def mul_mod(self, a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
        return [x % p for x in self.mul(a, b)]

    def pow_mod(self, a: Sequence[int], e: int, p: int) -> list[int]:
        result = [x % p for x in self.one]
        base = [x % p for x in a]
        while e:
            if e & 1:
                result = self.mul_mod(result, base, p)
            base = self.mul_mod(base, base, p)
            e >>= 1
        return result

    def unit_vector(self, i: int) -> list[int]:
        return [int(j == i) for j in range(self.n)]

    def mult_matrices(self) -> list[list[list[int]]]:
        """Integer matrices of multiplication by each basis element."""
        if self._mult_mats is None:
            self._mult_mats = [
                transpose([self.table[i][j] for j in range(self.n)]) for i in range(self.n)
            ]
        return self._mult_mats

    def element_matrix(self, a: Sequence[int]) -> list[list[int]]:
        mats = self.mult_matrices()
        n = self.n
        M = [[0] * n for _ in range(n)]
        for i, ai in enumerate(a):
            if ai:
                Ti = mats[i]
                for r in range(n):
                    Mr, Tr = M[r], Ti[r]
                    for c in range(n):
                        Mr[c] += ai * Tr[c]
        return M

    def norm(self, a: Sequence[int]) -> int:
        return int(det(self.element_matrix(a)))

    def discriminant(self) -> int:
        traces = [[self.algebra.trace(self.algebra.mul(bi, bj)) for bj in self.basis] for bi in self.basis]
        return int(det(traces))

    def index_in(self, other: "Order") -> Fraction:
        """[self : other] for other a suborder (ratio of covolumes)."""
        return abs(det(other._B) / det(self._B))

    # ideals -----------------------------------------------------------------
    def ideal(self, generators: Sequence[Sequence[int]], modulus: int | None = None) -> "Ideal":
        return Ideal(self, hnf(generators, self.n, modulus))

    def principal_ideal(self, a: Sequence[int]) -> "Ideal":
        if not any(a):
            raise ValueError("zero element generates the zero ideal")
        gens = [self.mul(a, self.unit_vector(i)) for i in range(self.n)]
        return Ideal(self, hnf(gens, self.n, abs(self.norm(a))))

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, hnf([self.unit_vector(i) for i in range(self.n)], self.n))


class Ideal:
    """Integral ideal of an Order, as an HNF (tuple of column vectors)."""

    def __init__(self, order: Order, H: tuple[tuple[int, ...], ...]):
        self.order = order
        self.hnf = H

    @property
    def norm(self) -> int:
        return hnf_det(self.hnf)

    def columns(self) -> list[list[int]]:
        return [list(c) for c in self.hnf]

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.order is other.order and self.hnf == other.hnf

    def __hash__(self):
        return hash(self.hnf)

    def __repr__(self) -> str:
        return f"Ideal(norm={self.norm}, hnf={[list(c) for c in self.hnf]})"

    def contains(self, a: Sequence[int]) -> bool:
        return hnf_contains(self.hnf, a)

    def __mul__(self, other: "Ideal") -> "Ideal":
        o = self.order
        gens = [o.mul(a, b) for a in self.hnf for b in other.hnf]
        return Ideal(o, hnf(gens, o.n, self.norm * other.norm))

    def __pow__(self, e: int) -> "Ideal":
        if e < 0:
            raise ValueError("negative powers of integral ideals are not integral")
        result = self.order.unit_ideal()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_unit(self) -> bool:
        return self.norm == 1

    def to_json(self) -> dict:
        return {"norm": str(self.norm), "hnf": [[str(x) for x in c] for c in self.hnf]}


class PrimeIdeal(Ideal):
    def __init__(self, order: Order, H, p: int, e: int, f: int, tau: list[int]):
        super().__init__(order, H)
        self.p = p
        self.e = e
        self.f = f
        self.tau = tau  # tau * P subset of p*O, tau not in p*O

    def __repr__(self) -> str:
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, hnf={[list(c) for c in self.hnf]})"

    def valuation_int(self, a: Sequence[int], strip: bool = True) -> int:
        """Valuation of a nonzero order element given in integer order coordinates."""
        if not any(a):
            raise ValueError("valuation of zero")
        p = self.p
        k = 0
        if strip:
            g = 0
            for x in a:
                g = math.gcd(g, x)
            k = int_valuation(g, p)
        y = [x // p**k for x in a]
        v = k * self.e
        o = self.order
        while True:
            z = o.mul(y, self.tau)
            if all(c % p == 0 for c in z):
                y = [c // p for c in z]
                v += 1
            else:
                return v

    def valuation(self, a: Sequence) -> int:
        """Valuation of a nonzero element given in (rational) order coordinates."""
        a = [Fraction(x) for x in a]
        D = 1
        for x in a:
            D = math.lcm(D, x.denominator)
        v = self.valuation_int([int(x * D) for x in a])
        return v - self.e * int_valuation(D, self.p) if D > 1 else v

    def valuation_of_ideal(self, ideal: Ideal) -> int:
        return min(self.valuation_int(list(c)) for c in ideal.hnf)

    def to_json(self) -> dict:
        d = super().to_json()
        d.update({"p": str(self.p), "e": self.e, "f": self.f})
        return d


# ---------------------------------------------------------------------------
# radical, Round 2, prime decomposition


def frobenius_matrix(order: Order, p: int) -> list[list[int]]:
    """Matrix (rows) of x -> x^p on O/pO in order coordinates."""
    cols = [order.pow_mod(order.unit_vector(i), p, p) for i in range(order.n)]
    return transpose(cols)


def p_radical(order: Order, p: int) -> tuple[list[list[int]], list[int]]:
    """The nilradical of O/pO as an RREF subspace (rows, pivots)."""
    n = order.n
    k = 1
    while p**k < n:
        k += 1
    F = mat_pow_mod(frobenius_matrix(order, p), k, p)
    kern = kernel_mod(F, p, n)
    return rref_mod(kern, p) if kern else ([], [])


def radical_ideal(order: Order, p: int) -> Ideal:
    R, _ = p_radical(order, p)
    gens = [[p * int(i == j) for j in range(order.n)] for i in range(order.n)] + R
    return order.ideal(gens, p)


def ring_of_multipliers(order: Order, I: Ideal, p: int) -> list[list[int]]:
    """Kernel of O/pO -> End(I/pI); empty iff the multiplier ring of I is O."""
    n = order.n
    cols = I.columns()
    rows = []
    images = [[hnf_solve(I.hnf, order.mul(order.unit_vector(i), v)) for v in cols] for i in range(n)]
    for j in range(n):
        for k in range(n):
            row = []
            for i in range(n):
                c = images[i][j][k]
                if c.denominator != 1:
                    raise ArithmeticError("radical is not an ideal")
                row.append(int(c) % p)
            rows.append(row)
    return kernel_mod(rows, p, n)


def is_p_maximal(order: Order, p: int) -> bool:
    return not ring_of_multipliers(order, radical_ideal(order, p), p)


def round2(order: Order, p: int, max_steps: int = 200) -> Order:
    """Enlarge ``order`` until it is p-maximal (Pohst-Zassenhaus)."""
    for _ in range(max_steps):
        I = radical_ideal(order, p)
        U = ring_of_multipliers(order, I, p)
        if not U:
            return order
        gens = [[p * int(i == j) for j in range(order.n)] for i in range(order.n)] + U
        H = hnf(gens, order.n, p)
        new_basis = [[x / p for x in order.from_order(col)] for col in H]
        order = Order(order.algebra, new_basis)
    raise RuntimeError("Round 2 did not terminate")


class _QuotientAlgebra:
    """(O/pO)/R with canonical representatives in F_p^n."""

    def __init__(self, order: Order, p: int, R, pivots):
        self.order = order
        self.p = p
        self.R = R
        self.pivots = pivots

    def red(self, v):
        return reduce_mod_subspace(v, self.R, self.pivots, self.p)

    def mul(self, a, b):
        return self.red(self.order.mul_mod(a, b, self.p))

    def pow(self, a, e):
        result = self.red(self.order.one)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def sub(self, a, b):
        return [(x - y) % self.p for x, y in zip(a, b)]

    def scale(self, a, c):
        return [x * c % self.p for x in a]


def _span(vectors, p):
    rows = [v for v in vectors if any(v)]
    return rref_mod(rows, p) if rows else ([], [])


def _min_poly(Q: _QuotientAlgebra, x, e):
    """Minimal polynomial (monic, low first) of x in the algebra eB with identity e."""
    p = Q.p
    powers = [e]
    while True:
        powers.append(Q.mul(powers[-1], x))
        M = transpose(powers)
        ker = kernel_mod(M, p, len(powers))
        if ker:
            v = ker[0]
            inv = pow(v[-1], -1, p)
            return [c * inv % p for c in v]


def _split_components(Q: _QuotientAlgebra, e) -> list[tuple[list[int], int]]:
    """Primitive idempotents below e, each with the degree of its field."""
    p = Q.p
    n = Q.order.n
    S, _ = _span([Q.mul(e, Q.order.unit_vector(i)) for i in range(n)], p)
    k = len(S)
    if k == 0:
        return []
    # Frobenius-fixed part of eB
    diffs = [Q.sub(Q.pow(s, p), s) for s in S]
    fixed_t = kernel_mod(transpose(diffs), p, k)
    if len(fixed_t) <= 1:
        return [(e, k)]
    fixed = [[sum(t[r] * S[r][c] for r in range(k)) % p for c in range(n)] for t in fixed_t]
    x = None
    for cand in fixed:
        if len(_span([e, cand], p)[0]) == 2:
            x = cand
            break
    assert x is not None
    g = _min_poly(Q, x, e)
    roots = roots_mod_p(g, p)
    assert len(roots) == len(g) - 1, "fixed-algebra element must split"
    out = []
    for c in roots:
        idem = e
        for c2 in roots:
            if c2 == c:
                continue
            factor = Q.scale(Q.sub(x, Q.scale(e, c2)), pow(c - c2, -1, p))
            idem = Q.mul(idem, factor)
        out.extend(_split_components(Q, idem))
    return out


def prime_decomposition(order: Order, p: int) -> list[PrimeIdeal]:
    """All primes above p; the order must be p-maximal."""
    n = order.n
    R, pivots = p_radical(order, p)
    Q = _QuotientAlgebra(order, p, R, pivots)
    one = Q.red(order.one)
    comps = _split_components(Q, one)
    primes = []
    base_gens = [[p * int(i == j) for j in range(n)] for i in range(n)] + R
    for idem, f in comps:
        co = Q.sub(one, idem)
        gens = base_gens + [order.mul_mod(co, order.unit_vector(i), p) for i in range(n)]
        H = hnf(gens, n, p)
        if hnf_det(H) != p**f:
            raise ArithmeticError("prime ideal norm mismatch")
        tau = _anti_uniformizer(order, H, p)
        P = PrimeIdeal(order, H, p, 0, f, tau)
        P.e = P.valuation_int([p * x for x in order.one], strip=False)
        primes.append(P)
    if sum(P.e * P.f for P in primes) != n:
        raise ArithmeticError(f"sum e*f != {n} at p={p}; order not p-maximal?")
    primes.sort(key=lambda P: (P.f, P.e, P.hnf))
    return primes


def _anti_uniformizer(order: Order, H, p: int) -> list[int]:
    n = order.n
    rows = []
    for v in H:
        prods = [order.mul(order.unit_vector(i), list(v)) for i in range(n)]
        for k in range(n):
            rows.append([prods[i][k] % p for i in range(n)])
    ker = kernel_mod(rows, p, n)
    if not ker:
        raise ArithmeticError("no anti-uniformizer; ideal is not prime over a p-maximal order")
    return ker[0]


def factor_ideal(I: Ideal, primes_by_p: dict[int, list[PrimeIdeal]]) -> list[tuple[PrimeIdeal, int]]:
    """Factor I over the given primes (which must cover all primes dividing N(I))."""
    out = []
    rest = I.norm
    for p, plist in sorted(primes_by_p.items()):
        for P in plist:
            v = P.valuation_of_ideal(I)
            if v:
                out.append((P, v))
                rest //= P.p ** (P.f * v)
    if rest != 1:
        raise ArithmeticError("ideal has support outside the supplied primes")
    return out
