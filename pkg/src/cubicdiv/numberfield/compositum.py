"""The compositum KF = K(sqrt d) of a complex cubic field K with an imaginary
quadratic field F, when KF is the Galois closure of K.

Elements are pairs (x, y) of K-elements meaning x + y*sqrt(d).  The order-3
automorphism sigma is built from a square root of disc(f) lying in F.
Ideal-theoretic work happens one rational prime at a time in a p-maximal
order of KF, and every prime of KF is tagged with the prime of K below it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import iv

from .algebra import Algebra, Order, PrimeIdeal, prime_decomposition, round2
from .cubic import CubicField, KElement
from .quadratic import QuadField, QuadInt


class OrientationError(ArithmeticError):
    pass


class KFElement:
    """x + y*sqrt(d) with x, y in K."""

    __slots__ = ("kf", "x", "y")

    def __init__(self, kf: "Compositum", x: KElement, y: KElement):
        self.kf = kf
        self.x = x
        self.y = y

    def _coerce(self, other) -> "KFElement":
        if isinstance(other, KFElement):
            return other
        if isinstance(other, KElement):
            return KFElement(self.kf, other, self.kf.K.element([0]))
        if isinstance(other, QuadInt):
            return self.kf.from_quad(other)
        return KFElement(self.kf, self.kf.K.element([other]), self.kf.K.element([0]))

    def __add__(self, other):
        o = self._coerce(other)
        return KFElement(self.kf, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return KFElement(self.kf, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.kf.F.d
        return KFElement(self.kf, self.x * o.x + self.y * o.y * d, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def inverse(self) -> "KFElement":
        n = self.norm_to_K()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ninv = n.inverse()
        return KFElement(self.kf, self.x * ninv, -self.y * ninv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return KFElement(self.kf, self.x / other, self.y / other)
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.kf.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x.coords, self.y.coords))

    def __repr__(self) -> str:
        return f"KFElement({list(map(str, self.x.coords))} + {list(map(str, self.y.coords))}*sqrt(d))"

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    @property
    def coords(self) -> list[Fraction]:
        return list(self.x.coords) + list(self.y.coords)

    def sigma(self, k: int = 1) -> "KFElement":
        return self.kf.sigma(self, k)

    def tau(self) -> "KFElement":
        return KFElement(self.kf, self.x, -self.y)

    def norm_to_K(self) -> KElement:
        d = self.kf.F.d
        return self.x * self.x - self.y * self.y * d

    def trace_to_K(self) -> KElement:
        return self.x * 2

    def norm_to_F(self) -> QuadInt:
        return self.kf.to_quad(self * self.sigma(1) * self.sigma(2))

    def trace_to_F(self) -> QuadInt:
        return self.kf.to_quad(self + self.sigma(1) + self.sigma(2))

    def norm(self) -> Fraction:
        """N_{KF/Q}, computed through F; cross-checked against the route through K."""
        via_F = self.norm_to_F().norm()
        via_K = self.norm_to_K().norm()
        if via_F != via_K:
            raise ArithmeticError("KF norm mismatch between the K and F routes")
        return via_F

    def trace(self) -> Fraction:
        return self.trace_to_F().trace()

    def min_poly_over_F(self) -> list[QuadInt]:
        """Coefficients [c0, c1, c2, 1] of prod (X - z^(sigma^k)) over F."""
        z0, z1, z2 = self, self.sigma(1), self.sigma(2)
        e1 = self.kf.to_quad(z0 + z1 + z2)
        e2 = self.kf.to_quad(z0 * z1 + z0 * z2 + z1 * z2)
        e3 = self.kf.to_quad(z0 * z1 * z2)
        return [-e3, e2, -e1, self.kf.F.element(1)]

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}


@dataclass
class RelativePrime:
    """A prime of KF with the prime of K below it."""

    prime: PrimeIdeal  # in a p-maximal order of KF
    below: PrimeIdeal  # in the maximal order of K
    below_index: int  # position of ``below`` in K.primes_above(p)

    @property
    def p(self) -> int:
        return self.prime.p

    @property
    def e_rel(self) -> int:
        return self.prime.e // self.below.e

    @property
    def f_rel(self) -> int:
        return self.prime.f // self.below.f

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "e": self.prime.e,
            "f": self.prime.f,
            "below": self.below_index,
            "e_rel": self.e_rel,
            "f_rel": self.f_rel,
        }


class Compositum:
    """KF for K = Q(pi) complex cubic and F = Q(sqrt d), given delta in F
    with delta^2 = disc(f), delta = (pi - pi')(pi - pi'')(pi' - pi'')."""

    def __init__(self, K: CubicField, F: QuadField, delta: QuadInt):
        if delta * delta != K.poly_discriminant:
            raise ValueError("delta^2 must equal disc(f)")
        self.K = K
        self.F = F
        self.delta = delta
        basis = [K.element([int(i == j) for j in range(3)]) for i in range(3)]
        zero = K.element([0])
        self._basis = [KFElement(self, b, zero) for b in basis] + [KFElement(self, zero, b) for b in basis]
        self.algebra = Algebra([[self._mul_coords(a, b) for b in self._basis] for a in self._basis])
        self.pi_sigma = self._conjugate_root()
        self._sigma_matrix = self._build_sigma()
        self._local: dict[int, Order] = {}
        self._primes: dict[int, list[RelativePrime]] = {}

    @staticmethod
    def _mul_coords(a: KFElement, b: KFElement) -> list[Fraction]:
        return (a * b).coords

    def element(self, x, y=None) -> KFElement:
        K = self.K
        if not isinstance(x, KElement):
            x = K.element([x]) if not isinstance(x, (list, tuple)) else K.element(x)
        if y is None:
            y = K.element([0])
        elif not isinstance(y, KElement):
            y = K.element([y]) if not isinstance(y, (list, tuple)) else K.element(y)
        return KFElement(self, x, y)

    def from_coords(self, c: Sequence) -> KFElement:
        return KFElement(self, self.K.element(c[:3]), self.K.element(c[3:]))

    def one(self) -> KFElement:
        return self.element(1)

    @property
    def pi(self) -> KFElement:
        return self.element(self.K.pi)

    @property
    def sqrt_d(self) -> KFElement:
        return self.element(0, 1)

    def from_quad(self, q: QuadInt) -> KFElement:
        x, y = q.sqrt_coords()
        return self.element(x, y)

    def to_quad(self, z: KFElement) -> QuadInt:
        if not (z.x.is_rational() and z.y.is_rational()):
            raise ValueError("element does not lie in F")
        return self.F.from_sqrt_coords(z.x.coords[0], z.y.coords[0])

    # sigma ------------------------------------------------------------------
    def _conjugate_root(self) -> KFElement:
        f = self.K.poly
        pi = self.K.pi
        fprime = _eval_poly(f.derivative(), pi)
        c2 = f.coeffs[2]
        dx, dy = self.delta.sqrt_coords()
        # pi^sigma = (-(pi + c2) + delta / f'(pi)) / 2
        finv = fprime.inverse()
        x = (-(pi + c2) + finv * dx) / 2
        y = finv * dy / 2
        root = KFElement(self, x, y)
        if not _eval_poly_kf(f, root).is_zero():
            raise ArithmeticError("conjugate root does not satisfy f")
        return root

    def _build_sigma(self) -> list[list[Fraction]]:
        ps = self.pi_sigma
        images = []
        powers = [self.one(), ps, ps * ps]
        for i in range(3):
            images.append(powers[i])
        for i in range(3):
            images.append(powers[i] * self.sqrt_d)
        M = [[images[j].coords[i] for j in range(6)] for i in range(6)]
        # sigma^3 = id on every basis vector
        for b in self._basis:
            z = b
            for _ in range(3):
                z = self._apply(M, z)
            if z != b:
                raise ArithmeticError("sigma does not have order 3")
        return M

    def _apply(self, M, z: KFElement) -> KFElement:
        c = z.coords
        return self.from_coords([sum(M[i][j] * c[j] for j in range(6) if c[j]) for i in range(6)])

    def sigma(self, z: KFElement, k: int = 1) -> KFElement:
        for _ in range(k % 3):
            z = self._apply(self._sigma_matrix, z)
        return z

    def sigma_table(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self._sigma_matrix]

    # local orders and primes ----------------------------------------------------
    def local_order(self, p: int) -> Order:
        """An order of KF that is maximal at p, containing O_K[omega]."""
        if p not in self._local:
            oK = self.K.local_order(p)
            half = Fraction(1, 2)
            basis = []
            for b in oK.basis:
                w = self.element(self.K.element(b))
                basis.append(w.coords)
                basis.append((w * KFElement(self, self.K.element([half]), self.K.element([half]))).coords)
            order = Order(self.algebra, basis)
            self._local[p] = round2(order, p)
        return self._local[p]

    def primes_above(self, p: int) -> list[RelativePrime]:
        if p in self._primes:
            return self._primes[p]
        order = self.local_order(p)
        below = self.K.primes_above(p, local=True)
        out = []
        for P in prime_decomposition(order, p):
            hits = []
            for idx, Q in enumerate(below):
                gens = [self.element(self.K.element(Q.order.from_order(c))) for c in Q.columns()]
                if all(P.valuation(order.to_order(g.coords)) > 0 for g in gens):
                    hits.append(idx)
            if len(hits) != 1:
                raise ArithmeticError("could not locate the prime of K below a prime of KF")
            out.append(RelativePrime(P, below[hits[0]], hits[0]))
        for idx, Q in enumerate(below):
            rel = [R for R in out if R.below_index == idx]
            if sum(R.e_rel * R.f_rel for R in rel) != 2:
                raise ArithmeticError("relative degrees do not add up to 2")
        out.sort(key=lambda R: (R.below_index, R.prime.f, R.prime.e, R.prime.hnf))
        self._primes[p] = out
        return out

    def valuation(self, z: KFElement, P: RelativePrime) -> int:
        return P.prime.valuation(self.local_order(P.p).to_order(z.coords))

    # embeddings --------------------------------------------------------------------
    def place_images(self, z: KFElement, prec: int):
        """Interval images of z at the three places of KF (sqrt d -> +i sqrt|d|)."""
        emb = self.K.embeddings(prec)
        real, cplx = emb.boxes()
        iv.prec = prec
        sq = iv.mpc(0, iv.sqrt(iv.mpf(-self.F.d)))
        roots = [iv.mpc(real, 0), cplx, iv.mpc(cplx.real, -cplx.imag)]
        out = []
        for r in roots:
            out.append(_eval_coords_iv(z.x.coords, r) + _eval_coords_iv(z.y.coords, r) * sq)
        return out


def _eval_poly(f, x: KElement) -> KElement:
    acc = x.field.element([0])
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def _eval_poly_kf(f, z: KFElement) -> KFElement:
    acc = z.kf.element(0)
    for c in reversed(f.coeffs):
        acc = acc * z + c
    return acc


def _eval_coords_iv(coords, r):
    acc = iv.mpc(0)
    for c in reversed(coords):
        c = Fraction(c)
        acc = acc * r + iv.mpf(c.numerator) / c.denominator
    return acc


def _abs_log(z):
    """2 log|z| as an interval, or None if |z|^2 is not bounded away from 0."""
    n2 = z.real * z.real + z.imag * z.imag
    if not n2.a > 0:
        return None
    return iv.log(n2)


def regulator_of_pair(kf: Compositum, u1: KFElement, u2: KFElement, prec: int = 128, max_prec: int = 4096):
    """Interval enclosure (lo, hi) of |det| of the log-embedding matrix of two units
    at two of the three places of KF (weight 2 at complex places).

    Precision doubles until the enclosure excludes 0; past ``max_prec`` an
    ArithmeticError is raised, which is the expected outcome for dependent units.
    """
    while True:
        L = []
        for u in (u1, u2):
            imgs = kf.place_images(u, prec)
            L.append([_abs_log(imgs[0]), _abs_log(imgs[1])])
        if all(x is not None for row in L for x in row):
            D = L[0][0] * L[1][1] - L[0][1] * L[1][0]
            lo, hi = mpmath.mpf(D.a), mpmath.mpf(D.b)
            if lo > 0:
                return lo, hi
            if hi < 0:
                return -hi, -lo
        if prec >= max_prec:
            raise ArithmeticError("regulator enclosure contains zero")
        prec *= 2
