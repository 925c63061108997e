"""Cubic number fields: maximal orders, prime ideals, embeddings, units,
and rigorous principality testing for fields with one real embedding."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath
from mpmath import iv

from ..arith import DEFAULT_RHO_ITERATIONS, factorize, next_prime
from ..poly import Poly, poly_discriminant, resultant
from .algebra import Algebra, Ideal, Order, PrimeIdeal, charpoly_matrix, prime_decomposition, round2
from .lattice import fincke_pohst, lll

DEFAULT_PRECISION = int(os.environ.get("CUBICDIV_PRECISION", "128"))
PLASTIC_LOG_LOWER = 0.2811  # log of the smallest Pisot number, rounded down
DEFAULT_ENUMERATION_LIMIT = 2_000_000


class ReducibleError(ValueError):
    pass


def power_basis_table(f: Poly) -> list[list[list[Fraction]]]:
    """Structure constants of Q[x]/(f) on the basis 1, x, ..., x^(n-1)."""
    n = f.degree
    fm = f.monic()
    powers = []
    for k in range(2 * n - 1):
        _, r = Poly([0] * k + [1]).divmod(fm)
        powers.append([Fraction(r[i]) for i in range(n)])
    return [[powers[i + j] for j in range(n)] for i in range(n)]


def _integer_roots(f: Poly) -> list[int]:
    """Integer roots of an integer polynomial via its real roots."""
    coeffs = [int(c) for c in f.coeffs]
    if coeffs[0] == 0:
        return [0]
    bits = max(abs(c) for c in coeffs).bit_length()
    with mpmath.workdps(bits // 3 + 40):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=400, extraprec=4 * bits + 100)
    out = set()
    for r in roots:
        if abs(mpmath.im(r)) < 1:
            base = int(mpmath.nint(mpmath.re(r)))
            for c in (base - 1, base, base + 1):
                if f(c) == 0:
                    out.add(c)
    return sorted(out)


def is_irreducible_cubic(f: Poly) -> bool:
    """Rational root test for a monic integer cubic."""
    return not _integer_roots(f)


def _down(x, r):
    return mpmath.fsub(x, r, exact=True)


def _up(x, r):
    return mpmath.fadd(x, r, exact=True)


@dataclass
class EmbeddingData:
    """The real root and one complex root (Im > 0) of the defining cubic,
    each with a rigorous enclosure radius."""

    prec: int
    real_root: mpmath.mpf
    complex_root: mpmath.mpc
    real_radius: mpmath.mpf
    complex_radius: mpmath.mpf

    def boxes(self):
        iv.prec = self.prec
        r, c = self.real_root, self.complex_root
        rr, cr = self.real_radius, self.complex_radius
        real = iv.mpf([_down(r, rr), _up(r, rr)])
        cplx = iv.mpc(
            iv.mpf([_down(c.real, cr), _up(c.real, cr)]),
            iv.mpf([_down(c.imag, cr), _up(c.imag, cr)]),
        )
        return real, cplx

    def evaluate(self, coords: Sequence[Fraction]):
        """Interval images (real, complex) of sum coords[i] * pi^i."""
        real, cplx = self.boxes()
        out = []
        for z in (real, cplx):
            acc = iv.mpf(0) if z is real else iv.mpc(0)
            for c in reversed(coords):
                acc = acc * z + iv.mpf(Fraction(c).numerator) / Fraction(c).denominator
            out.append(acc)
        return out[0], out[1]

    def approx(self, coords: Sequence[Fraction]):
        """Point values (real, complex) at working precision."""
        with mpmath.workprec(self.prec):
            vals = []
            for z in (self.real_root, self.complex_root):
                acc = mpmath.mpf(0)
                for c in reversed(coords):
                    c = Fraction(c)
                    acc = acc * z + mpmath.mpf(c.numerator) / c.denominator
                vals.append(acc)
            return vals[0], vals[1]


class CubicField:
    """K = Q(pi) with pi a root of a monic irreducible integer cubic f."""

    def __init__(self, f: Poly, factor_hints: Sequence[int] = (), effort: int = DEFAULT_RHO_ITERATIONS):
        if f.degree != 3 or f.lc != 1 or not f.is_integral():
            raise ValueError("defining polynomial must be a monic integer cubic")
        self.poly = Poly(int(c) for c in f.coeffs)
        if not is_irreducible_cubic(self.poly):
            raise ReducibleError(f"{self.poly} is reducible over Q")
        self.algebra = Algebra(power_basis_table(self.poly))
        self.poly_discriminant = int(poly_discriminant(self.poly))
        self.factor_hints = tuple(factor_hints)
        self.effort = effort
        self._primes: dict[tuple, list[PrimeIdeal]] = {}
        self._local: dict[int, Order] = {}
        self._units: dict = {}

    # elements -------------------------------------------------------------
    def element(self, coords: Sequence) -> "KElement":
        c = [Fraction(x) for x in coords] + [Fraction(0)] * (3 - len(coords))
        return KElement(self, tuple(c))

    @property
    def pi(self) -> "KElement":
        return self.element([0, 1, 0])

    def one(self) -> "KElement":
        return self.element([1])

    # maximal order ------------------------------------------------------------
    @cached_property
    def disc_factorization(self):
        return factorize(self.poly_discriminant, self.effort, self.factor_hints)

    @cached_property
    def maximal_order(self) -> Order:
        order = self.equation_order
        for p, e in self.disc_factorization.factors:
            if e >= 2:
                order = round2(order, p)
        return order

    @cached_property
    def index(self) -> int:
        """[O_K : Z[pi]]."""
        idx = self.maximal_order.index_in(self.equation_order)
        assert idx.denominator == 1
        return int(idx)

    @cached_property
    def discriminant(self) -> int:
        d = Fraction(self.poly_discriminant, self.index**2)
        assert d.denominator == 1
        return int(d)

    @property
    def signature(self) -> tuple[int, int]:
        return (1, 1) if self.poly_discriminant < 0 else (3, 0)

    def local_order(self, p: int) -> Order:
        """An order that is maximal at p: O_K when already known, otherwise
        Z[pi] enlarged at p only (no factorization of disc(f) needed)."""
        if "maximal_order" in self.__dict__:
            return self.maximal_order
        if p not in self._local:
            self._local[p] = round2(self.equation_order, p)
        return self._local[p]

    @cached_property
    def equation_order(self) -> Order:
        return Order(self.algebra, [[int(i == j) for j in range(3)] for i in range(3)])

    def primes_above(self, p: int, local: bool = False) -> list[PrimeIdeal]:
        """Primes of K above p, as ideals of O_K (or of ``local_order(p)`` if local)."""
        key = (p, local and "maximal_order" not in self.__dict__)
        if key not in self._primes:
            order = self.local_order(p) if key[1] else self.maximal_order
            self._primes[key] = prime_decomposition(order, p)
        return self._primes[key]

    def to_order(self, x: "KElement") -> list[Fraction]:
        return self.maximal_order.to_order(x.coords)

    def order_element(self, c: Sequence[int]) -> "KElement":
        return self.element(self.maximal_order.from_order(c))

    def integral_coords(self, x: "KElement") -> list[int]:
        c = self.to_order(x)
        if any(v.denominator != 1 for v in c):
            raise ValueError("element is not integral")
        return [int(v) for v in c]

    def principal_ideal(self, x: "KElement") -> Ideal:
        return self.maximal_order.principal_ideal(self.integral_coords(x))

    def ideal(self, generators: Sequence["KElement"]) -> Ideal:
        o = self.maximal_order
        gens = []
        for g in generators:
            c = self.integral_coords(g)
            gens.extend(o.mul(c, o.unit_vector(i)) for i in range(3))
        return o.ideal(gens)

    def valuation(self, x: "KElement", P: PrimeIdeal) -> int:
        return P.valuation(self.to_order(x))

    def minkowski_bound(self) -> float:
        r1, r2 = self.signature
        return (4 / math.pi) ** r2 * math.factorial(3) / 27 * math.sqrt(abs(self.discriminant))

    # embeddings -------------------------------------------------------------
    def embeddings(self, prec: int = DEFAULT_PRECISION) -> EmbeddingData:
        if self.signature != (1, 1):
            raise ValueError("embedding data is implemented for one real embedding")
        key = ("emb", prec)
        if key in self._units:
            return self._units[key]
        coeffs = [int(c) for c in reversed(self.poly.coeffs)]
        bits = max(abs(c) for c in coeffs).bit_length()
        with mpmath.workprec(prec + 4 * bits + 64):
            roots = mpmath.polyroots(coeffs, maxsteps=500, extraprec=prec + 4 * bits + 64)
            real = min(roots, key=lambda z: abs(mpmath.im(z)))
            cplx = max(roots, key=lambda z: mpmath.im(z))
            real = mpmath.re(real)
            radii = []
            for z in (real, cplx):
                fz = self.poly(z)
                dz = self.poly.derivative()(z)
                radii.append(3 * abs(fz) / abs(dz) * 2 + mpmath.mpf(2) ** (-prec) * (1 + abs(z)))
        data = EmbeddingData(prec, real, cplx, radii[0], radii[1])
        self._units[key] = data
        return data

    def t2_vectors(self, elements: Sequence[Sequence[Fraction]], prec: int = DEFAULT_PRECISION) -> list[list]:
        """Real coordinates (s1, sqrt2 Re s2, sqrt2 Im s2) so that |v|^2 = T2."""
        emb = self.embeddings(prec)
        out = []
        with mpmath.workprec(prec):
            s2 = mpmath.sqrt(2)
            for c in elements:
                r, z = emb.approx(c)
                out.append([r, s2 * mpmath.re(z), s2 * mpmath.im(z)])
        return out

    def enumerate_ideal(self, ideal: Ideal, bound: float, limit: int | None = None, prec: int = DEFAULT_PRECISION):
        """Yield order coordinates of nonzero elements of ``ideal`` with T2 <= bound (one per sign pair)."""
        o = self.maximal_order
        cols = ideal.columns()
        # reduction cancels about as many bits as the basis entries carry
        size = max(abs(int(x)) for c in cols for x in c).bit_length()
        prec = max(prec, 2 * size + 64)
        vecs = self.t2_vectors([o.from_order(c) for c in cols], prec)
        T = lll(vecs, prec=prec)
        red = [[sum(T[i][k] * cols[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        rv = self.t2_vectors([o.from_order(c) for c in red], prec)
        gram = [[float(mpmath.fsum(a * b for a, b in zip(u, v))) for v in rv] for u in rv]
        for x in fincke_pohst(gram, bound, limit):
            yield [sum(x[i] * red[i][j] for i in range(3)) for j in range(3)]

    # units ----------------------------------------------------------------------
    def fundamental_unit(self, seed: "KElement | None" = None, prec: int = DEFAULT_PRECISION) -> "UnitData":
        key = ("fu", seed.coords if seed is not None else None)
        if key not in self._units:
            self._units[key] = fundamental_unit(self, seed, prec)
        return self._units[key]

    def to_json(self) -> dict:
        o = self.maximal_order
        return {
            "poly": [str(c) for c in self.poly.coeffs],
            "poly_discriminant": str(self.poly_discriminant),
            "discriminant": str(self.discriminant),
            "index": str(self.index),
            "integral_basis": [[str(c) for c in b] for b in o.basis],
        }


class KElement:
    """Element sum c_i pi^i of a cubic field."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CubicField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def _coerce(self, other) -> "KElement":
        if isinstance(other, KElement):
            return other
        return self.field.element([other])

    def __add__(self, other):
        o = self._coerce(other)
        return KElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return KElement(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        return KElement(self.field, tuple(self.field.algebra.mul(self.coords, o.coords)))

    __rmul__ = __mul__

    def inverse(self) -> "KElement":
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero")
        return KElement(self.field, tuple(self.field.algebra.inverse(self.coords)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return KElement(self.field, tuple(a / other for a in self.coords))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, KElement):
            other = self._coerce(other)
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"KElement({', '.join(str(c) for c in self.coords)})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return self.coords[1] == 0 and self.coords[2] == 0

    def as_poly(self) -> Poly:
        return Poly(self.coords)

    def norm(self) -> Fraction:
        return self.field.algebra.norm(self.coords)

    def norm_resultant(self) -> Fraction:
        """N(a(pi)) = Res(f, a) for monic f."""
        return resultant(self.field.poly, self.as_poly())

    def trace(self) -> Fraction:
        return self.field.algebra.trace(self.coords)

    def charpoly(self) -> Poly:
        return Poly(charpoly_matrix(self.field.algebra.mult_matrix(self.coords)))

    def is_integral(self) -> bool:
        return self.charpoly().is_integral()

    def is_unit(self) -> bool:
        return self.is_integral() and abs(self.norm()) == 1

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


# ---------------------------------------------------------------------------
# units


@dataclass
class UnitData:
    """A unit eta > 1 (real embedding) with an enclosure of log(eta)."""

    unit: KElement
    log_lower: float
    log_upper: float
    fundamental: bool
    method: str
    tested_roots: list[int] = field(default_factory=list)

    @property
    def regulator(self) -> tuple[float, float]:
        return self.log_lower, self.log_upper

    def to_json(self) -> dict:
        return {
            "unit": self.unit.to_json(),
            "log_enclosure": [repr(self.log_lower), repr(self.log_upper)],
            "fundamental": self.fundamental,
            "method": self.method,
            "tested_root_degrees": self.tested_roots,
        }


def _log_real_enclosure(K: CubicField, u: KElement, prec: int) -> tuple[float, float]:
    emb = K.embeddings(prec)
    r, _ = emb.evaluate(u.coords)
    a = abs(r)
    lo, hi = iv.log(a).a, iv.log(a).b
    return float(mpmath.mpf(lo)) - 1e-12, float(mpmath.mpf(hi)) + 1e-12


def _normalize_unit(K: CubicField, u: KElement, prec: int) -> KElement:
    emb = K.embeddings(prec)
    r, _ = emb.approx(u.coords)
    if abs(r) < 1:
        u = u.inverse()
        r = 1 / r
    if r < 0:
        u = -u
    return u


def _kth_root(K: CubicField, u: KElement, k: int, prec: int) -> KElement | None:
    """eta in O_K with eta^k = u and positive real embedding, if one exists."""
    o = K.maximal_order
    emb = K.embeddings(prec)
    basis = [o.from_order(o.unit_vector(j)) for j in range(3)]
    coord_bits = sum(abs(c.numerator).bit_length() + c.denominator.bit_length() for c in u.coords)
    with mpmath.workprec(prec + coord_bits + 64):
        ur, uc = emb.approx(u.coords)
        W = mpmath.matrix(3, 3)
        for j, b in enumerate(basis):
            br, bc = emb.approx(b)
            W[0, j], W[1, j], W[2, j] = br, bc, mpmath.conj(bc)
        rr = mpmath.root(ur, k)
        zc = mpmath.root(uc, k)
        for t in range(k):
            z = zc * mpmath.expjpi(mpmath.mpf(2 * t) / k)
            sol = mpmath.lu_solve(W, mpmath.matrix([rr, z, mpmath.conj(z)]))
            cand = []
            ok = True
            for j in range(3):
                v = sol[j]
                n = int(mpmath.nint(mpmath.re(v)))
                if abs(v - n) > 0.01:
                    ok = False
                    break
                cand.append(n)
            if not ok:
                continue
            eta = K.order_element(cand)
            if eta**k == u:
                return eta
    return None


def _unit_search(K: CubicField, prec: int) -> KElement:
    """Find some unit other than +-1 by enumerating small elements."""
    o = K.maximal_order
    by_norm: dict[int, list[list[int]]] = {}
    for bound in (8.0, 64.0, 512.0, 4096.0, 32768.0, 262144.0):
        for c in K.enumerate_ideal(o.unit_ideal(), bound, limit=DEFAULT_ENUMERATION_LIMIT, prec=prec):
            N = abs(o.norm(c))
            if N == 1:
                x = K.order_element(c)
                if not x.is_rational():
                    return x
            elif N < 10**6:
                by_norm.setdefault(N, []).append(c)
        for N, elts in by_norm.items():
            seen: dict = {}
            for c in elts:
                I = o.principal_ideal(c)
                if I.hnf in seen:
                    x = K.order_element(c) / K.order_element(seen[I.hnf])
                    if not x.is_rational():
                        return x
                else:
                    seen[I.hnf] = c
    raise RuntimeError("no nontrivial unit found within the search bounds")


def fundamental_unit(K: CubicField, seed: KElement | None = None, prec: int = DEFAULT_PRECISION) -> UnitData:
    """Fundamental unit of a complex cubic field, certified by root extraction.

    If eta is fundamental and u = eta^k, then log u >= k * log eta and log eta
    is bounded below by the smallest Pisot number and by Artin's inequality
    |D| < 4 eta^3 + 24; every prime k up to log(u)/lower is tested.
    """
    if K.signature != (1, 1):
        raise ValueError("only fields with one real embedding are supported")
    if seed is None:
        u = _unit_search(K, prec)
        method = "enumeration"
    else:
        if not seed.is_unit():
            raise ValueError("seed is not a unit")
        u = seed
        method = "seed"
    u = _normalize_unit(K, u, prec)
    D = abs(K.discriminant)
    lower = PLASTIC_LOG_LOWER
    if D > 28:
        lower = max(lower, math.log((D - 24) / 4) / 3 * (1 - 1e-12))
    tested = []
    while True:
        lo, hi = _log_real_enclosure(K, u, prec)
        kmax = int(hi / lower)
        reduced = False
        k = 2
        while k <= kmax:
            if k not in tested:
                tested.append(k)
            eta = _kth_root(K, u, k, prec)
            if eta is not None:
                u = _normalize_unit(K, eta, prec)
                reduced = True
                break
            k = next_prime(k)
        if not reduced:
            lo, hi = _log_real_enclosure(K, u, prec)
            return UnitData(u, lo, hi, True, method, sorted(tested))


# ---------------------------------------------------------------------------
# principality


@dataclass
class PrincipalityResult:
    status: str  # "principal" | "non-principal" | "inconclusive"
    generator: KElement | None
    bound: float
    points_examined: int
    unit_log_upper: float

    @property
    def principal(self) -> bool:
        return self.status == "principal"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "generator": self.generator.to_json() if self.generator is not None else None,
            "t2_bound": repr(self.bound),
            "points_examined": self.points_examined,
            "unit_log_upper": repr(self.unit_log_upper),
        }


def is_principal(
    I: Ideal,
    K: CubicField,
    unit: UnitData | None = None,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
    prec: int = DEFAULT_PRECISION,
) -> PrincipalityResult:
    """Decide whether I is principal.

    Any generator can be moved by a power of the unit eta into the region
    |log|g_1| - log(N)/3| <= log(eta)/2, where
    T2(g) <= N^(2/3) * (eta + 2 sqrt(eta)).  Every lattice point of I in that
    ellipsoid is examined, so an empty search proves non-principality.  eta
    need not be fundamental for this argument, only a unit > 1.
    """
    if I.norm == 1:
        return PrincipalityResult("principal", K.one(), 0.0, 0, 0.0)
    if unit is None:
        unit = K.fundamental_unit(prec=prec)
    N = I.norm
    eta = math.exp(unit.log_upper)
    bound = N ** (2 / 3) * (eta + 2 * math.sqrt(eta)) * (1 + 1e-9)
    o = K.maximal_order
    count = 0
    try:
        for c in K.enumerate_ideal(I, bound, limit=limit, prec=prec):
            count += 1
            if abs(o.norm(c)) == N:
                if o.principal_ideal(c) != I:
                    raise ArithmeticError("element of ideal with matching norm does not generate it")
                return PrincipalityResult("principal", K.order_element(c), bound, count, unit.log_upper)
    except OverflowError:
        return PrincipalityResult("inconclusive", None, bound, count, unit.log_upper)
    return PrincipalityResult("non-principal", None, bound, count, unit.log_upper)


def maximal_order(f: Poly, factor_hints: Sequence[int] = ()) -> CubicField:
    """Build K = Q[x]/(f) with its maximal order computed."""
    K = CubicField(f, factor_hints)
    K.maximal_order  # noqa: B018 - force computation
    return K


def factor_prime(p: int, K: CubicField) -> list[PrimeIdeal]:
    return K.primes_above(p)
