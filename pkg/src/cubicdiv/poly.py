"""Univariate polynomials.

``Poly`` holds coefficients lowest degree first; the coefficients can be any
exact ring elements supporting + - * (int, Fraction, QuadInt).  Division
and resultants assume field coefficients (Fraction).

The ``*_mod`` helpers work on plain lists of ints reduced modulo a prime p,
again lowest degree first, with [] as the zero polynomial.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterable, Sequence


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any]):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(terms)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly([other]) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result, base = Poly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = Poly([])
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) if isinstance(c, int) else c for c in self.coeffs]
        q = [0] * max(len(r) - other.degree, 1)
        lc = other.lc
        while len(r) - 1 >= other.degree and any(c != 0 for c in r):
            shift = len(r) - 1 - other.degree
            f = r[-1] / lc
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                r[shift + i] -= f * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def monic(self) -> "Poly":
        lc = Fraction(self.lc)
        return Poly(Fraction(c) / lc for c in self.coeffs)

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)


def resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant over Q via the Euclidean remainder sequence."""
    if not f.coeffs or not g.coeffs:
        return Fraction(0)
    a = Poly(Fraction(c) for c in f.coeffs)
    b = Poly(Fraction(c) for c in g.coeffs)
    res = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc**da
        _, r = a.divmod(b)
        if not r.coeffs:
            return Fraction(0)
        if da * db % 2:
            res = -res
        res *= b.lc ** (da - r.degree)
        a, b = b, r


def poly_discriminant(f: Poly) -> Fraction:
    n = f.degree
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / Fraction(f.lc)


# ---------------------------------------------------------------------------
# polynomials over F_p (lists of ints, low degree first)


def trim_mod(f: Sequence[int], p: int) -> list[int]:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def mul_mod(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim_mod(out, p)


def sub_mod(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    return trim_mod([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], p)


def divmod_mod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(r) - dg, 1)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        c = r[-1] * inv % p
        q[shift] = c
        for i, gc in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gc) % p
        while r and r[-1] == 0:
            r.pop()
    return trim_mod(q, p), r


def gcd_mod(f: list[int], g: list[int], p: int) -> list[int]:
    a, b = trim_mod(f, p), trim_mod(g, p)
    while b:
        a, b = b, divmod_mod(a, b, p)[1]
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def powmod_mod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = divmod_mod(trim_mod(base, p), f, p)[1]
    while e:
        if e & 1:
            result = divmod_mod(mul_mod(result, base, p), f, p)[1]
        base = divmod_mod(mul_mod(base, base, p), f, p)[1]
        e >>= 1
    return result


def eval_mod(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def derivative_mod(f: list[int], p: int) -> list[int]:
    return trim_mod([i * c for i, c in enumerate(f)][1:], p)


EXHAUSTIVE_ROOT_LIMIT = 10**4


def _split_linear(g: list[int], p: int, rng: random.Random) -> list[int]:
    """Roots of a monic g that is a product of distinct linear factors."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [(-g[0]) % p]
    if p == 2:
        return [x for x in range(2) if eval_mod(g, x, p) == 0]
    while True:
        delta = rng.randrange(p)
        h = powmod_mod([delta, 1], (p - 1) // 2, g, p)
        h = sub_mod(h, [1], p)
        d = gcd_mod(h, g, p)
        if 1 < len(d) < len(g):
            q = divmod_mod(g, d, p)[0]
            inv = pow(q[-1], -1, p)
            q = [c * inv % p for c in q]
            return _split_linear(d, p, rng) + _split_linear(q, p, rng)


def roots_mod_p(f, p: int) -> list[int]:
    """Sorted distinct roots of f modulo the prime p."""
    coeffs = list(f.coeffs) if isinstance(f, Poly) else list(f)
    g = trim_mod([int(c) for c in coeffs], p)
    if not g:
        raise ValueError("polynomial vanishes identically mod p")
    if len(g) == 1:
        return []
    if p < EXHAUSTIVE_ROOT_LIMIT:
        return [x for x in range(p) if eval_mod(g, x, p) == 0]
    inv = pow(g[-1], -1, p)
    g = [c * inv % p for c in g]
    xp = powmod_mod([0, 1], p, g, p)
    h = gcd_mod(sub_mod(xp, [0, 1], p), g, p)
    roots = _split_linear(h, p, random.Random(p))
    return sorted(roots)


def root_multiplicities(f, p: int) -> dict[int, int]:
    coeffs = list(f.coeffs) if isinstance(f, Poly) else list(f)
    g = trim_mod([int(c) for c in coeffs], p)
    out = {}
    for r in roots_mod_p(g, p):
        k, h = 0, g
        while h:
            q, rem = divmod_mod(h, [(-r) % p, 1], p)
            if rem:
                break
            h = q
            k += 1
        out[r] = k
    return out


def factor_mod_p(f, p: int) -> list[tuple[list[int], int]]:
    """Factor f over F_p into monic irreducibles with multiplicities.

    Square-free decomposition, distinct-degree, then equal-degree splitting.
    """
    coeffs = list(f.coeffs) if isinstance(f, Poly) else list(f)
    g = trim_mod([int(c) for c in coeffs], p)
    if not g:
        raise ValueError("polynomial vanishes identically mod p")
    inv = pow(g[-1], -1, p)
    g = [c * inv % p for c in g]
    out: dict[tuple[int, ...], int] = {}
    for sqf, mult in _squarefree_parts(g, p):
        for deg, prod in _distinct_degree(sqf, p):
            for fac in _equal_degree(prod, deg, p, random.Random(p * 7919 + deg)):
                key = tuple(fac)
                out[key] = out.get(key, 0) + mult
    return sorted(((list(k), m) for k, m in out.items()), key=lambda t: (len(t[0]), t[0]))


def _squarefree_parts(f: list[int], p: int) -> list[tuple[list[int], int]]:
    if len(f) <= 1:
        return []
    df = derivative_mod(f, p)
    if not df:
        # f = g(x^p) = g(x)^p over F_p
        root = [f[i] for i in range(0, len(f), p)]
        return [(s, m * p) for s, m in _squarefree_parts(root, p)]
    out = []
    c = gcd_mod(f, df, p)
    w = divmod_mod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd_mod(w, c, p)
        z = divmod_mod(w, y, p)[0]
        if len(z) > 1:
            out.append((_monic_mod(z, p), i))
        i += 1
        w = y
        c = divmod_mod(c, y, p)[0]
    if len(c) > 1:
        root = [c[k] for k in range(0, len(c), p)]
        out.extend((s, m * p) for s, m in _squarefree_parts(root, p))
    return out


def _monic_mod(f: list[int], p: int) -> list[int]:
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def _distinct_degree(f: list[int], p: int) -> list[tuple[int, list[int]]]:
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod_mod(h, p, f, p)
        g = gcd_mod(sub_mod(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((d, g))
            f = divmod_mod(f, g, p)[0]
            f = _monic_mod(f, p)
            h = divmod_mod(h, f, p)[1]
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _equal_degree(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    if len(f) - 1 == d:
        return [f]
    n = len(f) - 1
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = trim_mod(a, p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, acc = a, a
            for _ in range(d - 1):
                t = powmod_mod(t, 2, f, p)
                acc = trim_mod([x + y for x, y in _zip_pad(acc, t)], p)
            b = acc
        else:
            b = sub_mod(powmod_mod(a, (p**d - 1) // 2, f, p), [1], p)
        g = gcd_mod(b, f, p)
        if 1 < len(g) < len(f):
            q = _monic_mod(divmod_mod(f, g, p)[0], p)
            return _equal_degree(g, d, p, rng) + _equal_degree(q, d, p, rng)


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    return [((a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)) for i in range(n)]
