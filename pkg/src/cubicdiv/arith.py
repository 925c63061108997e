"""Integer and modular arithmetic.

Everything here works on Python ints.  The functions are pure and the
returned objects are immutable, so they can be shared between worker
processes freely.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

# Deterministic Miller-Rabin: these bases are correct below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
# 64 extra rounds give error probability below 4**-64 = 2**-128.
_MR_EXTRA_ROUNDS = 64

TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_RHO_ITERATIONS = 2_000_000


class FactorizationBudgetExceeded(ArithmeticError):
    """A composite cofactor survived trial division and rho within budget."""

    def __init__(self, partial: "Factorization", cofactor: int):
        self.partial = partial
        self.cofactor = cofactor
        super().__init__(f"unfactored composite cofactor {cofactor}")


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(limit + 1) if sieve[i]]


_TRIAL_PRIMES: list[int] | None = None


def trial_primes() -> list[int]:
    global _TRIAL_PRIMES
    if _TRIAL_PRIMES is None:
        _TRIAL_PRIMES = _small_primes(TRIAL_DIVISION_LIMIT)
    return _TRIAL_PRIMES


def primes_up_to(limit: int) -> list[int]:
    if limit <= TRIAL_DIVISION_LIMIT:
        tp = trial_primes()
        import bisect

        return tp[: bisect.bisect_right(tp, limit)]
    return _small_primes(limit)


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below ``MR_DETERMINISTIC_BOUND``."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, d, s, a) for a in _MR_BASES):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(_MR_EXTRA_ROUNDS))


def primality_is_deterministic(n: int) -> bool:
    return n < MR_DETERMINISTIC_BOUND


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    c = max(n + 1, 2)
    while not is_prime(c):
        c += 1
    return c


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors:
            v *= p**e
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def probabilistic_primes(self) -> tuple[int, ...]:
        return tuple(p for p in self.primes if not primality_is_deterministic(p))

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "factors": [[str(p), e] for p, e in self.factors],
        }

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        body = "*".join(parts) if parts else "1"
        return f"-{body}" if self.sign < 0 else body


def _pollard_brent(n: int, budget: int, seed: int) -> int | None:
    """Return a nontrivial factor of odd composite n, or None past budget."""
    rng = random.Random(seed)
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(
    N: int, effort: int = DEFAULT_RHO_ITERATIONS, hints: Iterable[int] = ()
) -> Factorization:
    """Factor N exactly.

    ``hints`` are primes known to divide N (they are divided out first).
    Raises FactorizationBudgetExceeded when a composite cofactor remains.
    """
    if N == 0:
        raise ValueError("cannot factor 0")
    sign = -1 if N < 0 else 1
    n = abs(N)
    found: dict[int, int] = {}

    def take(p: int) -> None:
        nonlocal n
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1

    for h in sorted(set(hints)):
        if h > 1 and n % h == 0:
            if not is_prime(h):
                raise ValueError(f"hint {h} is not prime")
            take(h)
    for p in trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            take(p)
    stack = [n] if n > 1 else []
    leftover: list[int] = []
    seed = 1
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        r = math.isqrt(c)
        if r * r == c:
            stack.extend([r, r])
            continue
        g = _pollard_brent(c, effort, seed)
        seed += 1
        if g is None:
            leftover.append(c)
            continue
        stack.extend([g, c // g])
    fac = Factorization(sign, tuple(sorted(found.items())))
    if leftover:
        raise FactorizationBudgetExceeded(fac, reduce(lambda a, b: a * b, leftover, 1))
    return fac


def valuation(N: int, p: int) -> int:
    if N == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError("p must be prime")
    k = 0
    N = abs(N)
    while N % p == 0:
        N //= p
        k += 1
    return k


def cube_free_split(m: int, effort: int = DEFAULT_RHO_ITERATIONS) -> tuple[int, int]:
    """Write m = b*c**3 with b cube-free and c > 0."""
    fac = factorize(m, effort)
    b, c = fac.sign, 1
    for p, e in fac.factors:
        c *= p ** (e // 3)
        b *= p ** (e % 3)
    return b, c


def crt(pairs: Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Combine x = r_i (mod m_i).  Returns (x, M) with 0 <= x < M = lcm.

    Non-coprime moduli are accepted when the residues are consistent.
    """
    x, M = 0, 1
    for r, mod in pairs:
        if mod <= 0:
            raise ValueError("moduli must be positive")
        g = math.gcd(M, mod)
        if (r - x) % g:
            raise ValueError(f"inconsistent residues modulo gcd {g}")
        lcm = M // g * mod
        t = ((r - x) // g) * pow(M // g, -1, mod // g) % (mod // g) if mod // g > 1 else 0
        x = (x + M * t) % lcm
        M = lcm
    return x % M, M


def power_residue_test(x: int, r: int, q: int) -> bool:
    """True iff x = y**r (mod q) is solvable, for prime q not dividing x."""
    if r <= 0:
        raise ValueError("r must be positive")
    if x % q == 0:
        raise ValueError("x is divisible by q")
    g = math.gcd(r, q - 1)
    return pow(x, (q - 1) // g, q) == 1


def _odd_part(n: int, ell: int) -> tuple[int, int]:
    t = 0
    while n % ell == 0:
        n //= ell
        t += 1
    return t, n


def _non_residue(ell: int, q: int) -> int:
    for c in range(2, q):
        if pow(c, (q - 1) // ell, q) != 1:
            return c
    raise ValueError("no non-residue")


def _dlog_ell_group(h: int, g: int, ell: int, t: int, q: int) -> int:
    """Discrete log of h to base g in the cyclic group of order ell**t (Pohlig-Hellman)."""
    gen_ell = pow(g, ell ** (t - 1), q)
    table = {pow(gen_ell, k, q): k for k in range(ell)}
    e = 0
    for i in range(t):
        hi = pow(h * pow(g, -e, q) % q, ell ** (t - 1 - i), q)
        e += table[hi] * ell**i
    return e


def _prime_root(x: int, ell: int, q: int) -> int:
    """One ell-th root of x mod q, ell prime dividing q - 1, x an ell-th power."""
    t, s = _odd_part(q - 1, ell)
    g = pow(_non_residue(ell, q), s, q)  # generates the Sylow ell-subgroup
    alpha = pow(ell, -1, s) if s > 1 else 0
    r0 = pow(x, alpha, q)
    b = pow(x, ell * alpha - 1, q) if ell * alpha >= 1 else pow(x, -1, q)
    # r0**ell = x*b with b in the Sylow subgroup; cancel b
    e = _dlog_ell_group(b, g, ell, t, q)
    if e % ell:
        raise ArithmeticError("x is not an ell-th power")
    return r0 * pow(g, -(e // ell), q) % q


def rth_root_mod(x: int, r: int, q: int) -> int | None:
    """Some z with z**r = x (mod q), or None when x is not an r-th power."""
    if x % q == 0:
        raise ValueError("x is divisible by q")
    x %= q
    if r == 1:
        return x
    g = math.gcd(r, q - 1)
    if pow(x, (q - 1) // g, q) != 1:
        return None
    # a g-th root w gives z = w**A where A*r + B*(q-1) = g
    ells: list[int] = []
    rest = g
    for p in range(2, g + 1):
        while rest % p == 0:
            ells.append(p)
            rest //= p
        if rest == 1:
            break
    w, remaining = x, g
    for ell in ells:
        remaining //= ell
        root = _prime_root(w, ell, q)
        if remaining > 1:
            zeta = pow(_non_residue(ell, q), (q - 1) // ell, q)
            gr = math.gcd(remaining, q - 1)
            for _ in range(ell):
                if pow(root, (q - 1) // gr, q) == 1:
                    break
                root = root * zeta % q
            else:
                raise ArithmeticError("no compatible root")
        w = root
    _, A, _ = _xgcd(r, q - 1)
    z = pow(w, A, q) if A >= 0 else pow(pow(w, -1, q), -A, q)
    assert pow(z, r, q) == x
    return z


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n).factors)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n > 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def integer_nth_root(x: int, k: int) -> int | None:
    """Exact k-th root of x if it is a perfect k-th power, else None."""
    if x < 0:
        if k % 2 == 0:
            return None
        r = integer_nth_root(-x, k)
        return None if r is None else -r
    if x < 2:
        return x
    lo, hi = 0, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == x else None
