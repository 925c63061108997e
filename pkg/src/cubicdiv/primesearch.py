"""Prime pairs (q1, q2) for the cyclic base field, the congruence solution
for a, and the extra totally ramified primes.

The base field K~ is defined by u~(X) = X^3 + m~X^2 + 2m~X + m~ with
4m~ - 27 = a~^(2^s n).  Its discriminant is a square, so the order-3
automorphism sigma~ is a polynomial g in pi~ with rational coefficients.  A
prime q that splits in K~ has three prime ideals, one per root c of u~ mod q,
and modulo the ideal attached to c the pair (pi~, pi~^sigma) reduces to
(c, g(c)).
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import mpmath
import numpy as np

from .arith import (
    crt,
    factorize,
    is_prime,
    power_residue_test,
    primes_up_to,
    rth_root_mod,
)
from .numberfield.cubic import CubicField, KElement
from .poly import Poly, roots_mod_p
from .uchida import ParameterError, uchida_m, uchida_poly

SCHEMA_VERSION = 1
SEGMENT_SIZE = 1 << 17


class BoundExhausted(RuntimeError):
    """Some triple has no qualifying pair below the scan bound."""

    def __init__(self, message: str, missing: list):
        super().__init__(message)
        self.missing = missing


# ---------------------------------------------------------------------------
# the base field


@dataclass
class UchidaBase:
    a_tilde: int
    n: int
    s: int
    m: int
    poly: Poly
    sigma_coords: tuple[Fraction, Fraction, Fraction]  # pi~^sigma in the power basis

    @property
    def disc(self) -> int:
        return self.m * self.m * self.a_tilde ** (2**self.s * self.n)

    @property
    def modulus(self) -> int:
        """2^s n: every searched prime is 1 modulo this."""
        return 2**self.s * self.n

    @cached_property
    def field(self) -> CubicField:
        return CubicField(self.poly, factor_hints=_prime_list(self.a_tilde) + [3])

    @cached_property
    def ells(self) -> list[int]:
        return sorted(set(_prime_list(2 * self.n)))

    def triples(self) -> list[tuple[int, int, int]]:
        return [(l, i, j) for l in self.ells for i in range(l) for j in range(l)]

    def sigma_mod(self, c: int, q: int) -> int:
        """g(c) mod q, the image of pi~^sigma modulo the prime attached to c."""
        acc = 0
        for coef in reversed(self.sigma_coords):
            acc = (acc * c + coef.numerator * pow(coef.denominator, -1, q)) % q
        return acc

    def to_json(self) -> dict:
        return {
            "a_tilde": str(self.a_tilde),
            "n": str(self.n),
            "s": str(self.s),
            "m_tilde": str(self.m),
            "poly": [str(c) for c in self.poly.coeffs],
            "disc": str(self.disc),
            "sigma": [str(c) for c in self.sigma_coords],
        }


def _prime_list(x: int) -> list[int]:
    x = abs(x)
    return [] if x <= 1 else list(factorize(x).primes)


def build_base(a_tilde: int, n: int, s: int) -> UchidaBase:
    if a_tilde <= 0:
        raise ParameterError("a-tilde-nonpositive", "a~ must be positive")
    if a_tilde % 2 == 0:
        raise ParameterError("a-tilde-even", "a~ must be odd")
    if n < 1 or math.gcd(n, 6) != 1:
        raise ParameterError("n-not-coprime-to-6", f"n = {n} must be positive with gcd(n, 6) = 1")
    if s < 1:
        raise ParameterError("s-nonpositive", "s must be at least 1")
    m = (a_tilde ** (2**s * n) + 27) // 4
    if 4 * m - 27 != a_tilde ** (2**s * n):
        raise ParameterError("m-not-integral", "a~^(2^s n) + 27 is not divisible by 4")
    f = uchida_poly(m)
    root = m * a_tilde ** (2 ** (s - 1) * n)
    K = CubicField(f)
    if K.poly_discriminant != root * root:
        raise AssertionError("disc(u~) is not the expected square")
    pi = K.pi
    fprime = _eval(f.derivative(), pi)
    inv = fprime.inverse()
    sqrt_part = a_tilde ** (2 ** (s - 1) * n)
    target = Fraction(2 * m - 3 + sqrt_part, 2)
    for orientation in (-1, 1):
        delta = orientation * root
        ps = (-(pi + m) + inv * delta) / 2
        if not _eval(f, ps).is_zero():
            raise AssertionError("conjugate root does not satisfy u~")
        if (ps / pi).trace() == target:
            base = UchidaBase(a_tilde, n, s, m, f, tuple(ps.coords))
            base.__dict__["field"] = K
            return base
    raise AssertionError("no orientation of sigma~ matches the trace convention")


def _eval(f: Poly, x: KElement) -> KElement:
    acc = x.field.element([0])
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# per-prime conditions


def splits_completely(q: int, base: UchidaBase) -> list[int] | None:
    """Sorted roots (c1, c2, c3) of u~ mod q when q splits in K~, else None."""
    if (6 * base.disc) % q == 0:
        raise ValueError(f"{q} divides 6 disc(u~)")
    roots = roots_mod_p(base.poly, q)
    return roots if len(roots) == 3 else None


def assignments(roots: Sequence[int], base: UchidaBase, q: int) -> list[tuple[int, int, int]]:
    """The six ordered root pairs (c, c', k) with c' = sigma~^k(c), k = 1 first.

    With k = 1 these are the residues of (pi~, pi~^sigma) at the three primes
    above q; k = 2 gives the same for sigma~^2.
    """
    first, second = [], []
    for c in roots:
        g = base.sigma_mod(c, q)
        if g not in roots or g == c:
            raise AssertionError(f"sigma~ does not permute the roots mod {q}")
        first.append((c, g, 1))
        second.append((c, base.sigma_mod(g, q), 2))
    return first + second


def role_value(c: int, g: int, i: int, j: int, q: int, role: int) -> int:
    """Residue of alpha~ eps~^i (eps~^sigma)^j (role 1) or eps~^i (eps~^sigma)^j (role 2)."""
    v = pow(c + 1, i, q) * pow(g + 1, j, q) % q
    if role == 1:
        v = v * (c - g) * pow(c, -1, q) % q
    return v


def is_lth_nonresidue(v: int, l: int, q: int) -> bool:
    return pow(v, (q - 1) // l, q) != 1


def base_conditions(q: int, base: UchidaBase, d: int) -> str | None:
    """None if q passes the conditions shared by both roles, else the reason for rejection."""
    if not is_prime(q):
        return "not-prime"
    if (q - 1) % base.modulus:
        return "not-1-mod-2^s n"
    if (6 * base.disc) % q == 0:
        return "divides-6disc"
    if d % q == 0 or not power_residue_test(d, 2**base.s, q):
        return "d-not-2^s-power"
    if not power_residue_test(3, base.modulus, q):
        return "3-not-2^s n-power"
    if splits_completely(q, base) is None:
        return "not-split"
    return None


def check_conditions(q: int, base: UchidaBase, d: int, triple: tuple[int, int, int], role: int) -> dict:
    """Evidence that q can serve as q1 (role 1) or q2 (role 2) for the triple,
    or a dict with a "rejected" reason."""
    l, i, j = triple
    if role == 2 and i == 0 and j == 0:
        return {"rejected": "unit-condition-trivial"}
    reason = base_conditions(q, base, d)
    if reason:
        return {"rejected": reason}
    roots = splits_completely(q, base)
    for c, g, k in assignments(roots, base, q):
        v = role_value(c, g, i, j, q, role)
        if is_lth_nonresidue(v, l, q):
            return {
                "q": str(q),
                "roots": [str(r) for r in roots],
                "assignment": [str(c), str(g)],
                "sigma_power": k,
                "value": str(v),
                "power": str(pow(v, (q - 1) // l, q)),
                "d_power": str(pow(d % q, (q - 1) // math.gcd(2**base.s, q - 1), q)),
                "three_power": str(pow(3, (q - 1) // math.gcd(base.modulus, q - 1), q)),
            }
    return {"rejected": "residue"}


# ---------------------------------------------------------------------------
# scanning


def _segment_primes(lo: int, hi: int) -> np.ndarray:
    small = primes_up_to(math.isqrt(hi) + 1)
    sieve = np.ones(hi - lo, dtype=bool)
    for p in small:
        start = max(p * p, -(-lo // p) * p)
        if start >= hi:
            continue
        sieve[start - lo :: p] = False
    for k in range(lo, min(hi, 2)):
        sieve[k - lo] = False
    return lo + np.nonzero(sieve)[0]


def scan_segment(lo: int, hi: int, base_json: dict, d: int) -> list[dict]:
    """Admissible primes in [lo, hi) with the triples each can serve.

    Record fields: q, roots, role1/role2 = index into the assignment list per
    triple (-1 when none works).
    """
    base = base_from_json(base_json)
    triples = base.triples()
    out = []
    for q in _segment_primes(lo, hi):
        q = int(q)
        if (q - 1) % base.modulus or (6 * base.disc) % q == 0 or d % q == 0:
            continue
        if not power_residue_test(d, 2**base.s, q) or not power_residue_test(3, base.modulus, q):
            continue
        roots = splits_completely(q, base)
        if roots is None:
            continue
        assign = assignments(roots, base, q)
        r1, r2 = [], []
        for l, i, j in triples:
            for role, acc in ((1, r1), (2, r2)):
                hit = -1
                if not (role == 2 and i == 0 and j == 0):
                    for k, (c, g, _) in enumerate(assign):
                        if is_lth_nonresidue(role_value(c, g, i, j, q, role), l, q):
                            hit = k
                            break
                acc.append(hit)
        out.append({"q": q, "roots": roots, "role1": r1, "role2": r2})
    return out


def base_from_json(data: dict) -> UchidaBase:
    a, n, s = int(data["a_tilde"]), int(data["n"]), int(data["s"])
    m = int(data["m_tilde"])
    return UchidaBase(a, n, s, m, uchida_poly(m), tuple(Fraction(c) for c in data["sigma"]))


@dataclass
class SearchResult:
    base: UchidaBase
    d: int
    q_bound: int
    scanned_up_to: int
    certificates: dict[tuple[int, int, int], dict]
    missing: list[tuple[int, int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        certs = []
        for t in sorted(self.certificates):
            certs.append(self.certificates[t])
        return {
            "schema": "prime-pairs",
            "schema_version": SCHEMA_VERSION,
            "base": self.base.to_json(),
            "d": str(self.d),
            "q_bound": str(self.q_bound),
            "scanned_up_to": str(self.scanned_up_to),
            "certificates": certs,
            "missing": [{"l": str(l), "i": str(i), "j": str(j)} for l, i, j in self.missing],
            "sigma_powers_used": self.sigma_powers_used(),
        }

    def sigma_powers_used(self) -> list[int]:
        used = set()
        for cert in self.certificates.values():
            for role in ("q1", "q2"):
                if cert[role] is not None:
                    used.add(cert[role]["sigma_power"])
        return sorted(used)


def _build_certificate(base: UchidaBase, d: int, triple, records: list[dict], q_bound: int) -> dict | None:
    l, i, j = triple
    idx = base.triples().index(triple)
    rec1 = next((r for r in records if r["role1"][idx] >= 0), None)
    if rec1 is None:
        return None
    trivial = i == 0 and j == 0
    cert = {
        "l": str(l),
        "i": str(i),
        "j": str(j),
        "q_bound": str(q_bound),
        "q1": _evidence(base, d, triple, rec1, 1, rec1["role1"][idx]),
        "q2": None,
        "flags": [],
    }
    if trivial:
        cert["flags"].append("unit-condition-trivial")
        return cert
    rec2 = next((r for r in records if r["role2"][idx] >= 0 and r["q"] != rec1["q"]), None)
    if rec2 is None:
        return None
    cert["q2"] = _evidence(base, d, triple, rec2, 2, rec2["role2"][idx])
    return cert


def _evidence(base: UchidaBase, d: int, triple, rec: dict, role: int, k: int) -> dict:
    l, i, j = triple
    q = rec["q"]
    c, g, power = assignments(rec["roots"], base, q)[k]
    v = role_value(c, g, i, j, q, role)
    return {
        "q": str(q),
        "roots": [str(r) for r in rec["roots"]],
        "assignment": [str(c), str(g)],
        "sigma_power": power,
        "value": str(v),
        "power": str(pow(v, (q - 1) // l, q)),
        "d_power": str(pow(d % q, (q - 1) // math.gcd(2**base.s, q - 1), q)),
        "three_power": str(pow(3, (q - 1) // math.gcd(base.modulus, q - 1), q)),
    }


def search_pairs(
    base: UchidaBase,
    d: int,
    q_bound: int,
    workers: int = 1,
    resume: str | os.PathLike | None = None,
    segment: int = SEGMENT_SIZE,
) -> SearchResult:
    """Smallest qualifying (q1, q2) for every triple, scanning primes in order.

    Both roles need q = 1 mod 2^s n, q coprime to 6 disc(u~), d a 2^s-th power
    and 3 a 2^s n-th power mod q, and u~ split completely mod q.  q1 is the
    least such prime whose role-1 value is an l-th power nonresidue, q2 the
    least other prime whose role-2 value is one.  The scan stops as soon as every triple is settled.  A resume file records the
    scanned prefix and the admissible primes found so far.

    Residuosity is tested at all six ordered root pairs, so a certificate may
    rely on sigma~^2 rather than sigma~; each records which one it used.
    """
    if d >= 0 or d == 1:
        raise ParameterError("d-positive", "d must be negative")
    triples = base.triples()
    records: list[dict] = []
    scanned = 2
    key = {"base": base.to_json(), "d": str(d), "segment": segment}
    if resume and os.path.exists(resume):
        with open(resume) as fh:
            state = json.load(fh)
        if state.get("key") == key:
            records = state["records"]
            scanned = int(state["scanned_up_to"])

    def settled() -> bool:
        return all(_build_certificate(base, d, t, records, q_bound) is not None for t in triples)

    bj = base.to_json()
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while scanned < q_bound and not settled():
            batch = []
            lo = scanned
            for _ in range(max(1, workers)):
                if lo >= q_bound:
                    break
                hi = min(q_bound, lo + segment)
                batch.append((lo, hi))
                lo = hi
            if pool is not None:
                results = list(pool.map(scan_segment, *zip(*batch), [bj] * len(batch), [d] * len(batch)))
            else:
                results = [scan_segment(a, b, bj, d) for a, b in batch]
            for res in results:
                records.extend(res)
            records.sort(key=lambda r: r["q"])
            scanned = batch[-1][1]
            if resume:
                tmp = f"{resume}.tmp"
                with open(tmp, "w") as fh:
                    json.dump({"key": key, "scanned_up_to": str(scanned), "records": records}, fh)
                os.replace(tmp, resume)
    finally:
        if pool is not None:
            pool.shutdown()
    certificates = {}
    missing = []
    for t in triples:
        cert = _build_certificate(base, d, t, records, q_bound)
        if cert is None:
            missing.append(t)
        else:
            certificates[t] = cert
    return SearchResult(base, d, q_bound, scanned, certificates, missing)


# ---------------------------------------------------------------------------
# independent re-verification


def verify_certificate(cert: dict, base: UchidaBase, d: int) -> list[str]:
    """Recheck a certificate from its raw numbers; returns a list of failures."""
    problems = []
    l, i, j = int(cert["l"]), int(cert["i"]), int(cert["j"])
    if l not in base.ells or not (0 <= i < l and 0 <= j < l):
        problems.append("bad triple")
    roles = [(1, cert["q1"])]
    if cert["q2"] is not None:
        roles.append((2, cert["q2"]))
    elif not (i == 0 and j == 0 and "unit-condition-trivial" in cert["flags"]):
        problems.append("missing q2")
    qs = []
    for role, ev in roles:
        q = int(ev["q"])
        qs.append(q)
        tag = f"q{role}={q}"
        if not is_prime(q):
            problems.append(f"{tag}: not prime")
            continue
        if (q - 1) % base.modulus:
            problems.append(f"{tag}: not 1 mod 2^s n")
        if (6 * base.disc) % q == 0:
            problems.append(f"{tag}: divides 6 disc")
        roots = [int(r) for r in ev["roots"]]
        if len(set(roots)) != 3 or any(base.poly(r) % q for r in roots):
            problems.append(f"{tag}: roots do not split u~")
        c, g = (int(x) for x in ev["assignment"])
        image = base.sigma_mod(c, q)
        if ev["sigma_power"] == 2:
            image = base.sigma_mod(image, q)
        if c not in roots or g != image or ev["sigma_power"] not in (1, 2):
            problems.append(f"{tag}: assignment is not (c, sigma^k(c))")
        if pow(d % q, (q - 1) // math.gcd(2**base.s, q - 1), q) != 1 or str(
            pow(d % q, (q - 1) // math.gcd(2**base.s, q - 1), q)
        ) != ev["d_power"]:
            problems.append(f"{tag}: d is not a 2^s-th power residue")
        if pow(3, (q - 1) // math.gcd(base.modulus, q - 1), q) != 1:
            problems.append(f"{tag}: 3 is not a 2^s n-th power residue")
        v = role_value(c, g, i, j, q, role)
        if str(v) != ev["value"] or pow(v, (q - 1) // l, q) == 1 or str(pow(v, (q - 1) // l, q)) != ev["power"]:
            problems.append(f"{tag}: value is an l-th power residue")
    if len(qs) == 2 and qs[0] == qs[1]:
        problems.append("q1 == q2")
    return problems


# ---------------------------------------------------------------------------
# congruences for a


@dataclass
class CongruenceSolution:
    a: int
    modulus: int
    witnesses: dict[int, dict]
    d: int
    n: int
    s: int
    a_tilde: int
    ramified: list[int] = field(default_factory=list)

    def check(self) -> list[str]:
        """Failures of 3^6 d^n a^(2^s n) = a~^(2^s n) and u = u~ mod each q."""
        e = 2**self.s * self.n
        m_tilde = (self.a_tilde**e + 27) // 4
        problems = []
        if self.a % 2 == 0:
            problems.append("a is even")
        for q in self.witnesses:
            lhs = 729 * pow(self.d, self.n, q) * pow(self.a, e, q) % q
            if lhs != pow(self.a_tilde, e, q):
                problems.append(f"congruence fails mod {q}")
            m = (729 * pow(self.d, self.n, q) * pow(self.a, e, q) + 27) * pow(4, -1, q) % q
            if (m - m_tilde) % q:
                problems.append(f"u != u~ mod {q}")
        return problems

    def to_json(self) -> dict:
        return {
            "schema": "congruence-solution",
            "schema_version": SCHEMA_VERSION,
            "a": str(self.a),
            "modulus": str(self.modulus),
            "d": str(self.d),
            "n": str(self.n),
            "s": str(self.s),
            "a_tilde": str(self.a_tilde),
            "witnesses": {str(q): w for q, w in sorted(self.witnesses.items())},
            "ramified_primes": [str(p) for p in self.ramified],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CongruenceSolution":
        return cls(
            int(data["a"]),
            int(data["modulus"]),
            {int(q): w for q, w in data["witnesses"].items()},
            int(data["d"]),
            int(data["n"]),
            int(data["s"]),
            int(data["a_tilde"]),
            [int(p) for p in data.get("ramified_primes", [])],
        )


def certificate_primes(certs: Sequence[dict]) -> list[int]:
    qs = set()
    for c in certs:
        qs.add(int(c["q1"]["q"]))
        if c["q2"] is not None:
            qs.add(int(c["q2"]["q"]))
    return sorted(qs)


def solve_congruences(certs: Sequence[dict], base: UchidaBase, d: int) -> CongruenceSolution:
    """An odd a with 3^6 d^n a^(2^s n) = a~^(2^s n) modulo every certificate prime."""
    e = base.modulus
    pairs = [(1, 2)]
    witnesses = {}
    for q in certificate_primes(certs):
        z1 = rth_root_mod(3, e, q)
        z2 = rth_root_mod(d % q, 2**base.s, q)
        if z1 is None or z2 is None:
            raise AssertionError(f"certificate prime {q} lacks the required power residues")
        x = base.a_tilde * pow(pow(z1, 6, q) * z2 % q, -1, q) % q
        witnesses[q] = {"z1": str(z1), "z2": str(z2), "x": str(x)}
        pairs.append((x, q))
    a, M = crt(pairs)
    sol = CongruenceSolution(a, M, witnesses, d, base.n, base.s, base.a_tilde)
    problems = sol.check()
    if problems:
        raise AssertionError("; ".join(problems))
    return sol


def augment_ramification(sol: CongruenceSolution, k: int, start: int = 5, limit: int = 10**6) -> CongruenceSolution:
    """Add k primes p with v_p(m) = 1 for every a in the new residue class.

    For each p (coprime to 6 n d and to the current modulus) a residue b with
    3^6 d^n b^(2^s n) = -27 (mod p) but not mod p^2 is found, and a = b
    (mod p^2) is imposed.
    """
    if k <= 0:
        return sol
    d, n, s = sol.d, sol.n, sol.s
    e = 2**s * n
    a, M = sol.a, sol.modulus
    chosen = list(sol.ramified)
    p = start - 1
    while len(chosen) < len(sol.ramified) + k:
        p += 1
        if p > limit:
            raise BoundExhausted("no further primes for ramification below the limit", [])
        if not is_prime(p) or (6 * n * d) % p == 0 or M % p == 0:
            continue
        target = -pow(27 * pow(d, n, p), -1, p) % p
        b = rth_root_mod(target, e, p)
        if b is None:
            continue
        p2 = p * p
        if (729 * pow(d, n, p2) * pow(b, e, p2) + 27) % p2 == 0:
            b += p
        if (729 * pow(d, n, p2) * pow(b, e, p2) + 27) % p2 == 0:
            raise AssertionError("Hensel step failed")
        a, M = crt([(a, M), (b, p2)])
        chosen.append(p)
    new = CongruenceSolution(a, M, dict(sol.witnesses), d, n, s, sol.a_tilde, chosen)
    m = uchida_m(d, n, s, a)
    for p in chosen:
        if m % p or m % (p * p) == 0:
            raise AssertionError(f"v_{p}(m) != 1 after augmentation")
    problems = new.check()
    if problems:
        raise AssertionError("; ".join(problems))
    return new


# ---------------------------------------------------------------------------
# hypotheses on the base field


def hypothesis_probe(base: UchidaBase) -> dict:
    """Best-effort evidence for the two hypotheses on the base field.

    * (alpha~) not the l-th power of a principal ideal, for l | 2n;
    * the index of <eps~, eps~^sigma> in the unit group coprime to 2n.
    Every item is labelled verified, violated or unverified-within-limits.
    """
    K = base.field
    alpha = (K.pi - K.element(base.sigma_coords)) / K.pi
    N = alpha.norm()
    report: dict = {"alpha_norm": str(N), "alpha_valuations": [], "lth_power": {}, "unit_index": {}}
    support = _prime_list(int(N.numerator)) + _prime_list(int(N.denominator)) if N != 0 else []
    vals = []
    for p in sorted(set(support)):
        for idx, P in enumerate(K.primes_above(p)):
            v = K.valuation(alpha, P)
            vals.append((p, idx, P, v))
            report["alpha_valuations"].append({"p": str(p), "prime": idx, "e": P.e, "f": P.f, "valuation": v})
    for l in base.ells:
        if any(v % l for _, _, _, v in vals):
            report["lth_power"][str(l)] = {"status": "verified", "reason": "some valuation is not divisible by l"}
            continue
        root = K.maximal_order.unit_ideal()
        for _, _, P, v in vals:
            root = root * (P ** (v // l))
        if root.norm == 1:
            report["lth_power"][str(l)] = {
                "status": "violated",
                "reason": "alpha~ is a unit, so (alpha~) is the l-th power of the unit ideal",
            }
            continue
        report["lth_power"][str(l)] = {
            "status": "unverified-within-limits",
            "reason": "principality of the l-th root ideal is not tested in totally real fields",
            "root_norm": str(root.norm),
        }
    report["unit_index"] = _unit_index_screen(base)
    return report


def _unit_index_screen(base: UchidaBase, prec: int = 128) -> dict:
    """Regulator of <eps~, eps~^sigma> against a lower bound for the regulator
    of a totally real cubic field, R >= log(D/4)^2 / 16."""
    K = base.field
    f = base.poly
    with mpmath.workprec(prec + 64):
        roots = sorted(mpmath.re(r) for r in mpmath.polyroots([int(c) for c in reversed(f.coeffs)], extraprec=prec))
        sig = base.sigma_coords

        def g(x):
            return sum(mpmath.mpf(c.numerator) / c.denominator * x**k for k, c in enumerate(sig))

        L = []
        for x in roots[:2]:
            L.append([mpmath.log(abs(x + 1)), mpmath.log(abs(g(x) + 1))])
        reg = abs(L[0][0] * L[1][1] - L[0][1] * L[1][0])
        D = abs(K.discriminant)
        lower = mpmath.log(mpmath.mpf(D) / 4) ** 2 / 16 if D > 4 else mpmath.mpf(0)
        bound = reg / lower if lower > 0 else mpmath.inf
    out = {
        "pair_regulator": mpmath.nstr(reg, 20),
        "field_discriminant": str(K.discriminant),
        "regulator_lower_bound": mpmath.nstr(lower, 20),
        "index_upper_bound": mpmath.nstr(bound, 20),
    }
    if bound < 2:
        out["status"] = "verified"
        out["reason"] = "index < 2 forces index 1"
    else:
        out["status"] = "unverified-within-limits"
        out["reason"] = "regulator bound does not pin the index"
    return out
