"""Ideal class order certificates and a small class group computation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import factorize, primes_up_to
from .linalg import hnf, inverse, smith_normal_form
from .numberfield.algebra import Ideal, PrimeIdeal
from .numberfield.cubic import CubicField, PrincipalityResult, UnitData, is_principal
from .uchida import RamificationReport, UchidaInstance, beta_ideal, ramification_report

CERTIFIED = "certified"
SUPPORTED = "supported-not-certified"
ORDER_DIVIDES = "order-properly-divides-n"


def _prime_factors(n: int) -> list[int]:
    return [] if n == 1 else list(factorize(n).primes)


# ---------------------------------------------------------------------------
# order of the class of B


@dataclass
class DivisibilityCertificate:
    params: dict
    n: int
    ideal: Ideal | None
    generator: list[str] | None  # beta, generating B^n
    tests: dict[int, PrincipalityResult]
    verdict: str
    unit: UnitData | None = None
    genus: dict | None = None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def claim(self) -> str:
        return f"{self.n} | h(K)"

    def to_json(self) -> dict:
        return {
            "schema": "divisibility-certificate",
            "schema_version": 1,
            "params": self.params,
            "n": str(self.n),
            "claim": self.claim(),
            "verdict": self.verdict,
            "method": "ideal-class-order",
            "ideal": self.ideal.to_json() if self.ideal is not None else None,
            "generator_of_nth_power": self.generator,
            "unit": self.unit.to_json() if self.unit is not None else None,
            "tests": {str(l): r.to_json() for l, r in sorted(self.tests.items())},
            "kf_statement": {"claim": f"{self.n} | h(KF)", "status": "conditional-not-checked"},
            "genus": self.genus,
        }


def class_element_order(inst: UchidaInstance, n: int | None = None, limit: int = 2_000_000) -> DivisibilityCertificate:
    """Certify that the class of B (with B^n = beta O_K) has order exactly n.

    B^n is principal with generator beta; for each prime l | n the ideal
    B^(n/l) is tested with the rigorous principality search.
    """
    n = inst.n if n is None else n
    if n == 1:
        return DivisibilityCertificate(inst.params(), 1, None, None, {}, CERTIFIED)
    data = beta_ideal(inst)
    B = data.ideal
    K = inst.K
    if B ** n != K.principal_ideal(data.beta):
        raise AssertionError("B^n is not generated by beta")
    unit = K.fundamental_unit(seed=K.pi + 1)
    tests = {}
    verdict = CERTIFIED
    for l in _prime_factors(n):
        res = is_principal(B ** (n // l), K, unit=unit, limit=limit)
        tests[l] = res
        if res.status == "principal":
            verdict = ORDER_DIVIDES
        elif res.status == "inconclusive" and verdict == CERTIFIED:
            verdict = SUPPORTED
    return DivisibilityCertificate(inst.params(), n, B, data.beta.to_json(), tests, verdict, unit)


# ---------------------------------------------------------------------------
# the 3^t factor


@dataclass
class GenusReport:
    count: int
    t: int
    divisor: int
    totally_ramified: list[int]

    def to_json(self) -> dict:
        return {
            "totally_ramified_count": self.count,
            "t": self.t,
            "guaranteed_divisor": str(self.divisor),
            "totally_ramified": [str(p) for p in self.totally_ramified],
            "rule": "3^t n divides h(K) when at least 6 + t primes are totally ramified",
            "status": "cited, not verified",
        }


def genus_factor_from_count(count: int, n: int) -> tuple[int, int]:
    t = max(0, count - 6)
    return t, 3**t * n


def genus_factor_report(inst: UchidaInstance, report: RamificationReport | None = None) -> GenusReport:
    if report is None:
        report = ramification_report(inst)
    if not report.complete:
        raise ValueError("ramification table is incomplete; genus factor withheld")
    t, divisor = genus_factor_from_count(report.count, inst.n)
    return GenusReport(report.count, t, divisor, report.totally_ramified)


# ---------------------------------------------------------------------------
# small class groups


class EffortExceeded(RuntimeError):
    pass


@dataclass
class ClassGroupSmall:
    h: int
    invariants: list[int]
    factor_base: list[PrimeIdeal]
    relations: int
    minkowski_bound: float
    certified: bool
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "h": str(self.h),
            "invariants": [str(x) for x in self.invariants],
            "factor_base": [{"p": str(P.p), "e": P.e, "f": P.f} for P in self.factor_base],
            "relations": self.relations,
            "minkowski_bound": repr(self.minkowski_bound),
            "certified": self.certified,
            "notes": self.notes,
        }


def _snf_det(rows: list[list[int]], k: int) -> tuple[int, list[int]]:
    """Index of the row lattice in Z^k (0 if not full rank) and its invariants."""
    if len(rows) < k:
        return 0, []
    diag, _, _ = smith_normal_form(rows)
    if len(diag) < k or any(x == 0 for x in diag[:k]):
        return 0, []
    return math.prod(diag[:k]), [x for x in diag[:k] if x != 1]


def _reduce_rows(rows: list[list[int]], k: int) -> list[list[int]]:
    """Replace the relation rows by an HNF basis to keep the matrix small."""
    if len(rows) < k:
        return rows
    try:
        H = hnf([r for r in rows], k)
    except ValueError:
        return rows
    return [list(c) for c in H]


class _Relations:
    def __init__(self, K: CubicField, fb: list[PrimeIdeal]):
        self.K = K
        self.fb = fb
        self.fb_primes = sorted({P.p for P in fb})
        self.rows: list[list[int]] = []

    def exponents(self, coords: list[int]) -> list[int] | None:
        """Valuation vector of an element over the factor base, None if not smooth."""
        N = abs(self.K.maximal_order.norm(coords))
        for p in self.fb_primes:
            while N % p == 0:
                N //= p
        if N != 1:
            return None
        return [P.valuation_int(coords) for P in self.fb]

    def add(self, vec: list[int]) -> None:
        if any(vec):
            self.rows.append(vec)


def _ideal_of(K: CubicField, fb: list[PrimeIdeal], vec: list[int]) -> Ideal:
    I = K.maximal_order.unit_ideal()
    for P, e in zip(fb, vec):
        if e:
            I = I * (P**e)
    return I


def class_group_small(
    K: CubicField,
    effort: float = 2000.0,
    max_rounds: int = 12,
    limit: int = 2_000_000,
) -> ClassGroupSmall:
    """Class group of a complex cubic field with Minkowski bound at most ``effort``.

    Relations come from factoring small elements of O_K and of the factor base
    ideals.  The tentative group G' = Z^k / (relations) surjects onto Cl(K);
    for each prime l dividing |G'| every element of order l in G' is tested
    for principality, and principal ones are added as relations.  When all
    are non-principal the kernel has no l-torsion, so |G'| = h.
    """
    if K.signature != (1, 1):
        raise ValueError("only fields with one real embedding are supported")
    MB = K.minkowski_bound()
    if MB > effort:
        raise EffortExceeded(f"Minkowski bound {MB:.1f} exceeds the effort threshold {effort}")
    fb: list[PrimeIdeal] = []
    for p in primes_up_to(int(MB)):
        fb.extend(K.primes_above(p))
    if not fb:
        return ClassGroupSmall(1, [], [], 0, MB, True, ["no prime ideal below the Minkowski bound"])
    k = len(fb)
    rel = _Relations(K, fb)
    o = K.maximal_order
    for p in rel.fb_primes:
        rel.add([P.e if P.p == p else 0 for P in fb])
    unit = K.fundamental_unit()
    bound = 2.0 * max(1.0, MB) ** (2 / 3)
    h_prev = None
    notes: list[str] = []
    for _ in range(max_rounds):
        for I in [o.unit_ideal()] + fb:
            try:
                for c in K.enumerate_ideal(I, bound * I.norm ** (2 / 3), limit=limit):
                    vec = rel.exponents(c)
                    if vec is not None:
                        rel.add(vec)
            except OverflowError:
                notes.append("enumeration limit reached while harvesting relations")
                break
        rel.rows = _reduce_rows(rel.rows, k)
        h, inv = _snf_det(rel.rows, k)
        if h and h == h_prev:
            break
        h_prev = h
        bound *= 2
    if not h:
        raise EffortExceeded("relation lattice never reached full rank")
    certified = True
    while True:
        h, inv = _snf_det(rel.rows, k)
        found_new = False
        for ell in _prime_factors(h) if h > 1 else []:
            for vec in _torsion_elements(rel.rows, k, ell):
                pos, res = _principal_vector(K, fb, vec, unit, limit)
                if res.status == "principal":
                    rel.add(pos)
                    found_new = True
                    break
                if res.status == "inconclusive":
                    certified = False
            if found_new:
                break
        if not found_new:
            break
        rel.rows = _reduce_rows(rel.rows, k)
    h, inv = _snf_det(rel.rows, k)
    if not certified:
        notes.append("some saturation test was inconclusive")
    return ClassGroupSmall(h, inv, fb, len(rel.rows), MB, certified, notes)


def _torsion_elements(rows: list[list[int]], k: int, ell: int) -> list[list[int]]:
    """Exponent vectors (over the factor base) of all nonzero elements of G'[ell]."""
    diag, _, V = smith_normal_form(rows)
    # G' = Z^k / row lattice; with U A V = D, x -> x V gives coordinates in which
    # G' = prod Z/diag_i.  Elements of order ell: multiples of diag_i/ell.
    gens = []
    for i in range(k):
        di = diag[i]
        if di % ell == 0:
            y = [0] * k
            y[i] = di // ell
            gens.append(y)
    if not gens:
        return []
    Vinv = inverse(V)
    out = []
    for coeffs in _nonzero_combinations(len(gens), ell):
        y = [sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(k)]
        x = [sum(y[i] * Vinv[i][j] for i in range(k)) for j in range(k)]
        out.append([int(v) for v in x])
    return out


def _nonzero_combinations(r: int, ell: int):
    def rec(prefix):
        if len(prefix) == r:
            if any(prefix):
                yield list(prefix)
            return
        for c in range(ell):
            yield from rec(prefix + [c])

    yield from rec([])


def _principal_vector(
    K: CubicField, fb: list[PrimeIdeal], vec: list[int], unit: UnitData, limit: int
) -> tuple[list[int], PrincipalityResult]:
    """Principality of prod P^vec (exponents of either sign).

    Negative exponents are cleared with p: P^-1 ~ p P^-1 = prod of the other
    primes above p, which changes nothing up to principal ideals.
    """
    pos = [0] * len(fb)
    for i, (P, e) in enumerate(zip(fb, vec)):
        if e >= 0:
            pos[i] += e
        else:
            for j, Q in enumerate(fb):
                if Q.p == P.p:
                    pos[j] += (-e) * (Q.e if j != i else Q.e - 1)
    I = _ideal_of(K, fb, pos)
    return pos, is_principal(I, K, unit=unit, limit=limit)


# ---------------------------------------------------------------------------
# the ideal sqrt(d) O_KF + alpha O_KF


@dataclass
class EvenOrderProbe:
    valuations: list[dict]
    norm_ideal: Ideal
    tests: dict[int, PrincipalityResult]
    evidence: str

    def to_json(self) -> dict:
        return {
            "ideal": "sqrt(d) O_KF + alpha O_KF",
            "valuations": self.valuations,
            "norm_to_K": self.norm_ideal.to_json(),
            "tests": {str(k): r.to_json() for k, r in sorted(self.tests.items())},
            "evidence": self.evidence,
            "status": "evidence only; divisibility not asserted",
        }


def _match_below(K: CubicField, Q: PrimeIdeal) -> int:
    """Index in K.primes_above(p) of the maximal-order prime matching ``Q``."""
    o = K.maximal_order
    gens = [o.to_order(Q.order.from_order(c)) for c in Q.columns()]
    hits = [i for i, P in enumerate(K.primes_above(Q.p)) if P.f == Q.f and all(P.valuation(g) > 0 for g in gens)]
    if len(hits) != 1:
        raise ArithmeticError("could not match a local prime with a prime of O_K")
    return hits[0]


def even_order_probe(inst: UchidaInstance, limit: int = 2_000_000) -> EvenOrderProbe:
    """Class order evidence for J = sqrt(d) O_KF + alpha O_KF.

    J is a fractional ideal with v_P(J) = min(v_P(sqrt d), v_P(alpha)).  The
    relative norm sends principal ideals to principal ideals, so the order of
    [N(J)] in Cl(K) divides the order of [J].  A non-principal N(J) shows J is
    non-principal; N(J) of order exactly 2 shows [J] has even order.  Nothing
    is claimed about divisibility of h.
    """
    from .uchida import alpha_data

    kf, K = inst.KF, inst.K
    alpha = alpha_data(inst).alpha
    sd = kf.sqrt_d
    rows = []
    exps: dict[tuple[int, int], int] = {}
    for p in inst.known_primes:
        for R in kf.primes_above(p):
            v = min(kf.valuation(sd, R), kf.valuation(alpha, R))
            if v:
                rows.append({"prime": R.to_json(), "valuation": v})
                key = (p, _match_below(K, R.below))
                exps[key] = exps.get(key, 0) + R.f_rel * v
    # P^-1 is replaced by the integral ideal p P^-1 of the same class
    N = K.maximal_order.unit_ideal()
    for (p, i), e in sorted(exps.items()):
        for j, Q in enumerate(K.primes_above(p)):
            k = e if j == i and e > 0 else (-e) * (Q.e - (j == i)) if e < 0 else 0
            if k:
                N = N * Q**k
    unit = K.fundamental_unit(seed=K.pi + 1)
    tests = {1: is_principal(N, K, unit=unit, limit=limit)}
    if tests[1].status == "non-principal":
        tests[2] = is_principal(N * N, K, unit=unit, limit=limit)
    if tests[1].status == "principal":
        evidence = "norm ideal principal; no information"
    elif tests[1].status == "non-principal" and tests[2].status == "principal":
        evidence = "class of the norm ideal has order 2, so the class of J has even order"
    elif tests[1].status == "non-principal":
        evidence = "J is not principal; parity of its order not determined"
    else:
        evidence = "inconclusive"
    return EvenOrderProbe(rows, N, tests, evidence)
