"""Uchida-type cubic fields K = Q(pi), pi a root of u(x) = x^3 + m(x+1)^2 with
4m - 27 = 3^6 d^n a^(2^s n), together with the element alpha of KF whose
ideal is an n-th power."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath

from .arith import (
    DEFAULT_RHO_ITERATIONS,
    Factorization,
    FactorizationBudgetExceeded,
    factorize,
    is_prime,
    is_squarefree,
    valuation,
)
from .numberfield.algebra import Ideal, PrimeIdeal
from .numberfield.compositum import Compositum, KFElement, OrientationError, RelativePrime, regulator_of_pair
from .numberfield.cubic import CubicField, KElement
from .numberfield.quadratic import QuadField, QuadInt
from .poly import Poly


class ParameterError(ValueError):
    """Invalid construction parameters; ``code`` names the violated condition."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class HardError(AssertionError):
    """A property that must hold for every valid instance failed."""

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


def uchida_m(d: int, n: int, s: int, a: int) -> int:
    num = 3**6 * d**n * a ** (2**s * n) + 27
    if num % 4:
        raise ParameterError("m-not-integral", "3^6 d^n a^(2^s n) + 27 is not divisible by 4")
    return num // 4


def uchida_poly(m: int) -> Poly:
    """x^3 + m x^2 + 2m x + m = x^3 + m(x+1)^2."""
    return Poly([m, 2 * m, m, 1])


def validate_parameters(d: int, n: int, s: int, a: int) -> None:
    if d >= 0:
        raise ParameterError("d-positive", f"d = {d} must be negative")
    if d % 4 != 1:
        raise ParameterError("d-not-1-mod-4", f"d = {d} must be 1 mod 4")
    if not is_squarefree(d):
        raise ParameterError("d-not-squarefree", f"d = {d} must be square-free")
    if n < 1:
        raise ParameterError("n-nonpositive", f"n = {n} must be positive")
    if n % 2 == 0:
        raise ParameterError("n-even", f"n = {n} must be odd")
    if s < 1:
        raise ParameterError("s-nonpositive", f"s = {s} must be at least 1")
    if a % 2 == 0:
        raise ParameterError("a-even", f"a = {a} must be odd")


def _small_prime_factors(x: int, effort: int) -> list[int]:
    x = abs(x)
    if x <= 1:
        return []
    return list(factorize(x, effort).primes)


@dataclass
class UchidaInstance:
    d: int
    n: int
    s: int
    a: int
    m: int
    poly: Poly
    K: CubicField
    F: QuadField
    sqrt_disc: QuadInt  # the fixed square root of 4m - 27 in F
    orientation: int  # delta = orientation * m * sqrt_disc
    effort: int = DEFAULT_RHO_ITERATIONS

    @cached_property
    def KF(self) -> Compositum:
        return Compositum(self.K, self.F, self.sqrt_disc * (self.orientation * self.m))

    @property
    def disc_part(self) -> int:
        """4m - 27."""
        return 4 * self.m - 27

    @cached_property
    def known_primes(self) -> list[int]:
        """Primes dividing 3*d*a (all primes of 4m - 27, plus 3)."""
        ps = set(_small_prime_factors(self.d, self.effort)) | set(_small_prime_factors(self.a, self.effort))
        ps.add(3)
        return sorted(ps)

    def params(self) -> dict:
        return {"d": str(self.d), "n": str(self.n), "s": str(self.s), "a": str(self.a)}

    def to_json(self) -> dict:
        return {
            "params": self.params(),
            "m": str(self.m),
            "poly": [str(c) for c in self.poly.coeffs],
            "four_m_minus_27": str(self.disc_part),
            "sqrt_four_m_minus_27": self.sqrt_disc.to_json(),
            "orientation": self.orientation,
        }


def sqrt_disc_part(F: QuadField, n: int, s: int, a: int) -> QuadInt:
    """27 a^(2^(s-1) n) d^((n-1)/2) sqrt(d), a square root of 4m - 27."""
    d = F.d
    return F.from_sqrt_coords(0, 27 * a ** (2 ** (s - 1) * n) * d ** ((n - 1) // 2))


def build_instance(d: int, n: int, s: int, a: int, effort: int = DEFAULT_RHO_ITERATIONS) -> UchidaInstance:
    validate_parameters(d, n, s, a)
    m = uchida_m(d, n, s, a)
    if 4 * m - 27 != 3**6 * d**n * a ** (2**s * n):
        raise HardError("4m - 27 identity failed")
    f = uchida_poly(m)
    hints = set(_small_prime_factors(d, effort)) | set(_small_prime_factors(a, effort)) | {3}
    K = CubicField(f, factor_hints=sorted(hints), effort=effort)
    if K.poly_discriminant != m * m * (4 * m - 27):
        raise HardError("disc(u) != m^2 (4m - 27)")
    if K.poly_discriminant >= 0:
        raise HardError("disc(u) must be negative (one real embedding)")
    F = QuadField(d)
    S = sqrt_disc_part(F, n, s, a)
    if S * S != 4 * m - 27:
        raise HardError("square root of 4m - 27 is wrong")
    target = (S + (2 * m - 3)) / 2
    for orientation in (-1, 1):
        kf = Compositum(K, F, S * (orientation * m))
        ratio = kf.pi_sigma / kf.pi
        if ratio.trace_to_F() == target:
            inst = UchidaInstance(d, n, s, a, m, f, K, F, S, orientation, effort)
            inst.__dict__["KF"] = kf
            return inst
    raise OrientationError("no choice of sigma gives Tr(pi^sigma / pi) = (2m - 3 + sqrt(4m - 27))/2")


# ---------------------------------------------------------------------------
# units


@dataclass
class EpsData:
    eps: KFElement
    eps_sigma: KFElement
    min_poly: Poly
    regulator: tuple

    def to_json(self) -> dict:
        return {
            "eps": self.eps.to_json(),
            "eps_sigma": self.eps_sigma.to_json(),
            "min_poly": [str(c) for c in self.min_poly.coeffs],
            "regulator_enclosure": [mpf_str(x) for x in self.regulator],
        }


def mpf_str(x) -> str:
    return mpmath.nstr(x, 30)


def unit_eps(inst: UchidaInstance, prec: int = 128) -> EpsData:
    kf = inst.KF
    eps = kf.pi + 1
    eps_sigma = kf.pi_sigma + 1
    mp = eps.x.charpoly()
    expected = Poly([-1, 3, inst.m - 3, 1])
    if mp != expected:
        raise HardError("minimal polynomial of pi + 1 is not x^3 + (m-3)x^2 + 3x - 1")
    if eps_sigma != eps.sigma():
        raise HardError("sigma(pi + 1) != pi^sigma + 1")
    reg = regulator_of_pair(kf, eps, eps_sigma, prec)
    return EpsData(eps, eps_sigma, mp, reg)


# ---------------------------------------------------------------------------
# ramification

TOTALLY_RAMIFIED = "totally-ramified"
SQUARE_TIMES_PRIME = "p1^2p2"
UNRAMIFIED = "unramified-other"
THREE_SPECIAL = "p=3-special"
UNDETERMINED = "undetermined"


def classify_prime(p: int, inst: UchidaInstance) -> str:
    """Shape of p O_K read off from v_p(m) and v_p(4m - 27).

    * p | m with 3 not dividing v_p(m): totally ramified;
    * v_p(4m - 27) odd: p = P1^2 P2;
    * p coprime to m(4m - 27): unramified;
    * p = 3 is never classified this way; other cases are left undetermined.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 3:
        return THREE_SPECIAL
    vm = valuation(inst.m, p) if inst.m else 0
    vd = valuation(inst.disc_part, p)
    if vm > 0 and vm % 3:
        return TOTALLY_RAMIFIED
    if vd % 2 == 1:
        return SQUARE_TIMES_PRIME
    if vm == 0 and vd == 0:
        return UNRAMIFIED
    return UNDETERMINED


def shape_of(primes: list[PrimeIdeal]) -> str:
    """Classification label for an explicit factorization."""
    ef = sorted((P.e, P.f) for P in primes)
    if ef == [(3, 1)]:
        return TOTALLY_RAMIFIED
    if ef == [(1, 1), (2, 1)]:
        return SQUARE_TIMES_PRIME
    if all(e == 1 for e, _ in ef):
        return UNRAMIFIED
    return "other:" + ",".join(f"e{e}f{f}" for e, f in ef)


def classify_and_check(p: int, inst: UchidaInstance) -> tuple[str, str]:
    """(rule-based label, label from the explicit factorization of p)."""
    direct = shape_of(inst.K.primes_above(p, local=True))
    return classify_prime(p, inst), direct


@dataclass
class RamificationReport:
    m_factorization: Factorization | None
    cube_free: tuple[int, int] | None
    table: dict[int, str]
    direct: dict[int, str]
    complete: bool
    cofactor: int = 1

    @property
    def totally_ramified(self) -> list[int]:
        return sorted(p for p, lab in self.direct.items() if lab == TOTALLY_RAMIFIED)

    @property
    def count(self) -> int:
        return len(self.totally_ramified)

    @property
    def t(self) -> int:
        return max(0, self.count - 6)

    def to_json(self) -> dict:
        return {
            "m_factorization": self.m_factorization.to_json() if self.m_factorization else None,
            "cube_free_split": [str(x) for x in self.cube_free] if self.cube_free else None,
            "primes": [
                {"p": str(p), "rule": self.table[p], "direct": self.direct[p]} for p in sorted(self.table)
            ],
            "totally_ramified": [str(p) for p in self.totally_ramified],
            "count": self.count,
            "t": self.t,
            "complete": self.complete,
            "unfactored_cofactor": str(self.cofactor),
        }


def ramification_report(inst: UchidaInstance, effort: int | None = None) -> RamificationReport:
    """Classify every prime dividing m(4m - 27).

    The rule-based label is cross-checked against the explicit factorization
    in a p-maximal order; p = 3 and undetermined primes use the latter only.
    """
    effort = inst.effort if effort is None else effort
    complete = True
    cofactor = 1
    try:
        fac = factorize(inst.m, effort, hints=inst.known_primes)
        primes = set(fac.primes)
    except FactorizationBudgetExceeded as exc:
        fac = None
        primes = set(exc.partial.primes)
        cofactor = exc.cofactor
        complete = False
    # d^n a^(2^s n) has the primes of d and a; factor those separately
    for x in (inst.d, inst.a):
        try:
            primes |= set(_small_prime_factors(x, effort))
        except FactorizationBudgetExceeded as exc:
            primes |= set(exc.partial.primes)
            cofactor *= exc.cofactor
            complete = False
    primes.add(3)
    table, direct = {}, {}
    for p in sorted(primes):
        rule, shape = classify_and_check(p, inst)
        if rule in (TOTALLY_RAMIFIED, SQUARE_TIMES_PRIME, UNRAMIFIED) and rule != shape:
            raise HardError(f"classification of {p} disagrees with its factorization", {"rule": rule, "direct": shape})
        table[p], direct[p] = rule, shape
    cube = None
    if fac is not None:
        b, c = fac.sign, 1
        for p, e in fac.factors:
            c *= p ** (e // 3)
            b *= p ** (e % 3)
        cube = (b, c)
    return RamificationReport(fac, cube, table, direct, complete, cofactor)


# ---------------------------------------------------------------------------
# alpha and h(x)


@dataclass
class AlphaData:
    alpha: KFElement
    h1: list[QuadInt]  # min poly of pi^sigma/pi, low to high
    h: list[QuadInt]  # min poly of alpha, low to high
    norm_F: QuadInt
    norm_Q: Fraction
    trace: QuadInt
    trace_alpha_alpha_sigma: QuadInt
    form: str = "(pi - pi^sigma)/(3 pi)"

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "alpha_form": self.form,
            "h1": [c.to_json() for c in self.h1],
            "h": [c.to_json() for c in self.h],
            "norm_to_F": self.norm_F.to_json(),
            "norm_to_Q": str(self.norm_Q),
            "trace_to_F": self.trace.to_json(),
            "trace_alpha_alpha_sigma": self.trace_alpha_alpha_sigma.to_json(),
        }


def h1_coefficients(inst: UchidaInstance) -> list[QuadInt]:
    """x^3 - ((2m-3+S)/2) x^2 + ((2m-3-S)/2) x - 1 with S = sqrt(4m - 27)."""
    F, S, m = inst.F, inst.sqrt_disc, inst.m
    return [F.element(-1), (-S + (2 * m - 3)) / 2, -((S + (2 * m - 3)) / 2), F.element(1)]


def h_coefficients(inst: UchidaInstance) -> list[QuadInt]:
    """h(x) = -(1/27) h1(1 - 3x)."""
    h1 = h1_coefficients(inst)
    F = inst.F
    # expand h1(1 - 3x) coefficientwise
    out = [F.element(0) for _ in range(4)]
    for k, c in enumerate(h1):
        # (1 - 3x)^k
        for j in range(k + 1):
            out[j] = out[j] + c * (math.comb(k, j) * (-3) ** j)
    return [c / (-27) for c in out]


def _eval_over_F(coeffs: list[QuadInt], z: KFElement) -> KFElement:
    acc = z.kf.element(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def alpha_data(inst: UchidaInstance) -> AlphaData:
    kf = inst.KF
    pi, ps = kf.pi, kf.pi_sigma
    alpha = (pi - ps) / (pi * 3)
    h1 = h1_coefficients(inst)
    h = h_coefficients(inst)
    ratio = ps / pi
    if ratio.min_poly_over_F() != h1:
        raise HardError("min poly of pi^sigma/pi differs from h1")
    if alpha.min_poly_over_F() != h:
        raise HardError("min poly of alpha differs from h")
    if not all(c.is_integral() for c in h):
        raise HardError("h(x) has non-integral coefficients", {"h": [c.to_json() for c in h]})
    if not _eval_over_F(h, alpha).is_zero():
        raise HardError("h(alpha) != 0")
    norm_F = alpha.norm_to_F()
    norm_Q = alpha.norm()
    trace = alpha.trace_to_F()
    taas = (alpha * alpha.sigma()).trace_to_F()
    return AlphaData(alpha, h1, h, norm_F, norm_Q, trace, taas)


# ---------------------------------------------------------------------------
# n-th power decomposition


@dataclass
class PrimeValuation:
    prime: RelativePrime
    valuation: int
    f_prime: int  # index of the prime of F below (in the order of f_primes)

    def to_json(self) -> dict:
        d = self.prime.to_json()
        d.update({"valuation": self.valuation, "f_prime": self.f_prime})
        return d


@dataclass
class NthPowerWitness:
    n: int
    entries: dict[int, list[PrimeValuation]]
    structure_checks: dict[str, bool] = field(default_factory=dict)

    @property
    def quotients(self) -> dict[int, list[int]]:
        return {p: [e.valuation // self.n for e in lst] for p, lst in self.entries.items()}

    def all_divisible(self) -> bool:
        return all(e.valuation % self.n == 0 for lst in self.entries.values() for e in lst)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "primes": {str(p): [e.to_json() for e in lst] for p, lst in sorted(self.entries.items())},
            "quotients": {str(p): q for p, q in sorted(self.quotients.items())},
            "checks": dict(sorted(self.structure_checks.items())),
        }


def _f_prime_generators(F: QuadField, p: int) -> list[QuadInt | None]:
    """One generator g per prime P of F above p with P = (p, g); None if P = pO_F."""
    roots = F.omega_roots_mod(p)
    if not roots:
        return [None]
    return [F.element(-r, 1) for r in roots]


def decompose_alpha(inst: UchidaInstance, data: AlphaData | None = None) -> NthPowerWitness:
    """Valuations of alpha at every prime of KF above 3*d*a; each must be divisible by n."""
    if data is None:
        data = alpha_data(inst)
    kf = inst.KF
    alpha = data.alpha
    diff = kf.pi - kf.pi_sigma
    entries: dict[int, list[PrimeValuation]] = {}
    checks: dict[str, bool] = {}
    for p in inst.known_primes:
        rel = kf.primes_above(p)
        gens = _f_prime_generators(inst.F, p)
        lst = []
        for R in rel:
            if gens == [None]:
                idx = 0
            else:
                hits = [i for i, g in enumerate(gens) if kf.valuation(kf.from_quad(g), R) > 0]
                if len(hits) != 1:
                    raise HardError("could not locate the prime of F below a prime of KF")
                idx = hits[0]
            lst.append(PrimeValuation(R, kf.valuation(alpha, R), idx))
        entries[p] = lst
        if p == 3 and inst.d % 3 and inst.a % 3:
            checks["coprime_to_3"] = all(e.valuation == 0 for e in lst)
        elif p == 3:
            # the prime of F above 3 splits completely in KF and alpha lies in exactly one factor
            checks["three_splits_completely"] = len(rel) == 3 * len(gens)
            checks["alpha_in_one_prime_above_3"] = all(
                sum(1 for e in lst if e.f_prime == i and e.valuation > 0) == 1 for i in range(len(gens))
            )
        if p != 3 and inst.disc_part % p == 0:
            by_f = [[e for e in lst if e.f_prime == i] for i in range(len(gens))]
            checks[f"splits_completely_{p}"] = all(len(g) == 3 for g in by_f)
            checks[f"difference_in_one_prime_{p}"] = all(
                sum(1 for e in g if kf.valuation(diff, e.prime) > 0) == 1 for g in by_f
            )
    witness = NthPowerWitness(inst.n, entries, checks)
    if not witness.all_divisible():
        raise HardError("a valuation of alpha is not divisible by n", witness.to_json())
    norm = 1
    for p, lst in entries.items():
        for e in lst:
            norm *= p ** (e.prime.prime.f * e.valuation)
    if norm != abs(data.norm_Q):
        raise HardError("alpha has support outside the primes dividing 3da", witness.to_json())
    return witness


@dataclass
class BetaData:
    beta: KElement
    ideal: Ideal  # the n-th root of beta O_K
    factors: list[tuple[int, int, int]]  # (p, index of prime above p, exponent in the root)
    unit_ratio: KFElement  # beta / (alpha^sigma)^2

    def to_json(self) -> dict:
        return {
            "beta": self.beta.to_json(),
            "beta_norm": str(self.beta.norm()),
            "ideal": self.ideal.to_json(),
            "factors": [[str(p), i, k] for p, i, k in self.factors],
            "unit_ratio": self.unit_ratio.to_json(),
        }


def beta_ideal(inst: UchidaInstance, data: AlphaData | None = None) -> BetaData:
    """beta = N_{KF/K}(alpha^sigma) and the ideal B of O_K with B^n = beta O_K."""
    if data is None:
        data = alpha_data(inst)
    kf, K = inst.KF, inst.K
    a_s = data.alpha.sigma()
    prod = a_s * a_s.tau()
    if not prod.y.is_zero():
        raise HardError("N_{KF/K}(alpha^sigma) is not in K")
    beta = prod.x
    ratio = prod / (a_s * a_s)
    expected = -(kf.pi_sigma / kf.pi.sigma(2))
    if ratio != expected:
        raise HardError("beta / (alpha^sigma)^2 is not -pi^sigma / pi^(sigma^2)")
    o = K.maximal_order
    B = o.unit_ideal()
    factors = []
    norm = 1
    for p in inst.known_primes:
        for i, P in enumerate(K.primes_above(p)):
            v = K.valuation(beta, P)
            norm *= p ** (P.f * v)
            if v % inst.n:
                raise HardError(f"valuation {v} of beta above {p} is not divisible by n")
            if v:
                factors.append((p, i, v // inst.n))
                B = B * (P ** (v // inst.n))
    if norm != abs(beta.norm()):
        raise HardError("beta has support outside the primes dividing 3da")
    if B ** inst.n != K.principal_ideal(beta):
        raise HardError("B^n != beta O_K")
    return BetaData(beta, B, factors, ratio)
