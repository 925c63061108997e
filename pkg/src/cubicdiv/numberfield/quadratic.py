"""The imaginary quadratic field F = Q(sqrt d), d < 0 square-free, d = 1 mod 4."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import is_squarefree, kronecker
from ..poly import roots_mod_p


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise ValueError("d must be negative")
        if self.d % 4 != 1:
            raise ValueError("d must be 1 mod 4")
        if not is_squarefree(self.d):
            raise ValueError("d must be square-free")

    @property
    def discriminant(self) -> int:
        return self.d

    @property
    def omega_poly(self) -> list[int]:
        """omega = (1 + sqrt d)/2 is a root of x^2 - x - (d-1)/4."""
        return [-(self.d - 1) // 4, -1, 1]

    def element(self, a, b=0) -> "QuadInt":
        return QuadInt(self, Fraction(a), Fraction(b))

    def from_sqrt_coords(self, x, y) -> "QuadInt":
        """x + y*sqrt(d) = (x - y) + 2y*omega."""
        x, y = Fraction(x), Fraction(y)
        return QuadInt(self, x - y, 2 * y)

    @property
    def sqrt_d(self) -> "QuadInt":
        return self.from_sqrt_coords(0, 1)

    def splitting(self, p: int) -> str:
        """'ramified', 'split' or 'inert' for the rational prime p."""
        k = kronecker(self.d, p)
        return {0: "ramified", 1: "split", -1: "inert"}[k]

    def omega_roots_mod(self, p: int) -> list[int]:
        return roots_mod_p(self.omega_poly, p)


@dataclass(frozen=True)
class QuadInt:
    """a + b*omega with rational a, b (integral iff both are integers)."""

    field: QuadField
    a: Fraction
    b: Fraction

    def _coerce(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            return other
        return QuadInt(self.field, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        return QuadInt(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        # omega^2 = omega + (d-1)/4
        c = Fraction(self.field.d - 1, 4)
        bb = self.b * o.b
        return QuadInt(self.field, self.a * o.a + c * bb, self.a * o.b + self.b * o.a + bb)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadInt":
        # omega -> 1 - omega
        return QuadInt(self.field, self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        return (self * self.conjugate()).a

    def trace(self) -> Fraction:
        return 2 * self.a + self.b

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        num = self * o.conjugate()
        return QuadInt(self.field, num.a / n, num.b / n)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadInt):
            return self.a == other.a and self.b == other.b
        return self.b == 0 and self.a == other

    def __hash__(self):
        return hash((self.a, self.b))

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def divisible_by(self, k: int) -> bool:
        """Membership in k*O_F."""
        return self.is_integral() and self.a % k == 0 and self.b % k == 0

    def sqrt_coords(self) -> tuple[Fraction, Fraction]:
        """(x, y) with self = x + y*sqrt(d)."""
        return self.a + self.b / 2, self.b / 2

    def to_json(self) -> list[str]:
        return [str(self.a), str(self.b)]

    def __repr__(self) -> str:
        return f"QuadInt({self.a} + {self.b}*w)"
