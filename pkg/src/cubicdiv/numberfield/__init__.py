"""Number field arithmetic for cubic fields, imaginary quadratic fields and
their compositum."""

from .algebra import Algebra, Ideal, Order, PrimeIdeal
from .cubic import CubicField, KElement, factor_prime, fundamental_unit, is_principal, maximal_order
from .quadratic import QuadField, QuadInt

__all__ = [
    "Algebra",
    "CubicField",
    "Ideal",
    "KElement",
    "Order",
    "PrimeIdeal",
    "QuadField",
    "QuadInt",
    "factor_prime",
    "fundamental_unit",
    "is_principal",
    "maximal_order",
]
