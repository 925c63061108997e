"""Cubic fields with class numbers divisible by n, built from Uchida-type
polynomials x^3 + m(x+1)^2: construction, certificates and prime searches."""

__version__ = "0.1.0"
