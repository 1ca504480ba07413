"""Surjectivity certificates for mod-l Galois representations of genus-3
hyperelliptic Jacobians.

The pipeline: exact point counting gives Weil polynomials, resultants
against Hecke polynomial data rule out 2- and 4-dimensional pieces of the
l-torsion, an elimination argument rules out 3+3 filtrations, and the
combined divisor bound B(T) certifies surjectivity for every prime l >= 5
not dividing it.  A separate multiplicative-order certificate handles l = 3.
"""

__version__ = "0.1.0"

from .intpoly import IntPoly, RatPoly, resultant
from .curve import HyperellipticCurve, WeilPolynomial, validate_curve, weil_polynomial
from .hecke import HeckeTable, parse_hecke_table, weil_transform
from .bounds import BoundReport, bound, verdict
from .smallprime import SmallPrimeCertificate, certify, frobenius_order

__all__ = [
    "IntPoly",
    "RatPoly",
    "resultant",
    "HyperellipticCurve",
    "WeilPolynomial",
    "validate_curve",
    "weil_polynomial",
    "HeckeTable",
    "parse_hecke_table",
    "weil_transform",
    "BoundReport",
    "bound",
    "verdict",
    "SmallPrimeCertificate",
    "certify",
    "frobenius_order",
]
