"""Exact digit-level combinatorics.

Digit expansions with dominance and weighted digit statistics, exact
rational sparse multivariate polynomials, generalized and Gaussian
binomial coefficients, Kronecker-structured digit-product matrices, and
mechanical verification of the digital binomial identity family.
"""

from .digits import (
    DigitVector,
    digit_expansion,
    dominated_count,
    dominates,
    enumerate_dominated,
    is_carry_free,
    minimal_width,
    sum_of_digits,
    w_weight,
    z_weight,
)
from .exactalg import Polynomial, Rational, parse_polynomial, variables
from .reports import VerificationReport

__version__ = "0.1.0"

__all__ = [
    "DigitVector",
    "Polynomial",
    "Rational",
    "VerificationReport",
    "digit_expansion",
    "dominated_count",
    "dominates",
    "enumerate_dominated",
    "is_carry_free",
    "minimal_width",
    "parse_polynomial",
    "sum_of_digits",
    "variables",
    "w_weight",
    "z_weight",
]
