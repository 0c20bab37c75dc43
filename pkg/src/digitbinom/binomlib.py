"""Generalized and Gaussian (q-) binomial coefficients.

Three independent computation routes live here:

* :func:`gen_binomial` expands the rising product x(x+r)...(x+(d-1)r)/d!
  symbolically; at r = 1 it reduces to the ordinary binomial C(x+d-1, d).
* :func:`q_binomial_product` computes Gaussian binomials by the q-Pascal
  recurrence B(N,k) = B(N-1,k-1) + q^k * B(N-1,k), which stays inside the
  polynomial ring (the quotient-of-products definition is recovered in the
  tests by cross-multiplication).
* :func:`q_binomial_digital` recomputes the same polynomials from digit
  statistics: sum q^z over the binary words of weight k, divided by the
  staircase power q^(k(k-1)/2).

The convolution check sums gen_binomial(x,r,p-v)*gen_binomial(y,r,v-q) over
v and compares with gen_binomial(x+y,r,p-q).  Its index parameters are named
p_idx/q_idx because plain p and q are polynomial variables here.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction

from . import digits
from .errors import OutOfRangeError
from .exactalg import Polynomial, Rational, as_polynomial
from .reports import VerificationReport

_Q = Polynomial.variable("q")
_X = Polynomial.variable("x")
_Y = Polynomial.variable("y")


@functools.lru_cache(maxsize=None)
def _gen_binomial_cached(x: Polynomial, r: Polynomial, d: int) -> Polynomial:
    product = Polynomial.one()
    for j in range(d):
        product = product * (x + j * r)
    return product * Fraction(1, math.factorial(d))


def gen_binomial(x, r, d: int) -> Polynomial:
    """Expand x(x+r)(x+2r)...(x+(d-1)r)/d!; d = 0 gives 1.

    x and r may be polynomials or rationals, so specialized slots such as
    q^i*y are expanded directly.
    """
    if d < 0:
        raise OutOfRangeError(f"order d must be non-negative, got {d}")
    return _gen_binomial_cached(as_polynomial(x), as_polynomial(r), d)


def gen_binomial_value(x: Rational, r: Rational, d: int) -> Fraction:
    """Rational-point value of the rising product over d!, computed without
    polynomial machinery (used for randomized screening)."""
    if d < 0:
        raise OutOfRangeError(f"order d must be non-negative, got {d}")
    product = Fraction(1)
    for j in range(d):
        product *= x + j * r
    return product / math.factorial(d)


@functools.lru_cache(maxsize=None)
def _q_pascal_row(n: int) -> tuple[Polynomial, ...]:
    if n == 0:
        return (Polynomial.one(),)
    prev = _q_pascal_row(n - 1)
    row = [Polynomial.one()]
    for k in range(1, n):
        row.append(prev[k - 1] + Polynomial.monomial({"q": k}) * prev[k])
    row.append(Polynomial.one())
    return tuple(row)


def q_binomial_product(n: int, k: int) -> Polynomial:
    """Gaussian binomial as a polynomial in q, via the q-Pascal recurrence.

    Coefficients are non-negative integers; at q = 1 the value is C(n, k).
    """
    if n < 0:
        raise OutOfRangeError(f"upper index must be non-negative, got {n}")
    if k < 0 or k > n:
        raise OutOfRangeError(f"lower index {k} outside [0, {n}]")
    return _q_pascal_row(n)[k]


def q_binomial_digital(n: int, k: int) -> Polynomial:
    """Gaussian binomial recomputed from digit statistics.

    Sums q^z(w) over all binary words w of length n and weight k, where z
    weights the positions at which w differs from the all-ones word, then
    divides out the exact monomial q^(k(k-1)/2).
    """
    if n < 0:
        raise OutOfRangeError(f"upper index must be non-negative, got {n}")
    if k < 0 or k > n:
        raise OutOfRangeError(f"lower index {k} outside [0, {n}]")
    top = (1 << n) - 1
    total = Polynomial.zero()
    for m in range(top + 1):
        if digits.sum_of_digits(m, 2) == k:
            z = digits.z_weight(top - m, top, 2, n) if n else 0
            total = total + Polynomial.monomial({"q": z})
    return total.divide_exact(Polynomial.monomial({"q": k * (k - 1) // 2}))


def rothe_rhs(n: int) -> Polynomial:
    """Sum of q^(k(k-1)/2) * qbinom(n,k) * x^(n-k) * y^k over k = 0..n."""
    if n < 0:
        raise OutOfRangeError(f"order must be non-negative, got {n}")
    total = Polynomial.zero()
    for k in range(n + 1):
        staircase = Polynomial.monomial({"q": k * (k - 1) // 2})
        term = staircase * q_binomial_product(n, k)
        term = term * Polynomial.monomial({"x": n - k, "y": k})
        total = total + term
    return total


def chu_vandermonde_check(p_idx: int, q_idx: int) -> VerificationReport:
    """Verify the convolution sum of generalized binomials symbolically in
    x, y, r and report both sides."""
    if q_idx < 0:
        raise OutOfRangeError(f"q_idx must be non-negative, got {q_idx}")
    if q_idx > p_idx:
        raise OutOfRangeError(f"q_idx {q_idx} exceeds p_idx {p_idx}")
    r = Polynomial.variable("r")
    lhs = Polynomial.zero()
    for v in range(q_idx, p_idx + 1):
        lhs = lhs + gen_binomial(_X, r, p_idx - v) * gen_binomial(_Y, r, v - q_idx)
    rhs = gen_binomial(_X + _Y, r, p_idx - q_idx)
    return VerificationReport(
        identity="chu-vandermonde",
        params={"p_idx": p_idx, "q_idx": q_idx},
        passed=lhs == rhs,
        lhs=lhs,
        rhs=rhs,
    )
