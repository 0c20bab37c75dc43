"""Instance verification of the digit-level binomial identities.

Every verifier builds its two sides by genuinely different routes - a
structured formula on one side and the shared brute-force summation oracle
:func:`oracle_carry_free_sum` on the other - and reports structural
equality of the canonical polynomial forms.  Nothing here proves anything;
the verifiers mechanically confirm individual instances.

One printed form of the derivative-in-q identity indexes the digit weight
by the summation variable; that reading makes the weight identically zero,
so :func:`identity_deriv_q` weights against the fixed upper bound n, which
is exactly what the closed form C(N,2)*y*(x+y)^(N-1) confirms.  Similarly,
the derivative-in-x identity has a rational-function right side; we check
the equivalent denominator-cleared polynomial identity.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable

from . import digits
from .binomlib import gen_binomial, gen_binomial_value, q_binomial_product, rothe_rhs
from .errors import OutOfRangeError, TooLargeForSymbolicError
from .exactalg import Polynomial, poly_prod, poly_sum
from .reports import VerificationReport

MAX_SYMBOLIC_SUMMANDS = 4096
MAX_INDEXED_WIDTH = 32
DEFAULT_EVAL_POINTS = 5
_RANDOM_BOUND = 10 ** 6

_X = Polynomial.variable("x")
_Y = Polynomial.variable("y")


def _require_positive(n: int, name: str = "N") -> None:
    if n < 1:
        raise OutOfRangeError(f"{name} must be >= 1, got {n}")


def _require_non_negative(n: int, name: str = "n") -> None:
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")


# -- the shared oracle -------------------------------------------------------

def oracle_carry_free_sum(n: int, b: int,
                          term: Callable[[int, int], Polynomial]) -> Polynomial:
    """Sum term(m, n-m) over every m digitally dominated by n.

    This is the brute-force side of every identity check: a plain sum over
    the enumerated dominated set, with no factorization shortcuts.
    """
    _require_non_negative(n)
    return poly_sum(term(m, n - m) for m in digits.enumerate_dominated(n, b))


# -- binary (q = 1 and q-weighted) identities --------------------------------

def verify_digital_binomial(n: int) -> VerificationReport:
    """(x+y)^s(n) against the dominated-sum of x^s(m) * y^s(n-m)."""
    _require_non_negative(n)
    lhs = (_X + _Y) ** digits.sum_of_digits(n, 2)
    rhs = oracle_carry_free_sum(n, 2, lambda m, c: Polynomial.monomial(
        {"x": digits.sum_of_digits(m, 2), "y": digits.sum_of_digits(c, 2)}))
    return VerificationReport("digital-binomial", {"n": n}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


def _q_weighted_oracle(n: int, width: int) -> Polynomial:
    # sum of q^z(m) * x^s(m) * y^s(n-m) over the dominated set of n
    def term(m: int, c: int) -> Polynomial:
        return Polynomial.monomial({
            "q": digits.z_weight(m, n, 2, width),
            "x": digits.sum_of_digits(m, 2),
            "y": digits.sum_of_digits(c, 2),
        })
    return oracle_carry_free_sum(n, 2, term)


def verify_q_digital(n: int) -> VerificationReport:
    """Product of C(x + q^i*y + n_i - 1, n_i) over the binary digits of n
    against the q-weighted dominated sum."""
    _require_non_negative(n)
    width = digits.minimal_width(n, 2)
    expansion = digits.digit_expansion(n, 2, width).digits
    lhs = poly_prod(
        gen_binomial(_X + Polynomial.monomial({"q": i, "y": 1}), 1, expansion[i])
        for i in range(width))
    rhs = _q_weighted_oracle(n, width)
    return VerificationReport("q-digital", {"n": n}, lhs == rhs, lhs=lhs, rhs=rhs)


def _staircase_product(n_levels: int) -> Polynomial:
    # (x + y)(x + qy) ... (x + q^(N-1) y)
    return poly_prod(_X + Polynomial.monomial({"q": i, "y": 1})
                     for i in range(n_levels))


def verify_special_case(n_levels: int) -> VerificationReport:
    """The all-ones instance n = 2^N - 1: the staircase product against the
    q-weighted dominated sum over all m <= n."""
    _require_positive(n_levels)
    n = (1 << n_levels) - 1
    lhs = _staircase_product(n_levels)
    rhs = _q_weighted_oracle(n, n_levels)
    return VerificationReport("special-case", {"N": n_levels}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


def verify_rothe(n_levels: int) -> VerificationReport:
    """The staircase product against its Gaussian-binomial expansion."""
    _require_positive(n_levels)
    lhs = _staircase_product(n_levels)
    rhs = rothe_rhs(n_levels)
    return VerificationReport("rothe", {"N": n_levels}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


def verify_q_binomial_formula(n_levels: int, k: int) -> VerificationReport:
    """q^(k(k-1)/2) * qbinom(N,k) against the brute-force digit filter:
    sum of q^z(n-m) over m <= 2^N - 1 with s(m) = k."""
    _require_positive(n_levels)
    if k < 0 or k > n_levels:
        raise OutOfRangeError(f"k = {k} outside [0, {n_levels}]")
    n = (1 << n_levels) - 1
    lhs = Polynomial.monomial({"q": k * (k - 1) // 2}) * q_binomial_product(n_levels, k)
    rhs = Polynomial.zero()
    for m in range(n + 1):
        if digits.sum_of_digits(m, 2) == k:
            rhs = rhs + Polynomial.monomial(
                {"q": digits.z_weight(n - m, n, 2, n_levels)})
    return VerificationReport("q-binomial-formula", {"N": n_levels, "k": k},
                              lhs == rhs, lhs=lhs, rhs=rhs)


def identity_sum_q(n_levels: int) -> VerificationReport:
    """Setting x = y = 1: the sum of q^z(m) over all m <= 2^N - 1 equals
    2(1+q)(1+q^2)...(1+q^(N-1))."""
    _require_positive(n_levels)
    n = (1 << n_levels) - 1
    lhs = oracle_carry_free_sum(n, 2, lambda m, c: Polynomial.monomial(
        {"q": digits.z_weight(m, n, 2, n_levels)}))
    rhs = 2 * poly_prod(1 + Polynomial.monomial({"q": j})
                        for j in range(1, n_levels))
    return VerificationReport("sum-q", {"N": n_levels}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


def identity_deriv_x(n_levels: int) -> VerificationReport:
    """The derivative-in-x identity, cleared of denominators.

    Raw form: sum_m s(m) q^z(m) = 2(1+q)...(1+q^(N-1)) * sum_j 1/(1+q^j),
    with j running over 0..N-1.  Multiplying both sides by the product of
    all factors (1+q^j), j = 0..N-1, gives a polynomial identity, which is
    what gets checked.  The q = 1 integer corollary (the total digit sum of
    0..2^N-1 equals N*2^(N-1)) is checked alongside.
    """
    _require_positive(n_levels)
    n = (1 << n_levels) - 1
    weighted = oracle_carry_free_sum(n, 2, lambda m, c: Polynomial.monomial(
        {"q": digits.z_weight(m, n, 2, n_levels)},
        digits.sum_of_digits(m, 2)))
    factors = [1 + Polynomial.monomial({"q": j}) for j in range(n_levels)]
    lhs = weighted * poly_prod(factors)
    cleared_sum = poly_sum(
        poly_prod(factors[i] for i in range(n_levels) if i != j)
        for j in range(n_levels))
    rhs = 2 * poly_prod(factors[1:]) * cleared_sum
    corollary = sum(digits.sum_of_digits(m, 2) for m in range(n + 1))
    corollary_ok = corollary == n_levels * (1 << (n_levels - 1))
    detail = None if corollary_ok else (
        f"digit-sum corollary failed: {corollary} != N*2^(N-1)")
    return VerificationReport("deriv-x", {"N": n_levels},
                              lhs == rhs and corollary_ok,
                              lhs=lhs, rhs=rhs, detail=detail)


def verify_digit_sum_corollary(n_levels: int) -> VerificationReport:
    """Total binary digit sum over 0..2^N-1 equals N * 2^(N-1)."""
    _require_positive(n_levels)
    total = sum(digits.sum_of_digits(m, 2) for m in range(1 << n_levels))
    expected = n_levels * (1 << (n_levels - 1))
    return VerificationReport("digit-sum-corollary", {"N": n_levels},
                              total == expected,
                              lhs=Polynomial.constant(total),
                              rhs=Polynomial.constant(expected))


def identity_deriv_q(n_levels: int) -> VerificationReport:
    """Derivative in q at q = 1: the z-weighted dominated sum of
    x^s(m) * y^s(n-m) equals C(N,2) * y * (x+y)^(N-1)."""
    _require_positive(n_levels)
    n = (1 << n_levels) - 1
    lhs = oracle_carry_free_sum(n, 2, lambda m, c: Polynomial.monomial(
        {"x": digits.sum_of_digits(m, 2), "y": digits.sum_of_digits(c, 2)},
        digits.z_weight(m, n, 2, n_levels)))
    rhs = math.comb(n_levels, 2) * _Y * (_X + _Y) ** (n_levels - 1)
    return VerificationReport("deriv-q", {"N": n_levels}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


def verify_pq_analog(n_levels: int) -> VerificationReport:
    """The two-weight refinement over n = 2^N - 1: the skewed product
    (p^(N-1)x + y)(p^(N-2)x + qy)...(x + q^(N-1)y) against the dominated
    sum weighted by p^w(m) * q^z(m)."""
    _require_positive(n_levels)
    n = (1 << n_levels) - 1
    lhs = poly_prod(
        Polynomial.monomial({"p": n_levels - 1 - i, "x": 1})
        + Polynomial.monomial({"q": i, "y": 1})
        for i in range(n_levels))
    rhs = oracle_carry_free_sum(n, 2, lambda m, c: Polynomial.monomial({
        "p": digits.w_weight(m, n, n_levels),
        "q": digits.z_weight(m, n, 2, n_levels),
        "x": digits.sum_of_digits(m, 2),
        "y": digits.sum_of_digits(c, 2),
    }))
    return VerificationReport("pq-analog", {"N": n_levels}, lhs == rhs,
                              lhs=lhs, rhs=rhs)


# -- multivariable identities -------------------------------------------------

def _symbolic_guard(n: int, b: int) -> tuple[int, tuple[int, ...]]:
    width = digits.minimal_width(n, b)
    if width > MAX_INDEXED_WIDTH:
        raise TooLargeForSymbolicError(
            f"width {width} exceeds the indexed-variable alphabet")
    count = digits.dominated_count(n, b)
    if count > MAX_SYMBOLIC_SUMMANDS:
        raise TooLargeForSymbolicError(
            f"{count} summands exceed the symbolic guard {MAX_SYMBOLIC_SUMMANDS}")
    return width, digits.digit_expansion(n, b, width).digits


def verify_multivariable(b: int, n: int, mode: str = "symbolic",
                         seed: int | None = None,
                         points: int = DEFAULT_EVAL_POINTS) -> VerificationReport:
    """Fully multivariable instance in the slots x_i, y_i, r_i.

    Symbolic mode compares canonical forms in all 3N variables and is
    guarded by the dominated-set size.  random_eval mode never builds the
    sides; it compares exact rational values at seeded random points
    (numerators and denominators uniform in [1, 10^6]) and is screening
    only, not proof.
    """
    _require_non_negative(n)
    if mode == "symbolic":
        width, expansion = _symbolic_guard(n, b)
        xs = [Polynomial.variable(f"x{i}") for i in range(width)]
        ys = [Polynomial.variable(f"y{i}") for i in range(width)]
        rs = [Polynomial.variable(f"r{i}") for i in range(width)]
        lhs = poly_prod(gen_binomial(xs[i] + ys[i], rs[i], expansion[i])
                        for i in range(width))

        def term(m: int, c: int) -> Polynomial:
            md = digits.digit_expansion(m, b, width).digits
            factors = [gen_binomial(xs[i], rs[i], md[i]) for i in range(width)]
            factors += [gen_binomial(ys[i], rs[i], expansion[i] - md[i])
                        for i in range(width)]
            return poly_prod(factors)

        rhs = oracle_carry_free_sum(n, b, term)
        return VerificationReport("multivariable", {"b": b, "n": n},
                                  lhs == rhs, lhs=lhs, rhs=rhs)

    if mode != "random_eval":
        raise ValueError(f"unknown mode {mode!r}")
    if points < 1:
        raise ValueError("random_eval needs at least one point")
    if seed is None:
        seed = random.SystemRandom().randrange(1 << 32)
    width = digits.minimal_width(n, b)
    expansion = digits.digit_expansion(n, b, width).digits
    rng = random.Random(seed)
    passed = True
    detail = None
    for point in range(points):
        def draw() -> list[Fraction]:
            return [Fraction(rng.randint(1, _RANDOM_BOUND),
                             rng.randint(1, _RANDOM_BOUND))
                    for _ in range(width)]
        xs_v, ys_v, rs_v = draw(), draw(), draw()
        lhs_value = Fraction(1)
        for i in range(width):
            lhs_value *= gen_binomial_value(xs_v[i] + ys_v[i], rs_v[i], expansion[i])
        # cache the handful of distinct per-digit factor values
        x_cache = [[gen_binomial_value(xs_v[i], rs_v[i], d)
                    for d in range(expansion[i] + 1)] for i in range(width)]
        y_cache = [[gen_binomial_value(ys_v[i], rs_v[i], d)
                    for d in range(expansion[i] + 1)] for i in range(width)]
        rhs_value = Fraction(0)
        for m in digits.enumerate_dominated(n, b):
            product = Fraction(1)
            rest = m
            for i in range(width):
                rest, d = divmod(rest, b)
                product *= x_cache[i][d] * y_cache[i][expansion[i] - d]
            rhs_value += product
        if lhs_value != rhs_value:
            passed = False
            detail = (f"mismatch at point {point}: "
                      f"lhs={lhs_value}, rhs={rhs_value}")
            break
    return VerificationReport("multivariable", {"b": b, "n": n}, passed,
                              mode="random_eval", eval_points=points,
                              seed=seed, detail=detail)


def verify_three_parameter(b: int, n: int) -> VerificationReport:
    """Three-parameter instance: slots x_i = p^i*x, y_i = q^i*y, r_i = r,
    compared symbolically in the five variables p, q, x, y, r."""
    _require_non_negative(n)
    width, expansion = _symbolic_guard(n, b)
    r = Polynomial.variable("r")
    px = [Polynomial.monomial({"p": i, "x": 1}) for i in range(width)]
    qy = [Polynomial.monomial({"q": i, "y": 1}) for i in range(width)]
    lhs = poly_prod(gen_binomial(px[i] + qy[i], r, expansion[i])
                    for i in range(width))

    def term(m: int, c: int) -> Polynomial:
        md = digits.digit_expansion(m, b, width).digits
        factors = [gen_binomial(px[i], r, md[i]) for i in range(width)]
        factors += [gen_binomial(qy[i], r, expansion[i] - md[i])
                    for i in range(width)]
        return poly_prod(factors)

    rhs = oracle_carry_free_sum(n, b, term)
    return VerificationReport("three-parameter", {"b": b, "n": n},
                              lhs == rhs, lhs=lhs, rhs=rhs)
