"""Generalized binomials, both q-binomial routes, and the convolution check."""

import math
from fractions import Fraction

import pytest

from digitbinom import binomlib
from digitbinom.errors import OutOfRangeError
from digitbinom.exactalg import Polynomial, poly_prod, variables

X, Y, Q, R = variables("x", "y", "q", "r")


def _ordinary_binomial_poly(top: Polynomial, d: int) -> Polynomial:
    # independent oracle: falling product top(top-1)...(top-d+1)/d!
    product = Polynomial.one()
    for j in range(d):
        product = product * (top - j)
    return product * Fraction(1, math.factorial(d))


def test_gen_binomial_base_cases():
    assert binomlib.gen_binomial(X, R, 0) == Polynomial.one()
    assert binomlib.gen_binomial(X, R, 1) == X
    assert binomlib.gen_binomial(X, R, 2) == Fraction(1, 2) * (X**2 + X * R)
    with pytest.raises(OutOfRangeError):
        binomlib.gen_binomial(X, R, -1)


def test_gen_binomial_unit_step_is_ordinary_binomial():
    for d in range(11):
        expected = _ordinary_binomial_poly(X + (d - 1), d)
        assert binomlib.gen_binomial(X, 1, d) == expected


def test_gen_binomial_scaling_relation():
    # substituting x -> r*u turns the step-r product into r^d times the
    # unit-step product in u (with u spelled via the y slot)
    u = Y
    for d in range(9):
        left = binomlib.gen_binomial(X, R, d).substitute({"x": R * u})
        right = R**d * binomlib.gen_binomial(u, 1, d)
        assert left == right


def test_gen_binomial_accepts_polynomial_slots():
    slot = Polynomial.monomial({"p": 2, "x": 1})  # p^2 * x
    poly = binomlib.gen_binomial(slot + Q * Y, R, 1)
    assert poly == slot + Q * Y


def test_gen_binomial_value_matches_symbolic():
    for d in range(7):
        symbolic = binomlib.gen_binomial(X, R, d)
        for xv, rv in ((Fraction(1, 2), Fraction(2, 3)), (3, 1), (0, 5)):
            expected = symbolic.eval_rational({"x": xv, "r": rv})
            assert binomlib.gen_binomial_value(Fraction(xv), Fraction(rv), d) == expected


def test_q_binomial_product_golden_row():
    row = [binomlib.q_binomial_product(3, k).render() for k in range(4)]
    assert row == ["1", "1 + q + q^2", "1 + q + q^2", "1"]


def test_q_binomial_product_range_errors():
    with pytest.raises(OutOfRangeError):
        binomlib.q_binomial_product(3, -1)
    with pytest.raises(OutOfRangeError):
        binomlib.q_binomial_product(3, 4)
    with pytest.raises(OutOfRangeError):
        binomlib.q_binomial_product(-1, 0)


def test_q_binomial_product_symmetry_and_q1_value():
    for n in range(13):
        for k in range(n + 1):
            poly = binomlib.q_binomial_product(n, k)
            assert poly == binomlib.q_binomial_product(n, n - k)
            assert poly.substitute({"q": 1}) == math.comb(n, k)
            assert all(isinstance(c, int) and c > 0 for _, c in poly.terms())


def test_q_binomial_recurrence_matches_quotient_form():
    # cross-multiplied quotient form:
    #   B(n,k) * (1-q)(1-q^2)...(1-q^k) = (1-q^(n-k+1))...(1-q^n)
    for n in range(9):
        for k in range(n + 1):
            denominator = poly_prod(1 - Polynomial.monomial({"q": j})
                                    for j in range(1, k + 1))
            numerator = poly_prod(1 - Polynomial.monomial({"q": j})
                                  for j in range(n - k + 1, n + 1))
            assert binomlib.q_binomial_product(n, k) * denominator == numerator


def test_q_binomial_digital_examples():
    assert binomlib.q_binomial_digital(3, 2) == 1 + Q + Q**2
    assert binomlib.q_binomial_digital(4, 2) == 1 + Q + 2 * Q**2 + Q**3 + Q**4
    for n in range(7):
        assert binomlib.q_binomial_digital(n, 0) == Polynomial.one()


def test_q_binomial_digital_equals_product_route():
    for n in range(8):
        for k in range(n + 1):
            assert (binomlib.q_binomial_digital(n, k)
                    == binomlib.q_binomial_product(n, k))


def test_rothe_rhs_small():
    assert binomlib.rothe_rhs(0) == Polynomial.one()
    assert binomlib.rothe_rhs(1) == X + Y
    assert binomlib.rothe_rhs(2) == X**2 + (1 + Q) * X * Y + Q * Y**2


def test_chu_vandermonde_trivial_and_small():
    report = binomlib.chu_vandermonde_check(4, 4)
    assert report.passed and report.lhs == Polynomial.one()
    report = binomlib.chu_vandermonde_check(5, 4)
    assert report.passed and report.lhs == X + Y
    report = binomlib.chu_vandermonde_check(5, 1)
    assert report.passed
    assert report.identity == "chu-vandermonde"
    assert report.params == {"p_idx": 5, "q_idx": 1}


def test_chu_vandermonde_errors():
    with pytest.raises(OutOfRangeError):
        binomlib.chu_vandermonde_check(2, 3)
    with pytest.raises(OutOfRangeError):
        binomlib.chu_vandermonde_check(2, -1)
