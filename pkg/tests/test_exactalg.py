"""Canonical form, arithmetic, and rendering of the polynomial engine."""

import random
from fractions import Fraction

import pytest

from digitbinom.errors import InexactDivisionError, UnboundVariableError
from digitbinom.exactalg import (
    Polynomial,
    parse_polynomial,
    poly_prod,
    poly_sum,
    variable_key,
    variables,
)

X, Y, Q, P, R = variables("x", "y", "q", "p", "r")


def test_variable_order():
    names = ["y31", "x", "q", "r0", "p", "x0", "r", "y", "x31", "r31", "x1"]
    ordered = sorted(names, key=variable_key)
    assert ordered == ["p", "q", "r", "r0", "r31", "x", "x0", "x1", "x31", "y", "y31"]


def test_invalid_variable_names_rejected():
    for bad in ("z", "p0", "q3", "x32", "x001", "xx", ""):
        with pytest.raises(ValueError):
            Polynomial.variable(bad)


def test_additive_identity_and_cancellation():
    assert (X + Y) + Polynomial.zero() == X + Y
    assert (X + Y) + (X - Y) == 2 * X
    assert (1 + Q) + (Q + Q**2) == 1 + 2 * Q + Q**2


def test_product_examples():
    assert (X + Y) * (X + Q * Y) == X**2 + X * Y + Q * X * Y + Q * Y**2
    assert P * Polynomial.zero() == Polynomial.zero()
    assert (1 + Q) * (1 + Q**2) == 1 + Q + Q**2 + Q**3


def test_zero_polynomial_is_empty_mapping():
    diff = (X + Y) - (Y + X)
    assert diff.is_zero()
    assert diff == Polynomial.zero()
    assert diff.render() == "0"


def test_canonical_uniqueness():
    a = (X + Y) ** 3
    b = X**3 + 3 * X**2 * Y + 3 * X * Y**2 + Y**3
    assert a == b
    assert (a - b).is_zero()
    assert hash(a) == hash(b)


def test_rational_coefficients_stay_exact():
    half = Fraction(1, 2)
    p = half * X + half * X
    assert p == X
    third = Fraction(1, 3) * X
    assert (third + third + third) == X
    assert (half * X).coefficient({"x": 1}) == half


def test_derivative():
    assert (1 + Q + Q**2).derivative("q") == 1 + 2 * Q
    assert (Y**3).derivative("x").is_zero()
    assert (X * Q**2 * Y).derivative("q") == 2 * X * Q * Y


def test_substitute():
    assert (X + Q * Y).substitute({"x": 1, "y": 1}) == 1 + Q
    assert (X + Q * Y).substitute({"q": P * Q}) == X + P * Q * Y
    f = 1 + Q + Q**2
    staircase = Polynomial.monomial({"q": 3}) * f
    assert staircase.substitute({"q": 1}) == Polynomial.constant(3)


def test_substitute_then_eval_matches_composed_eval():
    rng = random.Random(20240811)
    for _ in range(50):
        poly = _random_polynomial(rng, ("x", "y", "q"), max_terms=6, max_degree=4)
        inner = _random_polynomial(rng, ("p", "r"), max_terms=3, max_degree=2)
        point = {name: Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                 for name in ("x", "y", "p", "r")}
        substituted = poly.substitute({"q": inner})
        direct = poly.eval_rational({**point, "q": inner.eval_rational(point)})
        assert substituted.eval_rational(point) == direct


def test_eval_rational():
    assert (X + Y).eval_rational({"x": Fraction(1, 2), "y": Fraction(1, 3)}) == Fraction(5, 6)
    assert Polynomial.zero().eval_rational({}) == 0
    assert (1 + Q + Q**2).eval_rational({"q": 2}) == 7
    with pytest.raises(UnboundVariableError):
        (X + Y).eval_rational({"x": 1})


def test_divide_exact():
    assert (Q + Q**2 + Q**3).divide_exact(Q) == 1 + Q + Q**2
    f = X**2 + Q * Y
    assert f.divide_exact(Polynomial.one()) == f
    with pytest.raises(InexactDivisionError):
        (1 + Q).divide_exact(Q)
    with pytest.raises(ValueError):
        f.divide_exact(X + Y)  # not a monomial
    with pytest.raises(ZeroDivisionError):
        f.divide_exact(Polynomial.zero())


def test_divide_exact_rational_coefficients():
    assert (3 * X).divide_exact(Polynomial.constant(2)) == Fraction(3, 2) * X
    assert (Fraction(3, 2) * X * Q).divide_exact(Fraction(1, 2) * Q) == 3 * X


def test_power():
    assert (X + Y) ** 0 == Polynomial.one()
    assert (X + Y) ** 1 == X + Y
    assert (X + Y) ** 2 == X**2 + 2 * X * Y + Y**2
    with pytest.raises(ValueError):
        (X + Y) ** -1


def test_render_golden():
    assert (1 + Q + Q**2).render() == "1 + q + q^2"
    assert (Fraction(1, 2) * X).render() == "1/2*x"
    assert (X - Y).render() == "x - y"
    assert (-X).render() == "-x"
    assert (X**2 - 2 * X + 1).render() == "1 - 2*x + x^2"
    assert Polynomial.zero().render() == "0"
    assert ((X + Y) * (X + Q * Y)).render() == "x^2 + x*y + q*x*y + q*y^2"


def test_render_parse_round_trip():
    rng = random.Random(99)
    for _ in range(200):
        poly = _random_polynomial(rng, ("x", "y", "q", "p"), max_terms=8, max_degree=5)
        assert parse_polynomial(poly.render()) == poly


def test_parse_rejects_garbage():
    for bad in ("x +", "1//2", "z + 1", "(x", "x^y", "x^-1"):
        with pytest.raises(ValueError):
            parse_polynomial(bad)


def test_parse_accepts_grouping_and_fractions():
    assert parse_polynomial("(1 + q) * (1 + q^2)") == 1 + Q + Q**2 + Q**3
    assert parse_polynomial("3/2*x0^2*y - 4") == (
        Fraction(3, 2) * Polynomial.monomial({"x0": 2, "y": 1}) - 4)
    assert parse_polynomial("-x + -(y)") == -X - Y


def _random_polynomial(rng, names, max_terms, max_degree):
    total = Polynomial.zero()
    for _ in range(rng.randint(0, max_terms)):
        exps = {}
        for name in names:
            e = rng.randint(0, max_degree)
            if e and sum(exps.values()) + e <= max_degree:
                exps[name] = e
        coeff = Fraction(rng.randint(-12, 12), rng.randint(1, 6))
        total = total + Polynomial.monomial(exps, coeff)
    return total


def test_ring_axioms_randomized():
    rng = random.Random(1234)
    names = ("x", "y", "q", "r")
    for _ in range(1000):
        a = _random_polynomial(rng, names, max_terms=4, max_degree=5)
        b = _random_polynomial(rng, names, max_terms=4, max_degree=5)
        c = _random_polynomial(rng, names, max_terms=4, max_degree=5)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_poly_sum_and_prod_helpers():
    assert poly_sum([X, Y, Q]) == X + Y + Q
    assert poly_sum([]) == Polynomial.zero()
    assert poly_prod([X, Y]) == X * Y
    assert poly_prod([]) == Polynomial.one()


def test_constant_helpers():
    five = Polynomial.constant(5)
    assert five.is_constant()
    assert five.constant_value() == 5
    assert Polynomial.zero().constant_value() == 0
    with pytest.raises(ValueError):
        (X + Y).constant_value()
    with pytest.raises(TypeError):
        Polynomial.constant(0.5)
