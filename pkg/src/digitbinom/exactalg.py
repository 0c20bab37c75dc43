"""Exact rational and sparse multivariate polynomial arithmetic.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``).
Integral coefficients are stored as plain ``int`` so the common all-integer
paths avoid Fraction overhead; the two forms compare and hash identically,
so canonical form is unaffected.

A monomial is a tuple of ``(variable, exponent)`` pairs with positive
exponents, sorted by the canonical variable order.  A polynomial is a
mapping from monomials to nonzero coefficients.  Two polynomials are equal
exactly when the mappings coincide, so equality is structural, and the
rendered text (terms in canonical order, coefficients as ``num/den`` with
``/1`` suppressed) is a stable serialization: ``1 + q + q^2``.

Variables come from a closed alphabet: the bare names p, q, r, x, y plus
the indexed families r0..r31, x0..x31, y0..y31.  The canonical order is by
base letter, bare name before indexed names, indices in numeric order.
The canonical term order is by total degree, then earlier variables with
higher exponents first.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Union

from .errors import InexactDivisionError, UnboundVariableError

Rational = Fraction
Coeff = Union[int, Fraction]
Monomial = tuple  # tuple[tuple[str, int], ...]

MAX_VARIABLE_INDEX = 31
_INDEXED_LETTERS = ("r", "x", "y")
_VARIABLE_RE = re.compile(r"\A([pqrxy])(0|[1-9][0-9]?)?\Z")


def _build_variable_table() -> dict[str, tuple[int, int]]:
    letters = "pqrxy"
    table = {}
    for letter in letters:
        table[letter] = (letters.index(letter), -1)
    for letter in _INDEXED_LETTERS:
        for i in range(MAX_VARIABLE_INDEX + 1):
            table[f"{letter}{i}"] = (letters.index(letter), i)
    return table


_VARIABLE_KEYS = _build_variable_table()


def variable_key(name: str) -> tuple[int, int]:
    """Sort key of a variable name; raises ValueError for names outside
    the closed alphabet (p, q, r, x, y, r0..r31, x0..x31, y0..y31)."""
    try:
        return _VARIABLE_KEYS[name]
    except KeyError:
        raise ValueError(f"invalid variable name {name!r}") from None


def is_variable_name(name: str) -> bool:
    return name in _VARIABLE_KEYS


def _norm_coeff(c: Coeff) -> Coeff:
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _mul_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif _VARIABLE_KEYS[v1] < _VARIABLE_KEYS[v2]:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _term_sort_key(monomial: Monomial) -> tuple:
    # total degree first; ties broken so that earlier variables with
    # higher exponents come first (1 < q < q^2 < q*x < x^2 < x*y < y^2)
    return (
        sum(e for _, e in monomial),
        tuple((_VARIABLE_KEYS[v], -e) for v, e in monomial),
    )


class Polynomial:
    """Sparse multivariate polynomial over the rationals, in canonical form.

    Instances are immutable by convention: no public method mutates the
    term mapping, so values may be shared, hashed and cached freely.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None):
        # terms must already be canonical (sorted-tuple monomials, nonzero
        # normalized coefficients); use the classmethods to build values
        self._terms = terms if terms is not None else {}
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return _ZERO

    @classmethod
    def one(cls) -> "Polynomial":
        return _ONE

    @classmethod
    def constant(cls, value: Coeff) -> "Polynomial":
        if not isinstance(value, (int, Fraction)):
            raise TypeError("coefficients must be int or Fraction; no floats")
        value = _norm_coeff(value)
        if value == 0:
            return _ZERO
        return cls({(): value})

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        variable_key(name)
        return cls({((name, 1),): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff: Coeff = 1) -> "Polynomial":
        """Build ``coeff * prod(var^exp)``; zero exponents are dropped."""
        coeff = _norm_coeff(coeff)
        if coeff == 0:
            return _ZERO
        pairs = []
        for name, exp in exponents.items():
            variable_key(name)
            if exp < 0:
                raise ValueError(f"negative exponent {exp} for {name!r}")
            if exp > 0:
                pairs.append((name, exp))
        pairs.sort(key=lambda p: _VARIABLE_KEYS[p[0]])
        return cls({tuple(pairs): coeff})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial, as a Fraction."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and () in self._terms:
            return Fraction(self._terms[()])
        raise ValueError("polynomial is not constant")

    def term_count(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention."""
        if not self._terms:
            return 0
        return max(sum(e for _, e in m) for m in self._terms)

    def variables(self) -> tuple[str, ...]:
        """Variables occurring with nonzero exponent, canonically sorted."""
        seen = {v for m in self._terms for v, _ in m}
        return tuple(sorted(seen, key=variable_key))

    def terms(self) -> Iterator[tuple[Monomial, Coeff]]:
        """Yield (monomial, coefficient) pairs in canonical term order."""
        for m in sorted(self._terms, key=_term_sort_key):
            yield m, self._terms[m]

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        """Coefficient of the given monomial (0 if absent)."""
        key = tuple(
            sorted(((v, e) for v, e in exponents.items() if e > 0),
                   key=lambda p: _VARIABLE_KEYS[p[0]])
        )
        return Fraction(self._terms.get(key, 0))

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return Polynomial.constant(value)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for m, c in b.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm_coeff(s)
            else:
                out.pop(m, None)
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _ZERO
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _mul_monomials(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        for m, c in out.items():
            out[m] = _norm_coeff(c)
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a non-negative integer")
        result = _ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                # keep hash(constant poly) == hash(coefficient), matching __eq__
                self._hash = hash(self._terms.get((), 0))
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- calculus and specialization ----------------------------------------

    def derivative(self, name: str) -> "Polynomial":
        """Formal partial derivative with respect to one variable."""
        variable_key(name)
        out: dict = {}
        for m, c in self._terms.items():
            for i, (v, e) in enumerate(m):
                if v == name:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((v, e - 1),) + m[i + 1:]
                    out[nm] = _norm_coeff(out.get(nm, 0) + c * e)
                    break
        return Polynomial({m: c for m, c in out.items() if c})

    def substitute(self, bindings: Mapping[str, "Polynomial | Coeff"]) -> "Polynomial":
        """Simultaneous substitution of polynomials (or constants) for
        variables, fully expanded to canonical form."""
        coerced = {}
        for name, value in bindings.items():
            variable_key(name)
            value = self._coerce(value)
            if value is NotImplemented:
                raise TypeError(f"cannot substitute {bindings[name]!r} for {name!r}")
            coerced[name] = value
        result = _ZERO
        power_cache: dict[tuple[str, int], Polynomial] = {}
        for m, c in self._terms.items():
            term = Polynomial.constant(c)
            for v, e in m:
                if v in coerced:
                    key = (v, e)
                    factor = power_cache.get(key)
                    if factor is None:
                        factor = coerced[v] ** e
                        power_cache[key] = factor
                else:
                    factor = Polynomial({((v, e),): 1})
                term = term * factor
            result = result + term
        return result

    def eval_rational(self, bindings: Mapping[str, Coeff]) -> Fraction:
        """Exact value at a rational point; bindings must cover every
        variable of the polynomial."""
        total = Fraction(0)
        for m, c in self._terms.items():
            value = c
            for v, e in m:
                try:
                    point = bindings[v]
                except KeyError:
                    raise UnboundVariableError(f"no binding for variable {v!r}") from None
                value = value * point ** e
            total += value
        return Fraction(total)

    def divide_exact(self, divisor: "Polynomial | Coeff") -> "Polynomial":
        """Exact division by a nonzero monomial (single-term polynomial).

        Raises InexactDivisionError when any dividend term is not divisible.
        """
        divisor = self._coerce(divisor)
        if divisor is NotImplemented:
            raise TypeError("divisor must be a polynomial or rational")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.term_count() != 1:
            raise ValueError("divisor must be a monomial (single term)")
        ((dm, dc),) = divisor._terms.items()
        dexp = dict(dm)
        out: dict = {}
        for m, c in self._terms.items():
            exps = dict(m)
            for v, e in dexp.items():
                have = exps.get(v, 0)
                if have < e:
                    raise InexactDivisionError(
                        f"term {_render_term(m, c)} is not divisible by {divisor}"
                    )
                if have == e:
                    del exps[v]
                else:
                    exps[v] = have - e
            nm = tuple(sorted(exps.items(), key=lambda p: _VARIABLE_KEYS[p[0]]))
            q = c / dc if isinstance(c, Fraction) or isinstance(dc, Fraction) else Fraction(c, dc)
            out[nm] = _norm_coeff(q)
        return Polynomial(out)

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: terms in canonical order, coefficients as
        ``num/den`` with ``/1`` suppressed, e.g. ``1 + q + q^2``."""
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.terms():
            negative = c < 0
            body = _render_term(m, -c if negative else c)
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"

    def __reduce__(self):
        return (_unpickle_polynomial, (dict(self._terms),))


def _unpickle_polynomial(terms: dict) -> Polynomial:
    return Polynomial(terms)


_ZERO = Polynomial({})
_ONE = Polynomial({(): 1})


def _render_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def _render_term(m: Monomial, c: Coeff) -> str:
    mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
    if not mono:
        return _render_coeff(c)
    if c == 1:
        return mono
    return f"{_render_coeff(c)}*{mono}"


# -- parsing -------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[pqrxy][0-9]{0,2})|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ValueError(f"cannot parse polynomial at ...{text[pos:pos + 20]!r}")
        if match.group("num") is not None:
            tokens.append(("num", int(match.group("num"))))
        elif match.group("name") is not None:
            name = match.group("name")
            if not is_variable_name(name):
                raise ValueError(f"invalid variable name {name!r}")
            tokens.append(("name", name))
        else:
            tokens.append(("op", match.group("op")))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        token = self.peek()
        self.pos += 1
        return token

    def expect_op(self, op: str):
        kind, value = self.take()
        if kind != "op" or value != op:
            raise ValueError(f"expected {op!r} while parsing polynomial")

    def parse_expr(self) -> Polynomial:
        kind, value = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.take()
            negate = value == "-"
        result = self.parse_term()
        if negate:
            result = -result
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                term = self.parse_term()
                result = result - term if value == "-" else result + term
            else:
                return result

    def parse_term(self) -> Polynomial:
        result = self.parse_factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.parse_factor()
            else:
                return result

    def parse_factor(self) -> Polynomial:
        base = self.parse_atom()
        kind, value = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, exp = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base ** exp
        return base

    def parse_atom(self) -> Polynomial:
        kind, value = self.take()
        if kind == "num":
            nkind, nvalue = self.peek()
            if nkind == "op" and nvalue == "/":
                self.take()
                dkind, denom = self.take()
                if dkind != "num" or denom == 0:
                    raise ValueError("malformed rational literal")
                return Polynomial.constant(Fraction(value, denom))
            return Polynomial.constant(value)
        if kind == "name":
            return Polynomial.variable(value)
        if kind == "op" and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "op" and value == "-":
            return -self.parse_factor()
        raise ValueError("unexpected token while parsing polynomial")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the canonical rendering grammar (plus parentheses and unary
    minus) back into a polynomial.  Rational literals are written num/den;
    division of variables is not part of the grammar."""
    parser = _Parser(_tokenize(text))
    result = parser.parse_expr()
    if parser.pos != len(parser.tokens):
        raise ValueError("trailing input after polynomial")
    return result


# -- small conveniences used across the package ---------------------------

def as_polynomial(value) -> Polynomial:
    """Coerce an int, Fraction or Polynomial to a Polynomial."""
    poly = Polynomial._coerce(value)
    if poly is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return poly


def variables(*names: str) -> tuple[Polynomial, ...]:
    """Polynomial handles for several variables at once."""
    return tuple(Polynomial.variable(n) for n in names)


def poly_sum(items) -> Polynomial:
    total = _ZERO
    for item in items:
        total = total + item
    return total


def poly_prod(items) -> Polynomial:
    total = _ONE
    for item in items:
        total = total * item
    return total
