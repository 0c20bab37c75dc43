"""Base-b digit expansions, digital dominance, and weighted digit statistics.

Digit vectors are little-endian: ``digits[k]`` is the coefficient of b^k.
Width is always an explicit choice; widening pads with zero digits and
never changes the represented value.

The reverse weight computed by :func:`w_weight` is defined (binary only) by
the closed form ``(width-1)*s(m) - z(n-m)``, which equals the sum of
``width-1-k`` over the positions k where m has digit 1.  An alternative
reading weights the positions where the digits of m and n *agree*; the two
coincide exactly when every digit of n is 1 (n = 2^width - 1), which is the
only case the p,q-weighted identity uses.  We implement the closed form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidBaseError, NotDominatedError, WidthTooSmallError


def _check_base(b: int) -> None:
    if b < 2:
        raise InvalidBaseError(f"base must be >= 2, got {b}")


def _check_non_negative(n: int, name: str = "n") -> None:
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")


def _digits_lsb(n: int, b: int) -> list[int]:
    # minimal-width little-endian digits; [] for n = 0
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return out


@dataclass(frozen=True)
class DigitVector:
    """Fixed-width base-b expansion of a non-negative integer."""

    base: int
    width: int
    digits: tuple[int, ...]

    def __post_init__(self):
        _check_base(self.base)
        if self.width < 0:
            raise ValueError(f"width must be non-negative, got {self.width}")
        if len(self.digits) != self.width:
            raise ValueError("digit count does not match width")
        if any(d < 0 or d >= self.base for d in self.digits):
            raise ValueError(f"digits must lie in [0, {self.base - 1}]")

    def value(self) -> int:
        total = 0
        for d in reversed(self.digits):
            total = total * self.base + d
        return total

    def widened(self, width: int) -> "DigitVector":
        """Same value at a larger width (zero-padded)."""
        if width < self.width:
            raise WidthTooSmallError(
                f"cannot shrink width {self.width} to {width}")
        pad = (0,) * (width - self.width)
        return DigitVector(self.base, width, self.digits + pad)


def minimal_width(n: int, b: int) -> int:
    """Smallest width whose expansion holds n (0 has width 0)."""
    _check_base(b)
    _check_non_negative(n)
    return len(_digits_lsb(n, b))


def digit_expansion(n: int, b: int, width: int) -> DigitVector:
    """The unique base-b expansion of n padded to exactly ``width`` digits."""
    _check_base(b)
    _check_non_negative(n)
    if width < 0:
        raise ValueError(f"width must be non-negative, got {width}")
    digits = _digits_lsb(n, b)
    if len(digits) > width:
        raise WidthTooSmallError(f"{n} does not fit in {width} base-{b} digits")
    digits.extend([0] * (width - len(digits)))
    return DigitVector(b, width, tuple(digits))


def sum_of_digits(n: int, b: int = 2) -> int:
    """Base-b digit sum of n."""
    _check_base(b)
    _check_non_negative(n)
    total = 0
    while n:
        n, d = divmod(n, b)
        total += d
    return total


def dominates(m: int, n: int, b: int = 2) -> bool:
    """True iff every base-b digit of m is <= the matching digit of n."""
    _check_base(b)
    _check_non_negative(m, "m")
    _check_non_negative(n)
    while m or n:
        if m % b > n % b:
            return False
        m //= b
        n //= b
    return True


def is_carry_free(j: int, k: int, b: int = 2) -> bool:
    """True iff adding j and k in base b produces no carry anywhere."""
    _check_base(b)
    _check_non_negative(j, "j")
    _check_non_negative(k, "k")
    while j or k:
        if j % b + k % b >= b:
            return False
        j //= b
        k //= b
    return True


def z_weight(m: int, n: int, b: int = 2, width: int | None = None) -> int:
    """Sum of the positions k (0-indexed) where the width-digit base-b
    expansions of m and n differ; defined only for digitally dominated m.

    Any width at least the minimal width of n yields the same value, since
    padded positions agree; width defaults to the minimal width of n.
    """
    _check_base(b)
    _check_non_negative(m, "m")
    _check_non_negative(n)
    if width is None:
        width = minimal_width(n, b)
    elif n >= b ** width:
        raise WidthTooSmallError(f"{n} does not fit in {width} base-{b} digits")
    if not dominates(m, n, b):
        raise NotDominatedError(f"{m} is not digitally <= {n} in base {b}")
    total = 0
    for k in range(width):
        if m % b != n % b:
            total += k
        m //= b
        n //= b
    return total


def w_weight(m: int, n: int, width: int | None = None) -> int:
    """Reverse-weighted digit statistic (width-1)*s(m) - z(n-m), binary only.

    Equals the sum of width-1-k over positions k where m has digit 1.
    """
    _check_non_negative(m, "m")
    _check_non_negative(n)
    if width is None:
        width = minimal_width(n, 2)
    elif n >= 2 ** width:
        raise WidthTooSmallError(f"{n} does not fit in {width} binary digits")
    if not dominates(m, n, 2):
        raise NotDominatedError(f"{m} is not digitally <= {n} in base 2")
    return (width - 1) * sum_of_digits(m, 2) - z_weight(n - m, n, 2, width)


def dominated_count(n: int, b: int = 2) -> int:
    """Number of m with m digitally <= n: the product of (digit + 1)."""
    _check_base(b)
    _check_non_negative(n)
    count = 1
    for d in _digits_lsb(n, b):
        count *= d + 1
    return count


def enumerate_dominated(n: int, b: int = 2) -> Iterator[int]:
    """Yield every m digitally <= n exactly once, in increasing order.

    Runs as a mixed-radix odometer over the digit ranges [0, n_k], so the
    cost is proportional to the output size, never to n.
    """
    _check_base(b)
    _check_non_negative(n)
    limits = _digits_lsb(n, b)
    if not limits:
        yield 0
        return
    weights = [b ** k for k in range(len(limits))]
    # most-significant position first so the odometer counts upward
    ranges = [range(d + 1) for d in reversed(limits)]
    rev_weights = list(reversed(weights))
    for combo in itertools.product(*ranges):
        yield sum(w * d for w, d in zip(rev_weights, combo))
