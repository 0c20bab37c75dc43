"""Kronecker-structured lower-triangular matrices with digit-product entries.

The level-N matrix over base b has dimension b^N.  Position (j, k) is
structurally present exactly when k is digitally dominated by j; its entry
is the product over digit positions i of gen_binomial(x_i, r_i, d_i), where
d_i are the base-b digits of j - k.  The same matrix arises as the iterated
Kronecker product of single-level b x b blocks, with the highest digit
position as the leftmost factor.

Two storage modes:

* dict mode - every structurally present position maps to its Polynomial
  entry (which may be the zero polynomial under degenerate assignments;
  structural presence is a property of the index pattern, not the value).
* collapsed numeric mode - used when every variable slot is a rational
  constant.  The pattern and values are materialized as flat numpy arrays
  by vectorized Kronecker doubling, so construction cost is proportional
  to the number of structurally present entries.  Unreduced numerator and
  denominator arrays are kept in int64 while safe and fall back to Python
  integers (object dtype) before any overflow could occur.

Guards: dimension b^N <= 2^20 always; dict mode additionally requires the
pattern count (b(b+1)/2)^N <= 2^22, the collapsed mode <= 2^26.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterator, Sequence

import numpy as np

from . import digits
from .binomlib import gen_binomial, gen_binomial_value
from .errors import (
    DimensionTooLargeError,
    IndexOutOfRangeError,
    InvalidBaseError,
    LengthMismatchError,
    ShapeMismatchError,
)
from .exactalg import Polynomial, Rational, as_polynomial, parse_polynomial

MAX_DIMENSION = 1 << 20
MAX_DICT_PATTERN = 1 << 22
MAX_NUMERIC_PATTERN = 1 << 26
MAX_CSV_DIMENSION = 1 << 10

_INT64_GUARD = 1 << 62


@dataclass(frozen=True)
class VariableVectors:
    """The N polynomial slots (x_i) and (r_i) of a level-N matrix."""

    xs: tuple[Polynomial, ...]
    rs: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.rs):
            raise LengthMismatchError(
                f"{len(self.xs)} x-slots vs {len(self.rs)} r-slots")

    def __len__(self) -> int:
        return len(self.xs)

    def __add__(self, other: "VariableVectors") -> "VariableVectors":
        """Pointwise sum of the x-slots; the r-slots must coincide."""
        if not isinstance(other, VariableVectors):
            return NotImplemented
        if len(self) != len(other):
            raise LengthMismatchError("vector lengths differ")
        if self.rs != other.rs:
            raise ValueError("cannot add variable vectors with different r-slots")
        return VariableVectors(
            tuple(a + b for a, b in zip(self.xs, other.xs)), self.rs)

    @classmethod
    def symbolic(cls, n: int, x_letter: str = "x", r_letter: str = "r") -> "VariableVectors":
        """Fully symbolic slots x0..x_{n-1}, r0..r_{n-1} (letters selectable)."""
        xs = tuple(Polynomial.variable(f"{x_letter}{i}") for i in range(n))
        rs = tuple(Polynomial.variable(f"{r_letter}{i}") for i in range(n))
        return cls(xs, rs)

    @classmethod
    def uniform(cls, n: int, x=1, r=1) -> "VariableVectors":
        """Every slot set to the same value (rational or polynomial)."""
        xs = tuple(as_polynomial(x) for _ in range(n))
        rs = tuple(as_polynomial(r) for _ in range(n))
        return cls(xs, rs)


def _pattern_count(b: int, n: int) -> int:
    return (b * (b + 1) // 2) ** n


def _check_build_args(b: int, n: int, slots: int | None, limit: int) -> None:
    if b < 2:
        raise InvalidBaseError(f"base must be >= 2, got {b}")
    if n < 0:
        raise ValueError(f"levels must be non-negative, got {n}")
    if slots is not None and slots != n:
        raise LengthMismatchError(f"expected {n} variable slots, got {slots}")
    if b ** n > MAX_DIMENSION:
        raise DimensionTooLargeError(
            f"dimension {b}^{n} exceeds the guard {MAX_DIMENSION}")
    if _pattern_count(b, n) > limit:
        raise DimensionTooLargeError(
            f"pattern count {_pattern_count(b, n)} exceeds the guard {limit}")


class SierpinskiMatrix:
    """Immutable sparse matrix over the dominated-index pattern.

    Matrices built from variable vectors carry a by-difference table
    (entry at (j, k) depends only on j - k), which multiply and kron
    exploit; the table never changes observable values.
    """

    __slots__ = ("base", "levels", "dimension", "_entries", "_level_values",
                 "_coo", "_by_diff")

    def __init__(self, base, levels, entries=None, level_values=None, coo=None,
                 by_diff=None):
        self.base = base
        self.levels = levels
        self.dimension = base ** levels
        self._entries = entries
        self._level_values = level_values
        self._coo = coo
        self._by_diff = by_diff

    # -- accessors ---------------------------------------------------------

    def is_collapsed(self) -> bool:
        return self._entries is None

    def entry(self, j: int, k: int) -> Polynomial:
        """Entry at row j, column k; zero for structurally absent positions."""
        if not (0 <= j < self.dimension and 0 <= k < self.dimension):
            raise IndexOutOfRangeError(
                f"({j}, {k}) outside a {self.dimension}x{self.dimension} matrix")
        if self._entries is not None:
            return self._entries.get((j, k), Polynomial.zero())
        if k > j or not digits.dominates(k, j, self.base):
            return Polynomial.zero()
        value = Fraction(1)
        diff = j - k
        for level_value in self._level_values:
            diff, d = divmod(diff, self.base)
            value *= level_value[d]
        return Polynomial.constant(value)

    def nnz(self) -> int:
        """Count of structurally present entries: (b(b+1)/2)^levels."""
        if self._entries is not None:
            return len(self._entries)
        return int(self._coo[0].shape[0])

    def pattern(self) -> Iterator[tuple[int, int]]:
        """All structurally present (j, k), sorted by row then column."""
        for j in range(self.dimension):
            for k in digits.enumerate_dominated(j, self.base):
                yield j, k

    def entries_sorted(self) -> Iterator[tuple[int, int, Polynomial]]:
        if self._entries is not None:
            for j, k in sorted(self._entries):
                yield j, k, self._entries[j, k]
        else:
            for j, k in self.pattern():
                yield j, k, self.entry(j, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SierpinskiMatrix):
            return NotImplemented
        if self.base != other.base or self.levels != other.levels:
            return False
        if self._entries is not None and other._entries is not None:
            return self._entries == other._entries
        if (self._level_values is not None and other._level_values is not None
                and self._level_values == other._level_values):
            return True
        if self.nnz() > MAX_DICT_PATTERN:
            raise DimensionTooLargeError("matrices too large for entrywise comparison")
        return all(self.entry(j, k) == other.entry(j, k) for j, k in self.pattern())

    __hash__ = None

    def __repr__(self) -> str:
        mode = "collapsed" if self.is_collapsed() else "dict"
        return (f"SierpinskiMatrix(base={self.base}, levels={self.levels}, "
                f"nnz={self.nnz()}, mode={mode})")

    # -- export ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.nnz() > MAX_DICT_PATTERN:
            raise DimensionTooLargeError(
                f"refusing to serialize {self.nnz()} entries")
        return {
            "base": self.base,
            "levels": self.levels,
            "entries": [[j, k, p.render()] for j, k, p in self.entries_sorted()],
        }

    def write_json(self, fp: IO[str]) -> None:
        json.dump(self.to_json_dict(), fp)
        fp.write("\n")

    def write_csv(self, fp: IO[str]) -> None:
        """Dense CSV; structural zeros render as empty cells."""
        if self.dimension > MAX_CSV_DIMENSION:
            raise DimensionTooLargeError(
                f"dense CSV capped at dimension {MAX_CSV_DIMENSION}")
        writer = csv.writer(fp)
        lookup = {(j, k): p for j, k, p in self.entries_sorted()}
        for j in range(self.dimension):
            row = []
            for k in range(self.dimension):
                p = lookup.get((j, k))
                row.append(p.render() if p is not None else "")
            writer.writerow(row)


def from_json_dict(data: dict) -> SierpinskiMatrix:
    """Rebuild a dict-mode matrix from the JSON export structure."""
    entries = {}
    for j, k, text in data["entries"]:
        entries[(j, k)] = parse_polynomial(text)
    return SierpinskiMatrix(data["base"], data["levels"], entries=entries)


# -- construction ----------------------------------------------------------

def _fill_pattern(b: int, dim: int, by_diff: dict) -> dict:
    # the sharing is safe: polynomials are immutable
    entries = {}
    for j in range(dim):
        for k in digits.enumerate_dominated(j, b):
            entries[(j, k)] = by_diff[j - k]
    return entries


def build_direct(b: int, n: int, vv: VariableVectors) -> SierpinskiMatrix:
    """Build from the literal digit products: the value at (j, k) is the
    product over digit positions i of gen_binomial(x_i, r_i, d_i), where
    d_i are the base-b digits of j - k."""
    _check_build_args(b, n, len(vv), MAX_DICT_PATTERN)
    by_diff = {}
    for diff in range(b ** n):
        rest = diff
        value = Polynomial.one()
        for i in range(n):
            rest, d = divmod(rest, b)
            if d:
                value = value * gen_binomial(vv.xs[i], vv.rs[i], d)
        by_diff[diff] = value
    entries = _fill_pattern(b, b ** n, by_diff)
    return SierpinskiMatrix(b, n, entries=entries, by_diff=by_diff)


def single_level(b: int, x, r) -> SierpinskiMatrix:
    """The b x b block with entry gen_binomial(x, r, j - k) below the diagonal."""
    return build_direct(b, 1, VariableVectors((as_polynomial(x),), (as_polynomial(r),)))


def kron(a: SierpinskiMatrix, b: SierpinskiMatrix) -> SierpinskiMatrix:
    """Kronecker product of two dict-mode matrices over the same base."""
    if a.base != b.base:
        raise ShapeMismatchError("Kronecker factors must share the base")
    if a.is_collapsed() or b.is_collapsed():
        raise ValueError("Kronecker product requires dict-mode matrices")
    levels = a.levels + b.levels
    _check_build_args(a.base, levels, None, MAX_DICT_PATTERN)
    dim_b = b.dimension
    entries = {}
    for (ja, ka), va in a._entries.items():
        for (jb, kb), vb in b._entries.items():
            entries[(ja * dim_b + jb, ka * dim_b + kb)] = va * vb
    by_diff = None
    if a._by_diff is not None and b._by_diff is not None:
        by_diff = {da * dim_b + db: va * vb
                   for da, va in a._by_diff.items()
                   for db, vb in b._by_diff.items()}
    return SierpinskiMatrix(a.base, levels, entries=entries, by_diff=by_diff)


def build_kron(b: int, n: int, vv: VariableVectors) -> SierpinskiMatrix:
    """Build by iterated Kronecker products of single-level blocks.

    The level-l block (variable slots x_l, r_l) is Kroneckered on the left,
    so digit position l of j - k selects its entry.
    """
    _check_build_args(b, n, len(vv), MAX_DICT_PATTERN)
    result = SierpinskiMatrix(b, 0, entries={(0, 0): Polynomial.one()})
    for level in range(n):
        result = kron(single_level(b, vv.xs[level], vv.rs[level]), result)
    return result


def build_numeric(b: int, n: int, xs: Sequence, rs: Sequence) -> SierpinskiMatrix:
    """Collapsed build for constant rational slots.

    Materializes the full pattern (rows, cols) and the entry values as flat
    arrays via vectorized Kronecker doubling; cost and memory scale with the
    pattern count (b(b+1)/2)^n, never with the dense dimension squared.
    """
    _check_build_args(b, n, None, MAX_NUMERIC_PATTERN)
    if len(xs) != n or len(rs) != n:
        raise LengthMismatchError(f"expected {n} constant slots")
    level_values = tuple(
        tuple(gen_binomial_value(Fraction(x), Fraction(r), d) for d in range(b))
        for x, r in zip(xs, rs)
    )

    rows = np.zeros(1, dtype=np.int64)
    cols = np.zeros(1, dtype=np.int64)
    nums = np.ones(1, dtype=np.int64)
    dens = np.ones(1, dtype=np.int64)
    max_num = max_den = 1
    pairs = [(p, q) for p in range(b) for q in range(p + 1)]
    for level in range(n):
        dim = b ** level
        values = level_values[level]
        block = [values[p - q] for p, q in pairs]
        peak_num = max(abs(v.numerator) for v in block)
        peak_den = max(v.denominator for v in block)
        if (max_num * peak_num >= _INT64_GUARD or max_den * peak_den >= _INT64_GUARD):
            if nums.dtype != object:
                # exact fallback: Python integers stay arbitrary precision
                nums = nums.astype(object)
                dens = dens.astype(object)
        max_num *= peak_num
        max_den *= peak_den
        count = rows.shape[0]
        new_rows = np.empty(count * len(pairs), dtype=np.int64)
        new_cols = np.empty(count * len(pairs), dtype=np.int64)
        new_nums = np.empty(count * len(pairs), dtype=nums.dtype)
        new_dens = np.empty(count * len(pairs), dtype=dens.dtype)
        for idx, ((p, q), v) in enumerate(zip(pairs, block)):
            part = slice(idx * count, (idx + 1) * count)
            if p:
                np.add(rows, p * dim, out=new_rows[part])
            else:
                new_rows[part] = rows
            if q:
                np.add(cols, q * dim, out=new_cols[part])
            else:
                new_cols[part] = cols
            if v.numerator == 1:
                new_nums[part] = nums
            else:
                np.multiply(nums, v.numerator, out=new_nums[part])
            if v.denominator == 1:
                new_dens[part] = dens
            else:
                np.multiply(dens, v.denominator, out=new_dens[part])
        rows, cols, nums, dens = new_rows, new_cols, new_nums, new_dens
    return SierpinskiMatrix(b, n, level_values=level_values,
                            coo=(rows, cols, nums, dens))


# -- multiplication ---------------------------------------------------------

def multiply(a: SierpinskiMatrix, b: SierpinskiMatrix) -> SierpinskiMatrix:
    """Exact sparse product of two same-shape dict-mode matrices.

    For each output position (j, k) the contraction runs only over the
    digit interval k <= i <= j (digitwise), enumerated as k + t for t
    dominated by j - k, so the cost is proportional to the number of
    structurally compatible index triples.  When both factors carry
    by-difference tables, the contraction collapses to one digit
    convolution per distinct difference, with the same term count.
    """
    if a.base != b.base or a.levels != b.levels:
        raise ShapeMismatchError(
            f"cannot multiply base {a.base} level {a.levels} "
            f"by base {b.base} level {b.levels}")
    if a.is_collapsed() or b.is_collapsed():
        raise ValueError("multiply requires dict-mode matrices")
    base = a.base
    zero = Polynomial.zero()
    if a._by_diff is not None and b._by_diff is not None:
        left, right = a._by_diff, b._by_diff
        by_diff = {}
        for diff in range(a.dimension):
            total = zero
            for t in digits.enumerate_dominated(diff, base):
                # t dominated by diff: all index arithmetic is digitwise
                total = total + left[diff - t] * right[t]
            by_diff[diff] = total
        entries = _fill_pattern(base, a.dimension, by_diff)
        return SierpinskiMatrix(base, a.levels, entries=entries, by_diff=by_diff)
    left = a._entries
    right = b._entries
    entries = {}
    for j in range(a.dimension):
        for k in digits.enumerate_dominated(j, base):
            total = zero
            for t in digits.enumerate_dominated(j - k, base):
                i = k + t  # digitwise: t dominated by j-k forces no carries
                total = total + left.get((j, i), zero) * right.get((i, k), zero)
            entries[(j, k)] = total
    return SierpinskiMatrix(base, a.levels, entries=entries)
