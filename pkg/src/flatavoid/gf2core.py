"""Dense GF(2) linear algebra on int-packed rows.

Coordinate ``j`` (0-indexed; ``x_{j+1}`` in the usual 1-indexed notation) lives at
bit ``j`` of a Python int, so ``x_1`` is the least significant bit. Bit strings
are written left to right as ``x_1 x_2 ... x_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BitVector",
    "BitMatrix",
    "bits_from_string",
    "bits_to_string",
    "rref",
    "rref_rows",
    "rank",
    "nullspace_basis",
    "matvec",
    "gaussian_binomial",
    "reduce_by_basis",
    "span",
    "enumerate_rref",
]


def bits_from_string(s: str) -> int:
    """Parse ``"1001"`` (x_1 first) into an int with x_1 at bit 0."""
    value = 0
    for j, ch in enumerate(s):
        if ch == "1":
            value |= 1 << j
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} in {s!r}")
    return value


def bits_to_string(value: int, length: int) -> str:
    return "".join("1" if (value >> j) & 1 else "0" for j in range(length))


@dataclass(frozen=True)
class BitVector:
    """A vector of ``len`` bits packed into one int."""

    bits: int
    len: int

    def __post_init__(self):
        if self.len < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError(f"bits {self.bits:#x} do not fit in length {self.len}")

    @classmethod
    def from_string(cls, s: str) -> BitVector:
        return cls(bits_from_string(s), len(s))

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(0, length)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls((1 << length) - 1, length)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        if other.len != self.len:
            raise ValueError("length mismatch")
        return BitVector(self.bits ^ other.bits, self.len)

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: BitVector) -> int:
        if other.len != self.len:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def __str__(self) -> str:
        return bits_to_string(self.bits, self.len)


@dataclass(frozen=True)
class BitMatrix:
    """Row-major GF(2) matrix; each row is an int with ``cols`` significant bits."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        limit = 1 << self.cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {self.cols} columns")

    @classmethod
    def from_strings(cls, rows: Sequence[str], cols: int | None = None) -> BitMatrix:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"row {r!r} has length {len(r)}, expected {cols}")
        return cls(tuple(bits_from_string(r) for r in rows), cols)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, cols: int) -> BitMatrix:
        return cls((0,) * nrows, cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.rows[i], self.cols)

    def to_strings(self) -> list[str]:
        return [bits_to_string(r, self.cols) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def rref_rows(rows: Iterable[int], cols: int) -> tuple[list[int], list[int]]:
    """Row-reduce int rows; returns (nonzero RREF rows, pivot columns).

    The pivot of a row is its lowest set bit; pivots increase with row index
    and every pivot column is zero in all other rows.
    """
    work = [r for r in rows if r]
    pivots: list[int] = []
    out: list[int] = []
    for col in range(cols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        prow = work.pop(idx)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col)
        work = [r for r in work if r]
        if not work:
            break
    return out, pivots


def rref(m: BitMatrix) -> tuple[BitMatrix, list[int]]:
    rows, pivots = rref_rows(m.rows, m.cols)
    return BitMatrix(tuple(rows), m.cols), pivots


def rank(m: BitMatrix) -> int:
    return len(rref_rows(m.rows, m.cols)[1])


def reduce_by_basis(v: int, rows: Sequence[int], pivots: Sequence[int]) -> int:
    """Clear the pivot coordinates of ``v`` using RREF rows.

    The result is the canonical coset representative of ``v`` modulo the row
    space; it is also the lexicographically smallest one in x_1-first order.
    """
    for r, p in zip(rows, pivots):
        if (v >> p) & 1:
            v ^= r
    return v


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """Basis of ``{y : m y^T = 0}``, one basis vector per free column."""
    rows, pivots = rref_rows(m.rows, m.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, p in zip(rows, pivots):
            if (r >> free) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(tuple(basis), m.cols)


def matvec(m: BitMatrix, v: BitVector) -> BitVector:
    """Return ``m v^T`` as a vector of length ``m.nrows``."""
    if v.len != m.cols:
        raise ValueError(f"dimension mismatch: matrix has {m.cols} columns, vector has length {v.len}")
    out = 0
    for i, r in enumerate(m.rows):
        if (r & v.bits).bit_count() & 1:
            out |= 1 << i
    return BitVector(out, m.nrows)


def span(rows: Sequence[int]) -> list[int]:
    """All 2^len(rows) combinations of ``rows`` in Gray-code order."""
    out = [0]
    for r in rows:
        out += [w ^ r for w in out]
    return out


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F_2^n."""
    if n < 0 or k < 0:
        raise ValueError("negative argument")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    return num // den


def enumerate_rref(n: int, k: int) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Yield every k x n RREF matrix of rank k as ``(pivots, rows)``.

    Order: pivot sets lexicographically, then the free entries counted as a
    binary number (earlier rows in the high positions).
    """
    for pivots in combinations(range(n), k):
        pset = set(pivots)
        free_cols = [[j for j in range(p + 1, n) if j not in pset] for p in pivots]
        total = sum(len(f) for f in free_cols)
        for code in range(1 << total):
            rows = []
            shift = total
            for p, cols in zip(pivots, free_cols):
                shift -= len(cols)
                chunk = (code >> shift) & ((1 << len(cols)) - 1)
                r = 1 << p
                for t, j in enumerate(reversed(cols)):
                    if (chunk >> t) & 1:
                        r |= 1 << j
                rows.append(r)
            yield pivots, rows
