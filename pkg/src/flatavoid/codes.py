"""Binary linear and affine codes, weight enumerators and the MacWilliams transform."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .gf2core import (
    BitMatrix,
    BitVector,
    bits_from_string,
    bits_to_string,
    enumerate_rref,
    gaussian_binomial,
    span,
    nullspace_basis,
    reduce_by_basis,
    rref_rows,
)

__all__ = [
    "LinearCode",
    "AffineCode",
    "WeightEnumerator",
    "contains",
    "dual",
    "weight_enumerator",
    "evaluate",
    "macwilliams_transform",
    "enumerate_all_codes",
    "check_value_count_bounds",
    "ValueCountReport",
    "read_code",
    "write_code",
    "format_code",
    "parse_code",
    "CodeFormatError",
    "ENUMERATION_CAP",
]

ENUMERATION_CAP = 28
MAX_CODES_LENGTH = 5


class CodeFormatError(ValueError):
    """Malformed code file; ``line`` is 1-indexed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class LinearCode:
    """A subspace of F_2^length, stored by its RREF generator.

    Any spanning rows may be passed; they are reduced on construction, so two
    codes compare equal iff they are the same subspace.
    """

    length: int
    rows: tuple[int, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        limit = 1 << self.length
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"generator row {r:#x} does not fit in length {self.length}")
        rows, pivots = rref_rows(self.rows, self.length)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    @classmethod
    def from_strings(cls, rows: Sequence[str], length: int | None = None) -> LinearCode:
        if length is None:
            if not rows:
                raise ValueError("length required for an empty generator")
            length = len(rows[0])
        for r in rows:
            if len(r) != length:
                raise ValueError(f"row {r!r} has length {len(r)}, expected {length}")
        return cls(length, tuple(bits_from_string(r) for r in rows))

    @classmethod
    def trivial(cls, length: int = 0) -> LinearCode:
        return cls(length, ())

    @classmethod
    def full(cls, length: int) -> LinearCode:
        return cls(length, tuple(1 << i for i in range(length)))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def generator(self) -> BitMatrix:
        return BitMatrix(self.rows, self.length)

    @cached_property
    def parity_check(self) -> BitMatrix:
        return nullspace_basis(self.generator)

    def codewords(self) -> list[int]:
        return span(self.rows)

    def __contains__(self, y) -> bool:
        return contains(self, y)

    def __str__(self) -> str:
        return format_code(self)


@dataclass(frozen=True)
class AffineCode:
    """A coset ``linear + offset``; the offset is reduced to the canonical representative."""

    linear: LinearCode
    offset: int = 0

    def __post_init__(self):
        off = self.offset.bits if isinstance(self.offset, BitVector) else int(self.offset)
        if off < 0 or off >> self.linear.length:
            raise ValueError("offset does not fit in code length")
        off = reduce_by_basis(off, self.linear.rows, self.linear.pivots)
        object.__setattr__(self, "offset", off)

    @property
    def length(self) -> int:
        return self.linear.length

    @property
    def dimension(self) -> int:
        return self.linear.dimension

    def codewords(self) -> list[int]:
        return [w ^ self.offset for w in self.linear.codewords()]

    def __contains__(self, y) -> bool:
        bits = y.bits if isinstance(y, BitVector) else int(y)
        return contains(self.linear, bits ^ self.offset)

    def __str__(self) -> str:
        return format_code(self)


@dataclass(frozen=True)
class WeightEnumerator:
    """Coefficients A_0..A_length of sum_w A_w x^w y^(length-w)."""

    length: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.length + 1:
            raise ValueError(f"need {self.length + 1} coefficients, got {len(self.coeffs)}")
        if any(c < 0 for c in self.coeffs):
            raise ValueError("negative coefficient")

    def __call__(self, a: int, b: int) -> int:
        return evaluate(self, a, b)

    def __getitem__(self, w: int) -> int:
        return self.coeffs[w]

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def swapped(self) -> WeightEnumerator:
        """Enumerator polynomial with x and y exchanged, W(y, x)."""
        return WeightEnumerator(self.length, self.coeffs[::-1])

    def __str__(self) -> str:
        terms = []
        ell = self.length
        for w, a in enumerate(self.coeffs):
            if not a:
                continue
            mono = "".join(
                s for s in (_power("x", w), _power("y", ell - w)) if s
            ) or "1"
            terms.append(mono if a == 1 and mono != "1" else f"{a}{mono if mono != '1' else ''}")
        return " + ".join(terms) or "0"


def _power(var: str, e: int) -> str:
    return "" if e == 0 else var if e == 1 else f"{var}^{e}"


def _as_bits(y, length: int) -> int:
    if isinstance(y, BitVector):
        if y.len != length:
            raise ValueError(f"length mismatch: vector {y.len}, code {length}")
        return y.bits
    y = int(y)
    if y < 0 or y >> length:
        raise ValueError(f"vector {y:#x} does not fit in length {length}")
    return y


def contains(c: LinearCode, y) -> bool:
    """Membership test through the parity-check product ``H y^T = 0``."""
    bits = _as_bits(y, c.length)
    return all((h & bits).bit_count() % 2 == 0 for h in c.parity_check.rows)


def dual(c: LinearCode) -> LinearCode:
    return LinearCode(c.length, c.parity_check.rows)


_CHUNK_BITS = 16


def _histogram(rows: Sequence[int], length: int, offset: int = 0) -> list[int]:
    """Weight histogram of ``span(rows) + offset``."""
    if length > 64 or len(rows) <= _CHUNK_BITS:
        counts = [0] * (length + 1)
        for w in span(rows):
            counts[(w ^ offset).bit_count()] += 1
        return counts
    # Inner block vectorized, outer block looped; merge is a plain sum.
    inner = np.array(span(rows[:_CHUNK_BITS]), dtype=np.uint64)
    counts = np.zeros(length + 1, dtype=np.int64)
    for hi in span(rows[_CHUNK_BITS:]):
        weights = np.bitwise_count(inner ^ np.uint64(hi ^ offset))
        counts += np.bincount(weights, minlength=length + 1)
    return [int(c) for c in counts]


def weight_enumerator(c: LinearCode | AffineCode, *, cap: int = ENUMERATION_CAP) -> WeightEnumerator:
    """Weight enumerator, by direct enumeration or through the dual.

    Linear codes with dimension above half the length are handled by enumerating
    the dual and applying the MacWilliams transform. Affine codes are always
    enumerated directly.
    """
    if isinstance(c, AffineCode):
        if c.dimension > cap:
            raise ValueError(f"dimension {c.dimension} exceeds enumeration cap {cap}")
        return WeightEnumerator(c.length, _histogram(c.linear.rows, c.length, c.offset))
    d, ell = c.dimension, c.length
    if min(d, ell - d) > cap:
        raise ValueError(f"min(d, length-d) = {min(d, ell - d)} exceeds enumeration cap {cap}")
    if d <= ell - d:
        return WeightEnumerator(ell, _histogram(c.rows, ell))
    perp = dual(c)
    return macwilliams_transform(WeightEnumerator(ell, _histogram(perp.rows, ell)), perp.dimension)


def evaluate(w: WeightEnumerator, a: int, b: int) -> int:
    """Exact value of sum_w A_w a^w b^(length-w)."""
    ell = w.length
    return sum(A * a**i * b ** (ell - i) for i, A in enumerate(w.coeffs) if A)


def _krawtchouk_table(ell: int) -> list[list[int]]:
    """K[j][w] = coefficient of x^j y^(ell-j) in (y-x)^w (y+x)^(ell-w)."""
    table = [[0] * (ell + 1) for _ in range(ell + 1)]
    for w in range(ell + 1):
        for i in range(w + 1):
            sign_binom = (-1) ** i * math.comb(w, i)
            for m in range(ell - w + 1):
                table[i + m][w] += sign_binom * math.comb(ell - w, m)
    return table


def macwilliams_transform(w: WeightEnumerator, d: int) -> WeightEnumerator:
    """Enumerator of the dual code: W(y - x, y + x) / 2^d, coefficient by coefficient."""
    ell = w.length
    K = _krawtchouk_table(ell)
    out = []
    for j in range(ell + 1):
        s = sum(K[j][i] * A for i, A in enumerate(w.coeffs) if A)
        q, rem = divmod(s, 1 << d)
        if rem or q < 0:
            raise ValueError(
                f"coefficient {j} of the transform is {s}/2^{d}; input is not the enumerator of a dimension-{d} code"
            )
        out.append(q)
    return WeightEnumerator(ell, out)


def enumerate_all_codes(length: int) -> Iterator[LinearCode]:
    """Every subspace of F_2^length exactly once, by increasing dimension."""
    if length > MAX_CODES_LENGTH:
        raise ValueError(f"length {length} exceeds exhaustive cap {MAX_CODES_LENGTH}")
    if length < 0:
        raise ValueError("negative length")
    for k in range(length + 1):
        for _, rows in enumerate_rref(length, k):
            yield LinearCode(length, tuple(rows))


def count_all_codes(length: int) -> int:
    return sum(gaussian_binomial(length, k) for k in range(length + 1))


@dataclass(frozen=True)
class ValueCountReport:
    length: int
    a: int
    b: int
    values: frozenset[int]
    elementary_bound: int
    dual_bound: int | None

    @property
    def distinct_count(self) -> int:
        return len(self.values)

    @property
    def violations(self) -> list[str]:
        out = []
        if self.distinct_count > self.elementary_bound:
            out.append("elementary")
        if self.dual_bound is not None and self.distinct_count > self.dual_bound:
            out.append("dual")
        return out

    @property
    def ok(self) -> bool:
        return not self.violations


def elementary_bound(length: int, a: int, b: int) -> int:
    if a == 0 or b == 0:
        raise ValueError("elementary bound needs a and b nonzero")
    base = (abs(a) + abs(b)) // math.gcd(a, b)
    return base**length if a * b > 0 else 2 * base**length + 1


def dual_bound(length: int, a: int, b: int) -> int:
    if b <= abs(a):
        raise ValueError("dual bound needs b > |a|")
    return (length + 1) * ((2 * b) // math.gcd(b - a, b + a)) ** length


def check_value_count_bounds(length: int, a: int, b: int) -> ValueCountReport:
    """Exhaustive count of distinct W_C(a, b) over all codes of the given length,
    compared against the elementary and the dual (MacWilliams) bounds."""
    if length < 1:
        raise ValueError("length must be at least 1")
    elem = elementary_bound(length, a, b)
    dual_b = dual_bound(length, a, b) if b > abs(a) else None
    values = frozenset(evaluate(weight_enumerator(c), a, b) for c in enumerate_all_codes(length))
    return ValueCountReport(length, a, b, values, elem, dual_b)


# -- text format -------------------------------------------------------------


def format_code(c: LinearCode | AffineCode) -> str:
    linear = c.linear if isinstance(c, AffineCode) else c
    lines = [f"length={linear.length} dim={linear.dimension}"]
    lines += [bits_to_string(r, linear.length) for r in linear.rows]
    if isinstance(c, AffineCode):
        lines.append(f"offset={bits_to_string(c.offset, linear.length)}")
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode | AffineCode:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeFormatError("empty code file", 1)
    lineno, header = lines[0]
    try:
        fields = dict(tok.split("=", 1) for tok in header.split())
        length, dim = int(fields["length"]), int(fields["dim"])
    except (ValueError, KeyError):
        raise CodeFormatError(f"expected 'length=<l> dim=<d>', got {header!r}", lineno) from None
    if length < 0 or dim < 0:
        raise CodeFormatError("negative length or dimension", lineno)
    body = lines[1:]
    offset = None
    if body and body[-1][1].startswith("offset="):
        lineno, text_off = body.pop()
        text_off = text_off[len("offset="):]
        if len(text_off) != length or set(text_off) - {"0", "1"}:
            raise CodeFormatError(f"offset must be {length} characters in {{0,1}}", lineno)
        offset = bits_from_string(text_off)
    if len(body) != dim:
        where = body[dim][0] if len(body) > dim else (body[-1][0] if body else lineno)
        raise CodeFormatError(f"expected {dim} generator rows, found {len(body)}", where)
    rows = []
    for lineno, row in body:
        if len(row) != length:
            raise CodeFormatError(f"row has length {len(row)}, expected {length}", lineno)
        if set(row) - {"0", "1"}:
            raise CodeFormatError(f"row {row!r} contains characters other than 0/1", lineno)
        rows.append(bits_from_string(row))
    code = LinearCode(length, tuple(rows))
    if code.dimension != dim:
        raise CodeFormatError(f"generator rows have rank {code.dimension}, header says dim={dim}", body[0][0])
    return code if offset is None else AffineCode(code, offset)


def read_code(path: str | Path) -> LinearCode | AffineCode:
    return parse_code(Path(path).read_text())


def write_code(c: LinearCode | AffineCode, path: str | Path) -> None:
    Path(path).write_text(format_code(c))
