"""Point sets in F_2^n, canonical k-flats, k-profiles and the avoider predicates.

A point ``x`` is encoded as the integer ``sum_j x_j 2^(j-1)``. A k-flat is stored
canonically: RREF basis of its direction space plus the coset representative
with zeros in every pivot coordinate.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .gf2core import BitMatrix, BitVector, enumerate_rref, gaussian_binomial, reduce_by_basis, rref_rows, span

__all__ = [
    "PointSet",
    "Flat",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "MAX_N",
    "flat_points",
    "count_flats",
    "enumerate_flats",
    "flat_point_batches",
    "profile",
    "is_avoider",
    "is_evasive",
    "union",
    "symmetric_difference",
    "complement",
    "read_set",
    "write_set",
    "format_set",
    "parse_set",
    "SetFormatError",
]

DEFAULT_BUDGET = 2**31
MAX_N = 24
_BATCH_ELEMENTS = 1 << 21
# packed flat tables up to this many 64-bit words are built once and kept in memory
_CACHE_WORDS = 1 << 24


class BudgetExceeded(RuntimeError):
    """The requested flat enumeration is larger than the allowed budget."""

    def __init__(self, needed: int, budget: int):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{needed} flats exceed the enumeration budget {budget}; raise the budget to proceed")


class SetFormatError(ValueError):
    pass


class PointSet:
    """Subset of F_2^n held as a boolean membership array of length 2^n."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask=None):
        if not 0 <= n <= MAX_N:
            raise ValueError(f"n={n} outside [0, {MAX_N}]")
        self.n = n
        if mask is None:
            mask = np.zeros(1 << n, dtype=bool)
        else:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != (1 << n,):
                raise ValueError(f"membership array must have shape ({1 << n},), got {mask.shape}")
        self.mask = mask

    @classmethod
    def from_points(cls, n: int, points: Iterable[int]) -> PointSet:
        s = cls(n)
        pts = np.fromiter((int(p) for p in points), dtype=np.int64)
        if pts.size and (pts.min() < 0 or pts.max() >= 1 << n):
            raise ValueError(f"point out of range for n={n}")
        s.mask[pts] = True
        return s

    @classmethod
    def empty(cls, n: int) -> PointSet:
        return cls(n)

    @classmethod
    def full(cls, n: int) -> PointSet:
        return cls(n, np.ones(1 << n, dtype=bool))

    def points(self) -> list[int]:
        return np.flatnonzero(self.mask).tolist()

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, x) -> bool:
        x = x.bits if isinstance(x, BitVector) else int(x)
        return bool(self.mask[x])

    def __iter__(self):
        return iter(self.points())

    def _check(self, other: PointSet) -> None:
        if not isinstance(other, PointSet):
            raise TypeError(f"expected PointSet, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __or__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.n, self.mask | other.mask)

    def __and__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.n, self.mask & other.mask)

    def __xor__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.n, self.mask ^ other.mask)

    def __invert__(self) -> PointSet:
        return PointSet(self.n, ~self.mask)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.mask, other.mask))

    __hash__ = None

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, size={len(self)})"


def union(*sets: PointSet) -> PointSet:
    out = sets[0]
    for s in sets[1:]:
        out = out | s
    return out


def symmetric_difference(*sets: PointSet) -> PointSet:
    out = sets[0]
    for s in sets[1:]:
        out = out ^ s
    return out


def complement(s: PointSet) -> PointSet:
    return ~s


@dataclass(frozen=True)
class Flat:
    """A k-flat ``rep + span(basis)`` in canonical form.

    Any spanning rows and any point of the flat may be given; both are
    canonicalized, so equal flats compare equal.
    """

    n: int
    rows: tuple[int, ...]
    rep: int = 0
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        limit = 1 << self.n
        if any(r < 0 or r >= limit for r in self.rows) or not 0 <= self.rep < limit:
            raise ValueError(f"vector out of range for n={self.n}")
        rows, pivots = rref_rows(self.rows, self.n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))
        object.__setattr__(self, "rep", reduce_by_basis(self.rep, rows, pivots))

    @classmethod
    def point(cls, n: int, x: int) -> Flat:
        return cls(n, (), x)

    @classmethod
    def coordinate_flat(cls, n: int, fixed: dict[int, int]) -> Flat:
        """Flat ``{x : x_j = v for (j, v) in fixed}`` with 0-indexed coordinates."""
        rows = tuple(1 << j for j in range(n) if j not in fixed)
        rep = sum(1 << j for j, v in fixed.items() if v)
        return cls(n, rows, rep)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def basis(self) -> BitMatrix:
        return BitMatrix(self.rows, self.n)

    def points(self) -> list[int]:
        return sorted(self.rep ^ v for v in span(self.rows))

    def to_pointset(self) -> PointSet:
        return PointSet.from_points(self.n, self.points())

    def __contains__(self, x) -> bool:
        x = x.bits if isinstance(x, BitVector) else int(x)
        return reduce_by_basis(x ^ self.rep, self.rows, self.pivots) == 0


def flat_points(f: Flat) -> list[int]:
    """The 2^k points of ``f`` in increasing order."""
    return f.points()


def count_flats(n: int, k: int) -> int:
    return (1 << (n - k)) * gaussian_binomial(n, k)


def _check_budget(n: int, k: int, budget: int | None) -> None:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    needed = count_flats(n, k)
    if budget is not None and needed > budget:
        raise BudgetExceeded(needed, budget)


def _free_reps(n: int, pivots: Iterable[int]) -> list[int]:
    pset = set(pivots)
    return sorted(span([1 << j for j in range(n) if j not in pset]))


def enumerate_flats(n: int, k: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[Flat]:
    """Every k-flat of F_2^n exactly once, ordered by (pivot set, basis, representative)."""
    _check_budget(n, k, budget)
    reps_by_pivots: dict[tuple[int, ...], list[int]] = {}
    for pivots, rows in enumerate_rref(n, k):
        reps = reps_by_pivots.get(pivots)
        if reps is None:
            reps = reps_by_pivots.setdefault(pivots, _free_reps(n, pivots))
        for rep in reps:
            yield Flat(n, tuple(rows), rep)


def _class_bases(n: int, pivots: tuple[int, ...], start: int, stop: int) -> np.ndarray:
    """RREF bases with the given pivots, free-entry codes in [start, stop), as (m, k) uint64."""
    pset = set(pivots)
    codes = np.arange(start, stop, dtype=np.uint64)
    free_cols = [[j for j in range(p + 1, n) if j not in pset] for p in pivots]
    total = sum(len(f) for f in free_cols)
    out = np.empty((codes.size, len(pivots)), dtype=np.uint64)
    shift = total
    for i, (p, cols) in enumerate(zip(pivots, free_cols)):
        shift -= len(cols)
        row = np.full(codes.size, 1 << p, dtype=np.uint64)
        for t, j in enumerate(reversed(cols)):
            bit = (codes >> np.uint64(shift + t)) & np.uint64(1)
            row |= bit << np.uint64(j)
        out[:, i] = row
    return out


def flat_point_batches(n: int, k: int, budget: int | None = DEFAULT_BUDGET) -> Iterator[np.ndarray]:
    """Yield int64 arrays of shape (batch, 2^k), one row of points per k-flat.

    Same flats and order as :func:`enumerate_flats`, produced in bulk.
    """
    _check_budget(n, k, budget)
    for pivots in combinations(range(n), k):
        pset = set(pivots)
        total = sum(len([j for j in range(p + 1, n) if j not in pset]) for p in pivots)
        reps = np.array(_free_reps(n, pivots), dtype=np.int64)
        per_basis = reps.size << k
        step = max(1, _BATCH_ELEMENTS // per_basis)
        n_codes = 1 << total
        for start in range(0, n_codes, step):
            bases = _class_bases(n, pivots, start, min(n_codes, start + step)).astype(np.int64)
            pts = np.zeros((bases.shape[0], 1), dtype=np.int64)
            for i in range(k):
                pts = np.concatenate([pts, pts ^ bases[:, i : i + 1]], axis=1)
            flats = (reps[None, :, None] ^ pts[:, None, :]).reshape(-1, 1 << k)
            flats.sort(axis=1)
            yield flats


def _counts(mask: np.ndarray, batch: np.ndarray) -> np.ndarray:
    return mask[batch].sum(axis=1)


def _pack_words(mask: np.ndarray) -> np.ndarray:
    """Membership bitmap as little-endian uint64 words, point p at bit p % 64 of word p // 64."""
    raw = np.packbits(mask, bitorder="little")
    raw = np.concatenate([raw, np.zeros(-len(raw) % 8, dtype=np.uint8)])
    return raw.view("<u8")


@lru_cache(maxsize=8)
def _flat_words(n: int, k: int) -> np.ndarray:
    """Every k-flat as a packed bitmap, stored word-major: shape (words, flats)."""
    words = max(1, (1 << n) // 64)
    out = np.zeros((words, count_flats(n, k)), dtype=np.uint64)
    row = 0
    for b in flat_point_batches(n, k, None):
        one = np.uint64(1) << (b % 64).astype(np.uint64)
        for w in range(words):
            out[w, row : row + b.shape[0]] = np.where(b // 64 == w, one, np.uint64(0)).sum(axis=1, dtype=np.uint64)
        row += b.shape[0]
    return out


def _scan_cached(s: PointSet, k: int, stop) -> set[int]:
    table = _flat_words(s.n, k)
    packed = _pack_words(s.mask)
    sizes: set[int] = set()
    step = _BATCH_ELEMENTS
    for start in range(0, table.shape[1], step):
        acc = np.zeros(min(step, table.shape[1] - start), dtype=np.uint8)
        for w in range(table.shape[0]):
            acc += np.bitwise_count(table[w, start : start + step] & packed[w])
        sizes.update(np.flatnonzero(np.bincount(acc, minlength=(1 << k) + 1)).tolist())
        if stop is not None and stop(sizes):
            break
    return sizes


def _scan_sizes(s: PointSet, k: int, budget: int | None, threads: int, stop=None) -> set[int]:
    _check_budget(s.n, k, budget)
    if threads <= 1 and count_flats(s.n, k) * max(1, (1 << s.n) // 64) <= _CACHE_WORDS:
        return _scan_cached(s, k, stop)
    sizes: set[int] = set()
    batches = flat_point_batches(s.n, k, None)
    if threads <= 1:
        for b in batches:
            sizes.update(np.unique(_counts(s.mask, b)).tolist())
            if stop is not None and stop(sizes):
                break
        return sizes
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(lambda b: np.unique(_counts(s.mask, b)).tolist(), batches):
            sizes.update(part)
    return sizes


def profile(s: PointSet, k: int, budget: int | None = DEFAULT_BUDGET, threads: int = 1) -> list[int]:
    """Sorted list of all values ``|S ∩ F|`` over the k-flats F of F_2^n."""
    if k > s.n:
        raise ValueError(f"k={k} exceeds n={s.n}")
    return sorted(_scan_sizes(s, k, budget, threads))


def is_avoider(s: PointSet, k: int, t: int, budget: int | None = DEFAULT_BUDGET, threads: int = 1) -> bool:
    """True iff no k-flat meets ``s`` in exactly ``t`` points."""
    if not 0 <= t <= 1 << k:
        raise ValueError(f"t={t} outside [0, 2^{k}]")
    if k > s.n:
        raise ValueError(f"k={k} exceeds n={s.n}")
    return t not in _scan_sizes(s, k, budget, threads, stop=lambda sz: t in sz)


def is_evasive(s: PointSet, k: int, c: int, budget: int | None = DEFAULT_BUDGET, threads: int = 1) -> bool:
    """True iff every k-flat meets ``s`` in at most ``c`` points."""
    if k > s.n:
        raise ValueError(f"k={k} exceeds n={s.n}")
    return max(_scan_sizes(s, k, budget, threads, stop=lambda sz: max(sz) > c)) <= c


# -- text format -------------------------------------------------------------


def format_set(s: PointSet, style: str = "auto") -> str:
    if style == "auto":
        style = "points" if 16 * len(s) <= (1 << s.n) else "hex"
    if style == "points":
        body = "points=" + ",".join(str(p) for p in s.points())
    elif style == "hex":
        value = int.from_bytes(np.packbits(s.mask, bitorder="little").tobytes(), "little")
        digits = max(1, (1 << s.n) // 4)
        body = f"hex={value:0{digits}x}"
    else:
        raise ValueError(f"unknown style {style!r}")
    return f"n={s.n}\n{body}\n"


def parse_set(text: str) -> PointSet:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(lines) != 2 or not lines[0].startswith("n="):
        raise SetFormatError("expected 'n=<n>' followed by a 'points=' or 'hex=' line")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise SetFormatError(f"line 1: bad dimension {lines[0]!r}") from None
    body = lines[1]
    if body.startswith("points="):
        raw = body[len("points="):].strip()
        try:
            pts = [int(p) for p in raw.split(",") if p.strip()]
        except ValueError:
            raise SetFormatError("line 2: points must be comma-separated integers") from None
        if any(not 0 <= p < 1 << n for p in pts):
            raise SetFormatError(f"line 2: point outside [0, 2^{n})")
        return PointSet.from_points(n, pts)
    if body.startswith("hex="):
        try:
            value = int(body[len("hex="):], 16)
        except ValueError:
            raise SetFormatError("line 2: invalid hexadecimal bitmap") from None
        if value >> (1 << n):
            raise SetFormatError(f"line 2: bitmap has bits beyond 2^{n} points")
        nbytes = max(1, (1 << n) // 8)
        bits = np.unpackbits(np.frombuffer(value.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")
        return PointSet(n, bits[: 1 << n])
    raise SetFormatError("line 2: expected 'points=' or 'hex='")


def read_set(path: str | Path) -> PointSet:
    return parse_set(Path(path).read_text())


def write_set(s: PointSet, path: str | Path, style: str = "auto") -> None:
    Path(path).write_text(format_set(s, style))
