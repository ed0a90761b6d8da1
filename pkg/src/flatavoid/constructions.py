"""Explicit [k,1]-avoiders: code-based, affine-code, hypergraph and flat-algebra constructions."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .codes import AffineCode, LinearCode, contains, evaluate, weight_enumerator
from .geometry import MAX_N, Flat, PointSet
from .gf2core import BitVector

__all__ = [
    "SignatureContext",
    "signature",
    "code_based_set",
    "affine_code_based_set",
    "predicted_size",
    "block_flat",
    "parity_check_groups",
    "Hypergraph",
    "count_independent_sets",
    "hypergraph_set",
    "flats_avoider",
    "read_hypergraph",
    "parse_hypergraph",
    "HypergraphFormatError",
]

MAX_HYPERGRAPH_COUNT_N = 20


@dataclass(frozen=True)
class SignatureContext:
    """Blocks of ``k - 1`` consecutive coordinates; block i (0-indexed) covers
    coordinates ``i(k-1) .. (i+1)(k-1) - 1``."""

    k: int
    length: int

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"k={self.k}: the code-based construction needs k >= 3")
        if self.length < 0:
            raise ValueError("negative code length")

    @property
    def n(self) -> int:
        return self.length * (self.k - 1)

    def block_mask(self, i: int) -> int:
        w = self.k - 1
        return ((1 << w) - 1) << (i * w)


def signature(x, ctx: SignatureContext) -> BitVector:
    """Bit i is set iff every coordinate of block i of ``x`` is 1."""
    if isinstance(x, BitVector):
        if x.len != ctx.n:
            raise ValueError(f"length mismatch: vector {x.len}, expected {ctx.n}")
        x = x.bits
    elif not 0 <= x < 1 << ctx.n:
        raise ValueError(f"point out of range for n={ctx.n}")
    s = 0
    for i in range(ctx.length):
        m = ctx.block_mask(i)
        if x & m == m:
            s |= 1 << i
    return BitVector(s, ctx.length)


def _signatures(ctx: SignatureContext) -> np.ndarray:
    xs = np.arange(1 << ctx.n, dtype=np.int64)
    sig = np.zeros_like(xs)
    for i in range(ctx.length):
        m = ctx.block_mask(i)
        sig |= ((xs & m) == m).astype(np.int64) << i
    return sig


def _context(length: int, k: int) -> SignatureContext:
    ctx = SignatureContext(k, length)
    if ctx.n > MAX_N:
        raise ValueError(f"n = {ctx.n} exceeds the point-set cap {MAX_N}")
    return ctx


def code_based_set(c: LinearCode, k: int) -> PointSet:
    """``{x : signature(x) not in c}`` inside F_2^(length*(k-1))."""
    ctx = _context(c.length, k)
    in_code = np.array([contains(c, y) for y in range(1 << c.length)], dtype=bool)
    return PointSet(ctx.n, ~in_code[_signatures(ctx)])


def affine_code_based_set(c: AffineCode, k: int) -> PointSet:
    ctx = _context(c.length, k)
    in_code = np.array([contains(c.linear, y ^ c.offset) for y in range(1 << c.length)], dtype=bool)
    return PointSet(ctx.n, ~in_code[_signatures(ctx)])


def predicted_size(c: LinearCode | AffineCode, k: int) -> int:
    """``2^n - W_C(1, 2^(k-1) - 1)`` for either kind of code."""
    ctx = SignatureContext(k, c.length)
    return (1 << ctx.n) - evaluate(weight_enumerator(c), 1, (1 << (k - 1)) - 1)


def block_flat(i: int, ctx: SignatureContext) -> Flat:
    """The (n-k+1)-flat where block i is all ones."""
    w = ctx.k - 1
    return Flat.coordinate_flat(ctx.n, {j: 1 for j in range(i * w, (i + 1) * w)})


def _whole_space_groups(ctx: SignatureContext) -> list[Flat]:
    # F_2^n as a disjoint union of the 2^(k-1) translates of the block-0 direction space.
    w = ctx.k - 1
    return [
        Flat.coordinate_flat(ctx.n, {j: (v >> j) & 1 for j in range(w)})
        for v in range(1 << w)
    ]


def parity_check_groups(c: LinearCode | AffineCode, k: int) -> list[list[Flat]]:
    """One group of (n-k+1)-flats per parity-check row.

    For a linear code the set built by :func:`flats_avoider` from these groups
    equals :func:`code_based_set`; for an affine code, rows whose check value on
    the offset is 1 get the whole space added to their group.
    """
    if isinstance(c, AffineCode):
        linear, offset = c.linear, c.offset
    else:
        linear, offset = c, 0
    ctx = SignatureContext(k, linear.length)
    groups = []
    for h in linear.parity_check.rows:
        group = [block_flat(i, ctx) for i in range(linear.length) if (h >> i) & 1]
        if (h & offset).bit_count() & 1:
            group += _whole_space_groups(ctx)
        groups.append(group)
    return groups


def flats_avoider(groups: Sequence[Sequence[Flat]], k: int, n: int | None = None) -> PointSet:
    """Union over groups of the symmetric difference of each group's flats.

    Every flat must have dimension n - k + 1 for the declared ``k >= 2``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    flats = [f for g in groups for f in g]
    if n is None:
        if not flats:
            raise ValueError("n is required when no flats are given")
        n = flats[0].n
    for f in flats:
        if f.n != n:
            raise ValueError(f"flat lives in F_2^{f.n}, expected n={n}")
        if f.k != n - k + 1:
            raise ValueError(f"flat has dimension {f.k}, expected n-k+1 = {n - k + 1}")
    out = PointSet(n)
    for g in groups:
        t = PointSet(n)
        for f in g:
            t = t ^ f.to_pointset()
        out = out | t
    return out


class HypergraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``1..n``; edges stored as sorted tuples, without duplicates."""

    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = []
        for e in self.edges:
            e = tuple(sorted(set(e)))
            if any(not 1 <= v <= self.n for v in e):
                raise ValueError(f"edge {e} uses a vertex outside 1..{self.n}")
            if e not in seen:
                seen.append(e)
        object.__setattr__(self, "edges", tuple(seen))

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def edge_masks(self) -> list[int]:
        return [sum(1 << (v - 1) for v in e) for e in self.edges]


def count_independent_sets(h: Hypergraph) -> int:
    """Number of vertex subsets that contain no edge entirely."""
    if h.n > MAX_HYPERGRAPH_COUNT_N:
        raise ValueError(f"n={h.n} exceeds the exhaustive cap {MAX_HYPERGRAPH_COUNT_N}")
    return (1 << h.n) - len(_edge_union(h))


def _edge_union(h: Hypergraph) -> PointSet:
    xs = np.arange(1 << h.n, dtype=np.int64)
    hit = np.zeros(xs.size, dtype=bool)
    for m in h.edge_masks():
        hit |= (xs & m) == m
    return PointSet(h.n, hit)


def hypergraph_set(h: Hypergraph, k: int) -> PointSet:
    """Union of ``{x : x_v = 1 for v in e}`` over the edges; its complement is the
    set of characteristic vectors of independent sets."""
    if k < 3:
        raise ValueError("k must be at least 3")
    if h.rank > k - 1:
        raise ValueError(f"hypergraph rank {h.rank} exceeds k-1 = {k - 1}")
    if h.n > MAX_N:
        raise ValueError(f"n={h.n} exceeds the point-set cap {MAX_N}")
    return _edge_union(h)


def parse_hypergraph(text: str) -> Hypergraph:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0][1].startswith("n="):
        raise HypergraphFormatError("line 1: expected 'n=<n>'")
    try:
        n = int(lines[0][1][2:])
    except ValueError:
        raise HypergraphFormatError(f"line {lines[0][0]}: bad vertex count") from None
    edges = []
    for lineno, ln in lines[1:]:
        try:
            edge = tuple(int(v) for v in ln.split(","))
        except ValueError:
            raise HypergraphFormatError(f"line {lineno}: edges are comma-separated vertex numbers") from None
        if any(not 1 <= v <= n for v in edge):
            raise HypergraphFormatError(f"line {lineno}: vertex outside 1..{n}")
        edges.append(edge)
    return Hypergraph(n, tuple(edges))


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())
