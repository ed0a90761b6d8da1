"""Exhaustive spectra Sp(n; k, t) for tiny n, plus a backtracking avoider search."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .geometry import PointSet, flat_point_batches, is_avoider

__all__ = [
    "SpectrumResult",
    "spectrum_exhaustive",
    "AvoiderSearch",
    "exists_avoider_of_size",
    "CACHE_ENV",
    "MAX_SPECTRUM_N",
]

CACHE_ENV = "FLATAVOID_CACHE_DIR"
MAX_SPECTRUM_N = 4


@dataclass(frozen=True)
class SpectrumResult:
    n: int
    k: int
    t: int
    members: tuple[int, ...]

    @property
    def density(self) -> Fraction:
        return Fraction(len(self.members), 1 << self.n)

    def to_dict(self) -> dict:
        d = self.density
        return {
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "members": list(self.members),
            "density_num": d.numerator,
            "density_den": d.denominator,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_params(n: int, k: int, t: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if not 0 <= t <= 1 << k:
        raise ValueError(f"t={t} outside [0, 2^{k}]")


def _flat_masks(n: int, k: int) -> np.ndarray:
    flats = np.concatenate(list(flat_point_batches(n, k)))
    return (np.int64(1) << flats).sum(axis=1)


def _intersection_table(n: int, k: int) -> np.ndarray:
    """``table[S, F] = |S ∩ F|`` for every subset S (as a 2^n-bit integer) and k-flat F."""
    subsets = np.arange(1 << (1 << n), dtype=np.int64)
    return np.bitwise_count(subsets[:, None] & _flat_masks(n, k)[None, :]).astype(np.uint8)


def _cache_path(cache_dir, n: int, k: int, t: int) -> Path | None:
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    return Path(cache_dir) / f"spectrum_n{n}_k{k}_t{t}.json"


def spectrum_exhaustive(n: int, k: int, t: int, cache_dir: str | os.PathLike | None = None) -> SpectrumResult:
    """Sizes m such that every m-subset of F_2^n meets some k-flat in exactly t points.

    Scans all 2^(2^n) subsets; results are cached on disk when a cache directory
    is given or set through ``FLATAVOID_CACHE_DIR``.
    """
    _check_params(n, k, t)
    if n > MAX_SPECTRUM_N:
        raise ValueError(f"n={n} exceeds the exhaustive cap {MAX_SPECTRUM_N}")
    path = _cache_path(cache_dir, n, k, t)
    if path is not None and path.exists():
        data = json.loads(path.read_text())
        return SpectrumResult(data["n"], data["k"], data["t"], tuple(data["members"]))
    table = _intersection_table(n, k)
    avoider = ~(table == t).any(axis=1)
    sizes = np.bitwise_count(np.arange(table.shape[0], dtype=np.int64))
    has_avoider = np.zeros((1 << n) + 1, dtype=bool)
    has_avoider[sizes[avoider]] = True
    result = SpectrumResult(n, k, t, tuple(int(m) for m in np.flatnonzero(~has_avoider)))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(result.to_json())
    return result


@dataclass(frozen=True)
class AvoiderSearch:
    """``found`` is True (witness given), False (search exhausted) or None (budget hit)."""

    found: bool | None
    witness: PointSet | None
    nodes: int


def exists_avoider_of_size(n: int, k: int, t: int, m: int, budget: int = 10**6) -> AvoiderSearch:
    """Backtracking search for an m-point [k, t]-avoider in F_2^n.

    Points are decided in increasing order; a flat is checked as soon as its
    largest point is decided. Any witness is re-verified with ``is_avoider``.
    """
    _check_params(n, k, t)
    N = 1 << n
    if not 0 <= m <= N:
        raise ValueError(f"m={m} outside [0, {N}]")
    flats = np.concatenate(list(flat_point_batches(n, k)))
    closing: list[list[int]] = [[] for _ in range(N)]
    for idx, last in enumerate(flats[:, -1].tolist()):
        closing[last].append(idx)
    member_of: list[list[int]] = [[] for _ in range(N)]
    for idx, row in enumerate(flats.tolist()):
        for p in row:
            member_of[p].append(idx)
    count = [0] * len(flats)
    chosen = [False] * N
    prefer_in = 2 * m >= N
    nodes = 0

    def ok_at(p: int) -> bool:
        return all(count[f] != t for f in closing[p])

    # Iterative DFS over (point, next choice index) to avoid recursion limits.
    stack: list[tuple[int, int]] = []
    p, taken, choice = 0, 0, 0
    while True:
        if p == N:
            if taken == m:
                witness = PointSet(n, np.array(chosen))
                if not is_avoider(witness, k, t):
                    raise AssertionError("search produced a set that fails re-verification")
                return AvoiderSearch(True, witness, nodes)
            choice = 2
        if choice < 2:
            include = (choice == 0) == prefer_in
            remaining = N - p - 1
            feasible = taken + include <= m and taken + include + remaining >= m
            if feasible:
                nodes += 1
                if nodes > budget:
                    return AvoiderSearch(None, None, nodes)
                if include:
                    chosen[p] = True
                    for f in member_of[p]:
                        count[f] += 1
                if ok_at(p):
                    stack.append((p, choice))
                    taken += include
                    p, choice = p + 1, 0
                    continue
                if include:
                    chosen[p] = False
                    for f in member_of[p]:
                        count[f] -= 1
            choice += 1
            continue
        if not stack:
            return AvoiderSearch(False, None, nodes)
        p, choice = stack.pop()
        if chosen[p]:
            chosen[p] = False
            taken -= 1
            for f in member_of[p]:
                count[f] -= 1
        choice += 1
