"""The length-two code transformations ``a`` and ``b``, their enumerator and 2x2
matrix recurrences, and distinct-size counting over words in {a, b}.

A word ``s1 s2 ... sr`` acts as the composition ``s1 ∘ s2 ∘ ... ∘ sr``, so its
rightmost letter is applied first and ``v(f(C)) = M_s1 ... M_sr v(C)``.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .codes import LinearCode, WeightEnumerator, evaluate, weight_enumerator

__all__ = [
    "TransformWord",
    "Mat2",
    "VPair",
    "M_A",
    "M_B",
    "transform_a",
    "transform_b",
    "apply_word",
    "word_matrix",
    "enumerator_after_a",
    "enumerator_after_b",
    "enumerator_after_word",
    "v_of_code",
    "pad_zero",
    "all_words",
    "balanced_family",
    "SizeReport",
    "distinct_sizes",
    "size_lower_bound",
    "check_free_distinctness",
    "PingPongReport",
    "region",
    "sample_region",
    "pingpong_region_check",
    "MAX_SIZES_R",
    "MAX_FREE_R",
]

MAX_SIZES_R = 24
MAX_FREE_R = 14


class TransformWord(str):
    """A string over the alphabet {a, b}."""

    def __new__(cls, letters: str = ""):
        bad = set(letters) - {"a", "b"}
        if bad:
            raise ValueError(f"word {letters!r} has letters outside {{a, b}}: {sorted(bad)}")
        return super().__new__(cls, letters)

    @property
    def count_a(self) -> int:
        return self.count("a")

    @property
    def count_b(self) -> int:
        return self.count("b")


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 integer matrix [[alpha, beta], [gamma, delta]]."""

    alpha: int
    beta: int
    gamma: int
    delta: int

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.alpha * other.alpha + self.beta * other.gamma,
                self.alpha * other.beta + self.beta * other.delta,
                self.gamma * other.alpha + self.delta * other.gamma,
                self.gamma * other.beta + self.delta * other.delta,
            )
        x, y = other
        pair = (self.alpha * x + self.beta * y, self.gamma * x + self.delta * y)
        return VPair(*pair) if isinstance(other, VPair) else pair

    def det(self) -> int:
        return self.alpha * self.delta - self.beta * self.gamma

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class VPair:
    """``(W_C(1, 3), W_C(3, 1))``."""

    w13: int
    w31: int

    def __iter__(self):
        return iter((self.w13, self.w31))


M_A = Mat2(9, 0, 0, 1)
M_B = Mat2(10, 6, 6, 10)
_LETTER_MATRIX = {"a": M_A, "b": M_B}


def transform_a(c: LinearCode) -> LinearCode:
    """Append two zero coordinates to every codeword."""
    return LinearCode(c.length + 2, c.rows)


def transform_b(c: LinearCode) -> LinearCode:
    """``a(C)`` plus the generators ``(1..1, 1, 0)`` and ``(1..1, 0, 1)``."""
    ones = (1 << c.length) - 1
    extra = (ones | 1 << c.length, ones | 1 << (c.length + 1))
    return LinearCode(c.length + 2, c.rows + extra)


def apply_word(f: str, c: LinearCode) -> LinearCode:
    for letter in reversed(TransformWord(f)):
        c = transform_a(c) if letter == "a" else transform_b(c)
    return c


def word_matrix(f: str) -> Mat2:
    m = Mat2.identity()
    for letter in TransformWord(f):
        m = m @ _LETTER_MATRIX[letter]
    return m


# -- enumerator recurrences on coefficient vectors ---------------------------


def enumerator_after_a(w: WeightEnumerator) -> WeightEnumerator:
    """``y^2 W(x, y)``: weights unchanged, length grows by two."""
    return WeightEnumerator(w.length + 2, w.coeffs + (0, 0))


def enumerator_after_b(w: WeightEnumerator) -> WeightEnumerator:
    """``(x^2 + y^2) W(x, y) + 2xy W(y, x)``."""
    ell = w.length
    out = [0] * (ell + 3)
    for i, A in enumerate(w.coeffs):
        out[i] += A  # y^2 x^i y^(ell-i)
        out[i + 2] += A  # x^2 x^i y^(ell-i)
        out[ell - i + 1] += 2 * A  # 2xy x^(ell-i) y^i
    return WeightEnumerator(ell + 2, out)


def enumerator_after_word(f: str, w: WeightEnumerator) -> WeightEnumerator:
    for letter in reversed(TransformWord(f)):
        w = enumerator_after_a(w) if letter == "a" else enumerator_after_b(w)
    return w


def v_of_code(c: LinearCode, *, word: str | None = None) -> VPair:
    """``(W(1,3), W(3,1))`` of ``c``, or of ``apply_word(word, c)`` when a word is
    given, in which case the matrix recurrence is used instead of enumeration."""
    try:
        w = weight_enumerator(c)
    except ValueError as exc:
        raise ValueError(f"no way to compute the enumerator of this code: {exc}") from exc
    v = VPair(evaluate(w, 1, 3), evaluate(w, 3, 1))
    if word is not None:
        v = word_matrix(word) @ v
    return v


def pad_zero(c: LinearCode) -> LinearCode:
    """Append one zero coordinate; W(1, 3) triples."""
    return LinearCode(c.length + 1, c.rows)


# -- distinct sizes -----------------------------------------------------------


def all_words(r: int) -> Iterator[str]:
    """Words of length r in lexicographic order."""
    for letters in product("ab", repeat=r):
        yield "".join(letters)


def _matrices_by_word(r: int) -> dict[str, Mat2]:
    """``M_f`` for every word of length r, built by prepending letters."""
    level = {"": Mat2.identity()}
    for _ in range(r):
        level = {s + f: _LETTER_MATRIX[s] @ m for f, m in level.items() for s in "ab"}
    return level


def _balanced_inner_matrices(m: int, n_a: int) -> dict[str, Mat2]:
    """``M_g`` for every word g of length m with exactly n_a letters a, built by
    prepending letters and pruning prefixes that exceed either letter count."""
    level = {"": Mat2.identity()}
    for _ in range(m):
        nxt = {}
        for f, mat in level.items():
            if f.count("a") < n_a:
                nxt["a" + f] = M_A @ mat
            if f.count("b") < m - n_a:
                nxt["b" + f] = M_B @ mat
        level = nxt
    return level


def _balanced_matrices(r: int) -> dict[str, Mat2]:
    if r < 1:
        return {"": Mat2.identity()}
    out = {}
    for g, mg in _balanced_inner_matrices(r - 1, (r - 1) // 2).items():
        out["a" + g] = M_A @ mg
        out[g + "a"] = mg @ M_A
        out["b" + g] = M_B @ mg
    return out


def balanced_family(r: int) -> list[str]:
    """Words ``a g``, ``g a`` and ``b g`` where g has length r-1 with
    floor((r-1)/2) letters a and the rest b. Words with equal letter counts share
    a determinant."""
    if r < 1:
        return [""]
    m = r - 1
    n_a = m // 2
    inner = []
    for pos in combinations(range(m), n_a):
        letters = ["b"] * m
        for p in pos:
            letters[p] = "a"
        inner.append("".join(letters))
    words = {w for g in inner for w in ("a" + g, g + "a", "b" + g)}
    return sorted(words)


def size_lower_bound(n: int) -> int:
    """``ceil(binom(floor((n-4)/4), floor((n-4)/8)) ** (1/3))``, exactly."""
    if n < 4 or n % 2:
        raise ValueError("bound defined for even n >= 4")
    t = math.comb((n - 4) // 4, (n - 4) // 8)
    root = round(t ** (1 / 3))
    while root**3 < t:
        root += 1
    while root > 0 and (root - 1) ** 3 >= t:
        root -= 1
    return root


@dataclass(frozen=True)
class SizeReport:
    r: int
    balanced_only: bool
    values: frozenset[int]
    witnesses: dict[int, str] = field(compare=False, repr=False)

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return 4 * self.r

    @property
    def avoider_sizes(self) -> list[int]:
        """Sizes ``2^(4r) - W(1,3)`` of the [3,1]-avoiders in F_2^(4r)."""
        return sorted((1 << self.n) - v for v in self.values)

    @property
    def bound(self) -> int | None:
        return size_lower_bound(self.n) if self.r >= 1 else None

    def to_json(self) -> str:
        return json.dumps(
            {
                "r": self.r,
                "balanced_only": self.balanced_only,
                "count": self.count,
                "values": [str(v) for v in sorted(self.values)],
                "avoider_sizes": [str(v) for v in self.avoider_sizes],
                "bound": self.bound,
            },
            indent=2,
        )


def distinct_sizes(r: int, balanced_only: bool = False) -> SizeReport:
    """Distinct values of the first entry of ``M_f (1, 1)^T`` over words of length r."""
    if not 0 <= r <= MAX_SIZES_R:
        raise ValueError(f"r={r} outside [0, {MAX_SIZES_R}]")
    if balanced_only:
        mats = _balanced_matrices(r)
    else:
        mats = _matrices_by_word(r)
    witnesses: dict[int, str] = {}
    for f in sorted(mats):
        m = mats[f]
        witnesses.setdefault(m.alpha + m.beta, f)
    return SizeReport(r, balanced_only, frozenset(witnesses), witnesses)


def check_free_distinctness(r_max: int) -> bool:
    """True iff for each r <= r_max the 2^r matrices M_f are pairwise distinct."""
    if not 0 <= r_max <= MAX_FREE_R:
        raise ValueError(f"r_max={r_max} outside [0, {MAX_FREE_R}]")
    for r in range(1, r_max + 1):
        mats = _matrices_by_word(r)
        if len({m.as_tuple() for m in mats.values()}) != len(mats):
            return False
    return True


# -- ping-pong regions --------------------------------------------------------

_THIRD = Fraction(1, 3)


def region(v: Sequence) -> int | None:
    """1 if |y|/|x| < 1/3 or > 3, 2 if strictly between, None otherwise
    (zero entry or ratio exactly 1/3 or 3)."""
    x, y = (Fraction(c) for c in v)
    if x == 0 or y == 0:
        return None
    ratio = abs(y) / abs(x)
    if ratio < _THIRD or ratio > 3:
        return 1
    if _THIRD < ratio < 3:
        return 2
    return None


def _power_apply(m: Mat2, exponent: int, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    if exponent >= 0:
        a, b, c, d = (Fraction(e) for e in m.as_tuple())
    else:
        det = Fraction(m.det())
        a, b, c, d = m.delta / det, -m.beta / det, -m.gamma / det, m.alpha / det
    x, y = v
    for _ in range(abs(exponent)):
        x, y = a * x + b * y, c * x + d * y
    return x, y


@dataclass
class PingPongReport:
    checked: int = 0
    skipped: int = 0
    violations: list[tuple[tuple, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def pingpong_region_check(samples: Iterable[Sequence[int]], exponents: Iterable[int]) -> PingPongReport:
    """For v in region 2, nonzero powers of M_a must land in region 1; for v in
    region 1, nonzero powers of M_b must land in region 2. Exact rationals."""
    exps = [e for e in exponents if e != 0]
    report = PingPongReport()
    for v in samples:
        x, y = v
        if x == 0 or y == 0:
            raise ValueError(f"sample {tuple(v)} has a zero entry")
        src = region(v)
        if src is None:
            report.skipped += 1
            continue
        gen, target, name = (M_A, 1, "a") if src == 2 else (M_B, 2, "b")
        for e in exps:
            image = _power_apply(gen, e, (Fraction(x), Fraction(y)))
            report.checked += 1
            if region(image) != target:
                report.violations.append(((x, y), e, name))
    return report


def sample_region(which: int, count: int, rng: random.Random, bound: int = 10**6) -> list[tuple[int, int]]:
    """Random integer vectors with nonzero entries in region 1 or 2, random signs."""
    out = []
    while len(out) < count:
        x = rng.randint(1, bound) * rng.choice((-1, 1))
        y = rng.randint(1, bound) * rng.choice((-1, 1))
        if region((x, y)) == which:
            out.append((x, y))
    return out
