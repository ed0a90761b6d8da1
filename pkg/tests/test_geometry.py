import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flatavoid.geometry import (
    BudgetExceeded,
    Flat,
    PointSet,
    SetFormatError,
    complement,
    count_flats,
    enumerate_flats,
    flat_point_batches,
    flat_points,
    format_set,
    is_avoider,
    is_evasive,
    parse_set,
    profile,
    symmetric_difference,
    union,
)

from oracles import brute_flats, brute_profile


def random_flat(n, k, rng):
    while True:
        f = Flat(n, tuple(rng.randrange(1 << n) for _ in range(k)), rng.randrange(1 << n))
        if f.k == k:
            return f


def test_flat_points_examples():
    assert flat_points(Flat.point(4, 9)) == [9]
    f = Flat.coordinate_flat(4, {0: 1, 1: 1})
    assert flat_points(f) == [3, 7, 11, 15]
    assert flat_points(Flat(3, (1, 2, 4), 5)) == list(range(8))


def test_flat_canonical_form():
    a = Flat(4, (0b0011, 0b0110), 0b1000)
    b = Flat(4, (0b0101, 0b0011), 0b1011)
    assert a == b
    assert a.rep & (1 << a.pivots[0]) == 0 and a.rep & (1 << a.pivots[1]) == 0
    assert 0b1000 in a and 0b0001 not in a


@pytest.mark.parametrize("n,k,expected", [(4, 3, 30), (3, 3, 1), (5, 5, 1), (2, 1, 6)])
def test_enumerate_flats_examples(n, k, expected):
    flats = list(enumerate_flats(n, k))
    assert len(flats) == expected == count_flats(n, k)


def test_one_flats_are_point_pairs():
    pairs = {frozenset(f.points()) for f in enumerate_flats(2, 1)}
    assert pairs == {frozenset(p) for p in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]}


@pytest.mark.parametrize("n", range(1, 5))
def test_enumerate_flats_matches_brute_force(n):
    for k in range(n + 1):
        got = [frozenset(f.points()) for f in enumerate_flats(n, k)]
        assert len(got) == len(set(got))
        assert set(got) == brute_flats(n, k)


@pytest.mark.parametrize("n", range(1, 9))
def test_flat_counts_up_to_eight(n):
    for k in range(1, n + 1):
        total = 0
        for batch in flat_point_batches(n, k):
            total += batch.shape[0]
        assert total == count_flats(n, k)


@pytest.mark.parametrize("n,k", [(5, 2), (6, 3), (5, 3)])
def test_flats_distinct_and_affinely_closed(n, k):
    seen = set()
    for f in enumerate_flats(n, k):
        pts = f.points()
        key = tuple(pts)
        assert key not in seen
        seen.add(key)
        s = set(pts)
        assert len(s) == 1 << k
        p0 = pts[0]
        assert all(p0 ^ q ^ r in s for q in pts for r in pts)


def test_batches_match_stream():
    stream = [tuple(f.points()) for f in enumerate_flats(5, 2)]
    batched = [tuple(r) for b in flat_point_batches(5, 2) for r in b.tolist()]
    assert stream == batched


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        list(flat_point_batches(10, 3, budget=10**6))
    with pytest.raises(BudgetExceeded):
        profile(PointSet(10), 3, budget=10**6)
    assert count_flats(10, 3) < 2**31


def test_profile_examples():
    assert profile(PointSet(4), 2) == [0]
    two_flat = Flat.coordinate_flat(4, {0: 1, 1: 1}).to_pointset()
    prof = profile(two_flat, 3)
    assert set(prof) <= {0, 2, 4} and all(v % 2 == 0 for v in prof)
    assert profile(PointSet.from_points(3, [5]), 1) == [0, 1]


def test_avoider_examples():
    two_flat = Flat.coordinate_flat(4, {0: 1, 1: 1}).to_pointset()
    assert is_avoider(two_flat, 3, 1)
    assert not is_avoider(PointSet.from_points(3, [5]), 1, 1)
    six = PointSet.from_points(4, [3, 7, 11, 12, 13, 14])
    assert is_avoider(six, 3, 1)
    with pytest.raises(ValueError):
        is_avoider(six, 1, 3)


def test_evasive_examples():
    assert is_evasive(PointSet(5), 3, 0)
    assert not is_evasive(PointSet.full(5), 3, 7)
    assert is_evasive(PointSet.full(5), 3, 8)


def test_evasive_complement_gives_avoider():
    rng = random.Random(7)
    hits = 0
    for _ in range(200):
        s = PointSet.from_points(5, rng.sample(range(32), 10))
        if is_evasive(s, 3, 6):
            hits += 1
            assert is_avoider(complement(s), 3, 1)
    assert hits > 0


def test_set_algebra_examples():
    rng = random.Random(1)
    s = PointSet.from_points(4, rng.sample(range(16), 5))
    assert len(s ^ s) == 0
    assert union(s, PointSet(4)) == s
    f1 = Flat.coordinate_flat(4, {0: 1, 1: 1}).to_pointset()
    f2 = Flat.coordinate_flat(4, {2: 1, 3: 1}).to_pointset()
    assert len(union(f1, f2)) == 7
    assert len(symmetric_difference(f1, f2)) == 6
    with pytest.raises(ValueError):
        s | PointSet(3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_profile_matches_brute_force(args):
    n, pts = args
    s = PointSet.from_points(n, pts)
    for k in range(1, n + 1):
        assert profile(s, k) == brute_profile(pts, n, k)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_complement_duality(args):
    n, pts = args
    s = PointSet.from_points(n, pts)
    for k in range(1, n + 1):
        p = set(profile(s, k))
        q = set(profile(complement(s), k))
        assert {(1 << k) - t for t in p} == q


def test_threaded_profile_matches_serial():
    rng = random.Random(3)
    s = PointSet.from_points(7, rng.sample(range(128), 40))
    assert profile(s, 3, threads=4) == profile(s, 3)


def test_even_profile_closure():
    rng = random.Random(11)
    k = 3
    for _ in range(40):
        n = rng.randint(4, 7)
        groups = []
        for _ in range(rng.randint(1, 3)):
            groups.append([random_flat(n, n - k + 1, rng) for _ in range(rng.randint(1, 4))])
        diffs = [symmetric_difference(*(f.to_pointset() for f in g)) for g in groups]
        for d in diffs:
            assert all(v % 2 == 0 for v in profile(d, k))
        assert is_avoider(union(*diffs), k, 1)


def test_set_file_roundtrip():
    s = PointSet.from_points(5, [0, 3, 31])
    for style in ("points", "hex", "auto"):
        assert parse_set(format_set(s, style)) == s
    assert format_set(PointSet.from_points(2, [0, 3]), "hex") == "n=2\nhex=9\n"
    assert format_set(PointSet.from_points(4, [0, 15]), "hex") == "n=4\nhex=8001\n"
    assert parse_set("n=3\npoints=\n") == PointSet(3)


@pytest.mark.parametrize("text", ["n=3\npoints=9\n", "n=2\nhex=1ff\n", "n=3\n", "m=3\npoints=1\n", "n=3\nfoo=1\n"])
def test_set_file_errors(text):
    with pytest.raises(SetFormatError):
        parse_set(text)


def test_pointset_validation():
    with pytest.raises(ValueError):
        PointSet(25)
    with pytest.raises(ValueError):
        PointSet(3, np.zeros(7, dtype=bool))
    with pytest.raises(ValueError):
        PointSet.from_points(3, [8])


@pytest.mark.parametrize("n,k", [(8, 3), (6, 4), (5, 2), (3, 1)])
def test_cached_scan_matches_streamed_scan(n, k):
    rng = random.Random(n * 10 + k)
    for size in (0, 1, (1 << n) // 3, 1 << n):
        s = PointSet.from_points(n, rng.sample(range(1 << n), size))
        # threads > 1 takes the streaming path, threads == 1 the packed cache
        assert profile(s, k) == profile(s, k, threads=2)
        if n <= 6:
            expected = sorted({int(s.mask[f.points()].sum()) for f in enumerate_flats(n, k)})
            assert profile(s, k) == expected
