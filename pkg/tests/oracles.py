"""Brute-force reference implementations. Deliberately naive and independent of
the package internals: sets of tuples, itertools, no RREF."""

from itertools import combinations, product


def vectors(n):
    """All 0/1 tuples of length n."""
    return list(product((0, 1), repeat=n))


def add(u, v):
    return tuple((a + b) % 2 for a, b in zip(u, v))


def dot(u, v):
    return sum(a * b for a, b in zip(u, v)) % 2


def to_int(v):
    return sum(b << j for j, b in enumerate(v))


def to_tuple(x, n):
    return tuple((x >> j) & 1 for j in range(n))


def span_set(rows, n):
    out = {tuple([0] * n)}
    for r in rows:
        out |= {add(w, r) for w in out}
    return out


def brute_rank(rows, n):
    return len(span_set(rows, n)).bit_length() - 1


def brute_nullspace(rows, n):
    return {v for v in vectors(n) if all(dot(r, v) == 0 for r in rows)}


def brute_weights(words, n):
    counts = [0] * (n + 1)
    for w in words:
        counts[sum(w)] += 1
    return counts


def brute_subspaces(n):
    """Every subspace of F_2^n as a frozenset of tuples."""
    seen = set()
    frontier = {frozenset([tuple([0] * n)])}
    while frontier:
        seen |= frontier
        nxt = set()
        for S in frontier:
            for v in vectors(n):
                if v not in S:
                    nxt.add(frozenset(S | {add(s, v) for s in S}))
        frontier = nxt - seen
    return seen


def brute_flats(n, k):
    """Every k-flat of F_2^n as a frozenset of integer point codes."""
    out = set()
    for S in brute_subspaces(n):
        if len(S) != 1 << k:
            continue
        for rep in vectors(n):
            out.add(frozenset(to_int(add(rep, s)) for s in S))
    return out


def brute_profile(points, n, k):
    pts = set(points)
    return sorted({len(pts & F) for F in brute_flats(n, k)})


def brute_independent_sets(n, edges):
    """Count subsets of {1..n} containing no edge, scanning combinations."""
    total = 0
    for size in range(n + 1):
        for W in combinations(range(1, n + 1), size):
            Ws = set(W)
            if not any(set(e) <= Ws for e in edges):
                total += 1
    return total
