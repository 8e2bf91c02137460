"""Independent brute-force oracles shared by the tests.

None of these use Gaussian elimination: ranks come from enumerating
linear combinations or spans directly.
"""

import itertools

import numpy as np


def zero_combination_supports(cols: np.ndarray, q: int) -> set:
    """Supports (bitmasks) of every nonzero coefficient vector killing ``cols``."""
    k = cols.shape[1]
    out = set()
    for coef in itertools.product(range(q), repeat=k):
        if not any(coef):
            continue
        if not ((cols @ np.array(coef)) % q).any():
            out.add(sum(1 << i for i, c in enumerate(coef) if c))
    return out


def brute_rank(cols: np.ndarray, q: int) -> int:
    """Largest linearly independent column subset, by exhaustive combination scan."""
    cols = np.asarray(cols, dtype=np.int64)
    k = cols.shape[1]
    dead = zero_combination_supports(cols, q)
    best = 0
    for mask in range(1 << k):
        if not any(d & mask == d for d in dead):
            best = max(best, bin(mask).count("1"))
    return best


def span_size(cols: np.ndarray, q: int) -> int:
    """Number of distinct vectors in the column span."""
    cols = np.asarray(cols, dtype=np.int64)
    if cols.size == 0:
        return 1
    seen = set()
    for coef in itertools.product(range(q), repeat=cols.shape[1]):
        seen.add(tuple(((cols @ np.array(coef)) % q).tolist()))
    return len(seen)


def span_rank(cols: np.ndarray, q: int) -> int:
    """Rank as log_q of the span size."""
    size, r = span_size(cols, q), 0
    while q**r < size:
        r += 1
    assert q**r == size
    return r


def subset_ranks_by_span(cols: np.ndarray, q: int) -> dict:
    """Rank of every column subset, by incremental span growth (t = 1)."""
    cols = np.asarray(cols, dtype=np.int64)
    n = cols.shape[1]
    spans = {0: frozenset({tuple([0] * cols.shape[0])})}
    ranks = {0: 0}
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        base = spans[rest]
        v = cols[:, low]
        if tuple(v.tolist()) in base:
            spans[mask] = base
            ranks[mask] = ranks[rest]
        else:
            spans[mask] = frozenset(tuple(((np.array(u) + c * v) % q).tolist()) for u in base for c in range(q))
            ranks[mask] = ranks[rest] + 1
    return ranks


def mask_of(subset) -> int:
    return sum(1 << (i - 1) for i in subset)


def know_masks_from(inst) -> list:
    """Side-information bitmasks built straight from the interfering sets."""
    full = (1 << inst.m) - 1
    return [full & ~mask_of(inst.B(i)) & ~(1 << (i - 1)) for i in range(1, inst.m + 1)]


def acyclic_by_peeling(know: list, mask: int) -> bool:
    """Repeatedly drop users with no known message inside the set; acyclic iff all drop."""
    while mask:
        sinks = 0
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if not know[v] & mask:
                sinks |= low
            m ^= low
        if not sinks:
            return False
        mask &= ~sinks
    return True


def minimal_cyclic_literal(inst, subset) -> bool:
    """Cyclic ordering with ``B_i`` meeting the set in all but ``i`` and its successor.

    That condition says each member knows exactly one other member, so the
    successor is forced; the set is minimal cyclic iff following successors
    from any member visits every member once and returns.
    """
    s = set(subset)
    if len(s) < 2:
        return False
    succ = {}
    for i in s:
        known = s - set(inst.B(i)) - {i}
        if len(known) != 1:
            return False
        succ[i] = known.pop()
    start = min(s)
    seen, cur = [], start
    for _ in range(len(s)):
        seen.append(cur)
        cur = succ[cur]
    return cur == start and len(set(seen)) == len(s)


def acyclic_literal(inst, users) -> bool:
    """No subset of ``users`` is minimal cyclic."""
    users = sorted(users)
    for k in range(2, len(users) + 1):
        for sub in itertools.combinations(users, k):
            if minimal_cyclic_literal(inst, sub):
                return False
    return True


def mais_exhaustive(inst, upto: int):
    """Largest acyclic subset size, checking every subset of each size up to ``upto``.

    Returns ``(best, counts)`` where ``counts[k]`` is the number of acyclic
    ``k``-subsets examined.
    """
    know = know_masks_from(inst)
    best, counts = 0, {}
    for k in range(1, upto + 1):
        c = 0
        for sub in itertools.combinations(range(inst.m), k):
            if acyclic_by_peeling(know, sum(1 << v for v in sub)):
                c += 1
        counts[k] = c
        if c:
            best = k
    return best, counts
