"""Unnormalized existence oracle for the p=2 matroids.

Columns 1..3 are the identity and columns 4..7 range over all of
GF(q)^3.  Rank conditions are evaluated with explicit 3x3 determinants
and 2x2 minors, not elimination.
"""

import itertools

import numpy as np

FANO_LINES = [{1, 2, 4}, {1, 3, 5}, {2, 3, 6}, {1, 6, 7}, {2, 5, 7}, {3, 4, 7}, {4, 5, 6}]


def _vectors(q):
    return np.array(list(itertools.product(range(q), repeat=3)), dtype=np.int64)


def _det(a, b, c, q):
    return (
        a[..., 0] * (b[..., 1] * c[..., 2] - b[..., 2] * c[..., 1])
        - a[..., 1] * (b[..., 0] * c[..., 2] - b[..., 2] * c[..., 0])
        + a[..., 2] * (b[..., 0] * c[..., 1] - b[..., 1] * c[..., 0])
    ) % q


def _pair_independent(a, b, q):
    cross = np.stack([
        a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
        a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
        a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0],
    ]) % q
    return cross.any(axis=0)


def count_representations(q: int, nonfano: bool) -> int:
    """Number of matrices [I | c4 c5 c6 c7] over GF(q) meeting the declared sets."""
    vec = _vectors(q)
    k = len(vec)
    idx = np.array(list(itertools.product(range(k), repeat=4)), dtype=np.int64)
    cols = {i: np.broadcast_to(np.eye(3, dtype=np.int64)[i - 1], (len(idx), 3)) for i in (1, 2, 3)}
    for j, i in enumerate((4, 5, 6, 7)):
        cols[i] = vec[idx[:, j]]
    ok = np.ones(len(idx), dtype=bool)
    for i in (4, 5, 6, 7):
        ok &= cols[i].any(axis=1)
    lines = [s for s in FANO_LINES if not (nonfano and s == {4, 5, 6})]
    for a, b, c in (sorted(s) for s in lines):
        ok &= _det(cols[a], cols[b], cols[c], q) == 0
        for x, y in ((a, b), (a, c), (b, c)):
            ok &= _pair_independent(cols[x], cols[y], q)
    if nonfano:
        ok &= _det(cols[4], cols[5], cols[6], q) != 0
    return int(ok.sum())
