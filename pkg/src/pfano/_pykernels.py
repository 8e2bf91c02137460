"""Pure-Python implementations of the rank kernels.

Used when the compiled ``_kernels`` extension is unavailable, and as the
reference the compiled version is benchmarked and tested against.
"""


def _rows(a):
    return [[int(x) for x in row] for row in a]


def rank_mod(a, q):
    """Rank over GF(q) of a 2-D integer array (entries already reduced)."""
    rows = _rows(a)
    if not rows:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if rows[r][c]:
                piv = r
                break
        if piv < 0:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = pow(prow[c], -1, q)
        for r in range(rank + 1, nrows):
            f = rows[r][c]
            if f:
                f = f * inv % q
                row = rows[r]
                for k in range(c, ncols):
                    row[k] = (row[k] - f * prow[k]) % q
        rank += 1
    return rank


def subset_block_ranks(a, t, q):
    """Ranks of every block-column subset, indexed by bitmask (bit i = block i+1)."""
    rows = _rows(a)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    n = ncols // t
    out = [0] * (1 << n)
    for mask in range(1, 1 << n):
        cols = [b * t + k for b in range(n) if mask >> b & 1 for k in range(t)]
        out[mask] = rank_mod([[row[c] for c in cols] for row in rows], q) if nrows else 0
    return out


def circuit_triples(a, b, cands, q):
    """For each row ``v`` of ``cands``: is ``{a, v, b}`` a circuit (rank 2, every pair rank 2)?"""
    a = [int(x) for x in a]
    b = [int(x) for x in b]
    out = []
    for v in cands:
        v = [int(x) for x in v]
        cols = (a, v, b)
        full = [list(r) for r in zip(*cols)]
        ok = rank_mod(full, q) == 2
        if ok:
            for i, j in ((0, 1), (0, 2), (1, 2)):
                if rank_mod([[x, y] for x, y in zip(cols[i], cols[j])], q) != 2:
                    ok = False
                    break
        out.append(ok)
    return out
