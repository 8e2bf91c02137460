"""Dense matrices over GF(q) with width-``t`` column blocks.

Blocks are labelled ``1..n`` to match ground sets ``[n]`` and user sets
``[m]``.  A :class:`BlockMatrix` is immutable; every operation that
changes entries returns a new matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import FieldMismatch, NoSolution, ShapeMismatch
from .gf import PrimeField


def _mod_matmul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    if q < 2**20 and a.shape[-1] < 2**20:
        return (a.astype(np.int64) @ b.astype(np.int64)) % q
    return np.array((a.astype(object) @ b.astype(object)) % q, dtype=np.int64)


class BlockMatrix:
    """An ``rows x (n*t)`` matrix over ``field`` split into ``n`` blocks of width ``t``."""

    __slots__ = ("field", "t", "entries")

    def __init__(self, field: PrimeField, entries, t: int = 1):
        arr = np.array(entries, dtype=np.int64, ndmin=2)
        if arr.ndim != 2:
            raise ShapeMismatch("entries must be two-dimensional")
        if t < 1 or arr.shape[1] % t:
            raise ShapeMismatch(f"{arr.shape[1]} columns do not split into blocks of width {t}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.modulus):
            raise ValueError(f"entries must be canonical residues of {field!r}")
        arr.setflags(write=False)
        self.field = field
        self.t = t
        self.entries = arr

    @classmethod
    def from_blocks(cls, field: PrimeField, blocks: Sequence, rows: int | None = None) -> "BlockMatrix":
        blocks = [np.array(b, dtype=np.int64).reshape(len(b), -1) for b in blocks]
        if not blocks:
            return cls(field, np.zeros((rows or 0, 0), dtype=np.int64))
        return cls(field, np.hstack(blocks) % field.modulus, t=blocks[0].shape[1])

    @classmethod
    def from_columns(cls, field: PrimeField, columns: Sequence[Sequence[int]]) -> "BlockMatrix":
        """Scalar (t=1) matrix from a list of column vectors."""
        return cls(field, np.array(columns, dtype=np.int64).T % field.modulus)

    @property
    def q(self) -> int:
        return self.field.modulus

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1] // self.t

    def _check_labels(self, labels):
        for i in labels:
            if not 1 <= i <= self.n:
                raise ShapeMismatch(f"block {i} outside 1..{self.n}")

    def block(self, i: int) -> np.ndarray:
        self._check_labels([i])
        return self.entries[:, (i - 1) * self.t : i * self.t]

    def columns(self, labels: Iterable[int]) -> np.ndarray:
        """``H^N``: blocks of ``labels`` concatenated in increasing index order."""
        labels = sorted(set(labels))
        self._check_labels(labels)
        idx = [(i - 1) * self.t + k for i in labels for k in range(self.t)]
        return self.entries[:, idx]

    def select(self, labels: Iterable[int]) -> "BlockMatrix":
        return BlockMatrix(self.field, self.columns(labels), self.t)

    def rank(self, labels: Iterable[int] | None = None) -> int:
        sub = self.entries if labels is None else self.columns(labels)
        if sub.size == 0:
            return 0
        return kernels.rank_mod(sub, self.q)

    def left_multiply(self, a) -> "BlockMatrix":
        a = np.asarray(a, dtype=np.int64)
        if a.shape[1] != self.rows:
            raise ShapeMismatch("left factor has wrong number of columns")
        return BlockMatrix(self.field, _mod_matmul(a, self.entries, self.q), self.t)

    def scale_block(self, i: int, b) -> "BlockMatrix":
        """Replace ``H^{i}`` by ``H^{i} B`` for a ``t x t`` matrix ``B``."""
        b = np.asarray(b, dtype=np.int64).reshape(self.t, self.t)
        out = self.entries.copy()
        out[:, (i - 1) * self.t : i * self.t] = _mod_matmul(self.block(i), b, self.q)
        return BlockMatrix(self.field, out, self.t)

    def replace_block(self, i: int, block) -> "BlockMatrix":
        out = self.entries.copy()
        out[:, (i - 1) * self.t : i * self.t] = np.asarray(block, dtype=np.int64).reshape(self.rows, self.t)
        return BlockMatrix(self.field, out, self.t)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.t == other.t
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.field, self.t, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"BlockMatrix({self.field!r}, rows={self.rows}, n={self.n}, t={self.t})"

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "t": self.t,
            "rows": self.rows,
            "blocks": self.n,
            "entries": self.entries.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BlockMatrix":
        field = PrimeField(int(data["q"]))
        t = int(data.get("t", 1))
        rows = int(data["rows"])
        entries = np.array(data["entries"], dtype=np.int64).reshape(rows, -1)
        m = cls(field, entries, t)
        if "blocks" in data and m.n != int(data["blocks"]):
            raise ShapeMismatch(f"declared {data['blocks']} blocks, found {m.n}")
        return m


def identity(field: PrimeField, size: int, t: int = 1) -> BlockMatrix:
    return BlockMatrix(field, np.eye(size, dtype=np.int64), t)


def _as_array(m) -> tuple[np.ndarray, int | None]:
    if isinstance(m, BlockMatrix):
        return m.entries, m.q
    return np.array(m, dtype=np.int64, ndmin=2), None


def rank(m, q: int | None = None, labels: Iterable[int] | None = None) -> int:
    """Rank over GF(q) of a :class:`BlockMatrix` (optionally restricted to ``labels``) or a raw array."""
    if isinstance(m, BlockMatrix):
        return m.rank(labels)
    arr = np.array(m, dtype=np.int64, ndmin=2)
    if q is None:
        raise ValueError("q is required for raw arrays")
    if arr.size == 0:
        return 0
    return kernels.rank_mod(arr % q, q)


def rref(m, q: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and the 1-indexed pivot columns.

    Pivot rows are chosen as the first nonzero entry scanning top to bottom.
    """
    arr, mq = _as_array(m)
    q = mq if mq is not None else q
    if q is None:
        raise ValueError("q is required for raw arrays")
    a = [[int(x) % q for x in row] for row in arr]
    nrows = len(a)
    ncols = arr.shape[1] if arr.ndim == 2 else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, q)
        a[r] = [x * inv % q for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % q for x, y in zip(a[i], a[r])]
        pivots.append(c + 1)
        r += 1
    return np.array(a, dtype=np.int64).reshape(nrows, ncols), pivots


def solve(a, b, q: int) -> np.ndarray | None:
    """One solution ``X`` of ``A X = B`` over GF(q) (free variables set to 0), or ``None``."""
    a = np.array(a, dtype=np.int64, ndmin=2)
    b = np.array(b, dtype=np.int64)
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise ShapeMismatch("row counts differ")
    ncols = a.shape[1]
    red, pivots = rref(np.hstack([a % q, b % q]), q)
    x = np.zeros((ncols, b.shape[1]), dtype=np.int64)
    for row, pc in enumerate(pivots):
        if pc > ncols:
            return None
        x[pc - 1] = red[row, ncols:]
    return x


def in_column_space(m, v, q: int | None = None) -> bool:
    """True iff every column of ``v`` lies in the column span of ``m``."""
    arr, mq = _as_array(m)
    if isinstance(v, BlockMatrix):
        if mq is not None and v.field.modulus != mq:
            raise FieldMismatch("matrices over different fields")
        vq = v.q
        v = v.entries
    else:
        vq = None
        v = np.array(v, dtype=np.int64)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
    q = mq or vq or q
    if q is None:
        raise ValueError("q is required for raw arrays")
    if arr.shape[0] != v.shape[0]:
        raise ShapeMismatch("row counts differ")
    if not v.any():
        return True
    base = rank(arr, q) if arr.size else 0
    return rank(np.hstack([arr, v]) if arr.size else v, q) == base


def is_invertible(block, q: int) -> bool:
    block = np.array(block, dtype=np.int64, ndmin=2)
    return block.shape[0] == block.shape[1] and rank(block, q) == block.shape[0]


@dataclass(frozen=True)
class CircuitCertificate:
    """Coefficients expressing ``H^{pivot}`` as ``sum_i H^{i} M_{pivot,i}`` over ``circuit``."""

    circuit: tuple[int, ...]
    pivot: int
    coefficients: dict
    invertible: dict

    @property
    def valid(self) -> bool:
        return all(self.invertible.values())

    def reconstruct(self, h: BlockMatrix) -> np.ndarray:
        acc = np.zeros((h.rows, h.t), dtype=np.int64)
        for i, coef in self.coefficients.items():
            acc = (acc + _mod_matmul(h.block(i), np.asarray(coef), h.q)) % h.q
        return acc


def solve_combination(h: BlockMatrix, circuit: Iterable[int], pivot: int) -> CircuitCertificate:
    """Write block ``pivot`` as a combination of the other blocks of ``circuit``.

    Raises :class:`NoSolution` when the pivot block is outside their span.
    For ``t = 1`` each coefficient is a scalar and invertible means nonzero.
    """
    circuit = tuple(sorted(set(circuit)))
    if pivot not in circuit:
        raise ValueError(f"pivot {pivot} not in {circuit}")
    others = [i for i in circuit if i != pivot]
    x = solve(h.columns(others), h.block(pivot), h.q)
    if x is None:
        raise NoSolution(f"block {pivot} is not in the span of blocks {others}")
    t = h.t
    coefs = {i: x[k * t : (k + 1) * t] for k, i in enumerate(others)}
    for c in coefs.values():
        c.setflags(write=False)
    return CircuitCertificate(
        circuit=circuit,
        pivot=pivot,
        coefficients=coefs,
        invertible={i: is_invertible(c, h.q) for i, c in coefs.items()},
    )


def random_invertible(size: int, field: PrimeField, seed=None) -> np.ndarray:
    """Uniformly random invertible ``size x size`` matrix; deterministic in ``seed``."""
    if size < 1:
        raise ValueError("size must be >= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    while True:
        a = rng.integers(0, field.modulus, size=(size, size), dtype=np.int64)
        if rank(a, field.modulus) == size:
            return a
