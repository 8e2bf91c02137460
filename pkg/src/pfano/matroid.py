"""Matroid constraint systems and verification of linear representations.

A constraint system declares a rank value plus some basis sets and some
circuit sets over the ground set ``[n]``.  A block matrix represents it
when every block is invertible, every declared basis is a basis of the
matrix and every declared circuit is a circuit of the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import kernels
from .errors import GroundSetTooLarge, NoSolution, NotPrime, ShapeMismatch
from .gf import PrimeField, is_prime
from .matrix import BlockMatrix, CircuitCertificate, solve_combination

MAX_RANK_TABLE_N = 20
MAX_AXIOM_N = 12


def _check_p(p: int):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)


@dataclass(frozen=True)
class MatroidConstraints:
    n: int
    rank: int
    bases: tuple[frozenset, ...]
    circuits: tuple[frozenset, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(frozenset(b) for b in self.bases))
        object.__setattr__(self, "circuits", tuple(frozenset(c) for c in self.circuits))
        ground = frozenset(range(1, self.n + 1))
        for s in self.bases + self.circuits:
            if not s <= ground:
                raise ValueError(f"{sorted(s)} is not a subset of [{self.n}]")
        for b in self.bases:
            if len(b) != self.rank:
                raise ValueError(f"basis {sorted(b)} does not have size {self.rank}")
        if set(self.bases) & set(self.circuits):
            raise ValueError("a set cannot be declared both basis and circuit")
        for c in self.circuits:
            if any(c <= b for b in self.bases):
                raise ValueError(f"circuit {sorted(c)} is contained in a declared basis")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "bases": [sorted(b) for b in self.bases],
            "circuits": [sorted(c) for c in self.circuits],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MatroidConstraints":
        return cls(
            n=int(data["n"]),
            rank=int(data["rank"]),
            bases=tuple(frozenset(int(x) for x in b) for b in data.get("bases", [])),
            circuits=tuple(frozenset(int(x) for x in c) for c in data.get("circuits", [])),
        )


def _p_family_circuits(p: int) -> list[frozenset]:
    n = 2 * p + 3
    head = set(range(1, p + 2))
    circuits = [frozenset((head - {i}) | {n - i}) for i in range(1, p + 2)]
    circuits += [frozenset({i, n - i, n}) for i in range(p + 2, 2 * p + 3)]
    return circuits


def p_fano_constraints(p: int) -> MatroidConstraints:
    """The class p-Fano matroid: ``[p+1]`` is a basis, ``N_1 .. N_n`` are circuits."""
    _check_p(p)
    n = 2 * p + 3
    circuits = _p_family_circuits(p) + [frozenset(range(p + 2, 2 * p + 3))]
    return MatroidConstraints(n, p + 1, (frozenset(range(1, p + 2)),), tuple(circuits), f"{p}-fano")


def p_nonfano_constraints(p: int) -> MatroidConstraints:
    """Same as :func:`p_fano_constraints` with ``[p+2:2p+2]`` declared a basis instead."""
    _check_p(p)
    n = 2 * p + 3
    bases = (frozenset(range(1, p + 2)), frozenset(range(p + 2, 2 * p + 3)))
    return MatroidConstraints(n, p + 1, bases, tuple(_p_family_circuits(p)), f"{p}-nonfano")


def h_p_matrix(p: int, field: PrimeField) -> BlockMatrix:
    """The scalar matrix ``H_p`` with ``p+1`` rows and ``2p+3`` columns.

    Columns ``1..p+1`` are the unit vectors, column ``i`` in ``[p+2:2p+2]``
    is the all-ones vector with a zero in row ``n-i``, and column ``n`` is
    all ones.
    """
    _check_p(p)
    r, n = p + 1, 2 * p + 3
    h = np.zeros((r, n), dtype=np.int64)
    h[:, :r] = np.eye(r, dtype=np.int64)
    for i in range(p + 2, 2 * p + 3):
        h[:, i - 1] = 1
        h[n - i - 1, i - 1] = 0
    h[:, n - 1] = 1
    return BlockMatrix(field, h % field.modulus)


def lemma1_matrix(p: int, field: PrimeField) -> np.ndarray:
    """All-ones ``(p+1) x (p+1)`` matrix with a zero anti-diagonal."""
    a = np.ones((p + 1, p + 1), dtype=np.int64)
    a[np.arange(p + 1), p - np.arange(p + 1)] = 0
    return a % field.modulus


def is_independent_set(h: BlockMatrix, s: Iterable[int]) -> bool:
    s = set(s)
    return h.rank(s) == len(s) * h.t


def is_circuit_set(h: BlockMatrix, s: Iterable[int]) -> tuple[bool, CircuitCertificate | None]:
    """Check the circuit rank equalities and invertible combination coefficients.

    Returns ``(ok, certificate)``; the certificate uses the smallest element
    of ``s`` as its pivot.
    """
    s = list(s)
    if len(set(s)) != len(s):
        raise ValueError("circuit candidates must have distinct elements")
    if len(s) < 2:
        raise ValueError("circuit candidates need at least two elements")
    s = sorted(s)
    target = (len(s) - 1) * h.t
    if h.rank(s) != target:
        return False, None
    for j in s:
        if h.rank([i for i in s if i != j]) != target:
            return False, None
    certs = []
    for j in s:
        try:
            cert = solve_combination(h, s, j)
        except NoSolution:
            return False, None
        if not cert.valid:
            return False, None
        certs.append(cert)
    return True, certs[0]


@dataclass(frozen=True)
class SetCheck:
    kind: str
    members: tuple[int, ...]
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class RepresentationReport:
    checks: tuple[SetCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[SetCheck]:
        return [c for c in self.checks if not c.ok]

    def __bool__(self):
        return self.passed


def check_representation(h: BlockMatrix, c: MatroidConstraints) -> RepresentationReport:
    """Verify ``h`` against the declared sets of ``c`` plus block invertibility."""
    if h.n != c.n:
        raise ShapeMismatch(f"matrix has {h.n} blocks, constraints have ground set [{c.n}]")
    checks = []
    for i in range(1, h.n + 1):
        ok = h.rank([i]) == h.t
        checks.append(SetCheck("block", (i,), ok, "" if ok else "block not invertible"))
    full = h.rank()
    for b in c.bases:
        rb = h.rank(b)
        ok = rb == len(b) * h.t and full == c.rank * h.t and rb == full
        checks.append(SetCheck("basis", tuple(sorted(b)), ok, f"rank {rb}, full rank {full}"))
    for circ in c.circuits:
        ok, _ = is_circuit_set(h, circ)
        checks.append(SetCheck("circuit", tuple(sorted(circ)), ok, f"rank {h.rank(circ)}"))
    return RepresentationReport(tuple(checks))


@dataclass(frozen=True)
class RankFunction:
    """Rank values of every subset of ``[n]``, indexed by bitmask (bit ``i-1`` is element ``i``)."""

    n: int
    table: tuple[int, ...]
    nonintegral: tuple[int, ...] = field(default=())

    def __getitem__(self, subset) -> int:
        if isinstance(subset, int):
            return self.table[subset]
        return self.table[to_mask(subset)]


def to_mask(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        m |= 1 << (i - 1)
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def rank_function_from_matrix(h: BlockMatrix) -> RankFunction:
    if h.n > MAX_RANK_TABLE_N:
        raise GroundSetTooLarge(f"n = {h.n} exceeds {MAX_RANK_TABLE_N}")
    ranks = kernels.subset_block_ranks(h.entries, h.t, h.q)
    bad = tuple(mask for mask, r in enumerate(ranks) if r % h.t)
    return RankFunction(h.n, tuple(r // h.t for r in ranks), bad)


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self):
        return self.ok


def check_matroid_axioms(r: RankFunction) -> AxiomCheck:
    """Exhaustively test cardinality, monotonicity and submodularity."""
    if r.n > MAX_AXIOM_N:
        raise GroundSetTooLarge(f"n = {r.n} exceeds {MAX_AXIOM_N}")
    if r.nonintegral:
        return AxiomCheck(False, f"non-integral rank on {list(from_mask(r.nonintegral[0]))}")
    size = 1 << r.n
    f = np.array(r.table, dtype=np.int64)
    if len(f) != size:
        return AxiomCheck(False, "table does not cover every subset")
    if f[0] != 0:
        return AxiomCheck(False, "f(empty) != 0")
    masks = np.arange(size)
    card = np.array([bin(m).count("1") for m in range(size)])
    bad = np.nonzero((f > card) | (f < 0))[0]
    if bad.size:
        return AxiomCheck(False, f"f({list(from_mask(int(bad[0])))}) exceeds its cardinality")
    for i in range(r.n):
        lower = masks[(masks >> i) & 1 == 0]
        drop = np.nonzero(f[lower] > f[lower | (1 << i)])[0]
        if drop.size:
            s = int(lower[drop[0]])
            return AxiomCheck(False, f"not monotone at {list(from_mask(s))} + {i + 1}")
    for a in range(size):
        lhs = f[a | masks] + f[a & masks]
        rhs = f[a] + f
        bad = np.nonzero(lhs > rhs)[0]
        if bad.size:
            b = int(bad[0])
            return AxiomCheck(False, f"not submodular on {list(from_mask(a))}, {list(from_mask(b))}")
    return AxiomCheck(True)
