"""Normalized exhaustive search for scalar representations.

Rank conditions are unchanged by invertible row operations and by scaling
a column with a nonzero scalar.  Both symmetries are quotiented out before
enumerating:

* a declared basis is mapped to the identity (row operations), and
* every enumerated column has its first nonzero entry fixed to 1 (column
  scaling).

For the p-Fano / p-non-Fano families the circuits additionally pin down
the support of every column, and each circuit ``{i, n-i, n}`` is checked
as soon as its columns are assigned, which prunes almost every branch.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import NotPrime, SearchSpaceTooLarge
from .gf import PrimeField, is_prime
from .indexcoding import (
    Encoder,
    RateReport,
    broadcast_rate_report,
    build_instance,
    check_decoding,
    encoder_h_p,
)
from .matrix import BlockMatrix
from .matroid import MatroidConstraints, check_representation, p_fano_constraints, p_nonfano_constraints

DEFAULT_BUDGET = 10**9

FAMILY_NORMALIZATION = (
    "columns 1..p+1 fixed to the identity (basis [p+1] under row operations); "
    "column n-i has support [p+1]\\{i} with its first nonzero entry scaled to 1; "
    "column n = e_1 + b*H^(n-1) with b nonzero (circuit {1, n-1, n}, column scaling); "
    "circuits {i, n-i, n} checked as soon as assigned"
)
GENERIC_NORMALIZATION = (
    "first declared basis fixed to the identity; every other column nonzero "
    "with its first nonzero entry scaled to 1"
)


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str
    candidates: int
    normalization: str
    matrix: BlockMatrix | None = None
    elapsed_ms: int = 0
    leaves: int = 0

    @property
    def found(self) -> bool:
        return self.verdict == "witness"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "candidates": self.candidates,
            "normalization": self.normalization,
            "matrix": None if self.matrix is None else self.matrix.to_dict(),
            "elapsed_ms": self.elapsed_ms,
        }


def family_parameter(c: MatroidConstraints) -> int | None:
    """Return ``p`` when ``c`` contains the circuits shared by both p-families, else ``None``."""
    if c.n < 7 or c.n % 2 == 0:
        return None
    p = (c.n - 3) // 2
    if c.rank != p + 1 or frozenset(range(1, p + 2)) not in c.bases:
        return None
    n = c.n
    head = frozenset(range(1, p + 2))
    need = {(head - {i}) | {n - i} for i in range(1, p + 2)}
    need |= {frozenset({i, n - i, n}) for i in range(p + 2, 2 * p + 3)}
    return p if need <= set(c.circuits) else None


def _normalized_vectors(q: int, support: list[int], rows: int):
    """Vectors with the given support, nonzero there, first entry 1; lexicographic order."""
    for rest in itertools.product(range(1, q), repeat=len(support) - 1):
        v = np.zeros(rows, dtype=np.int64)
        v[support[0]] = 1
        v[support[1:]] = rest
        yield v


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0
        self.leaves = 0

    def tick(self, count=1):
        self.nodes += count
        if self.nodes > self.budget:
            raise SearchSpaceTooLarge(self.budget, self.nodes)


def _family_partition(args):
    """Explore every candidate whose column n-1 equals ``first``; stop at the first witness."""
    c, q, first, budget = args
    p = (c.n - 3) // 2
    n, r = c.n, p + 1
    field = PrimeField(q)
    counter = _Counter(budget)
    h = np.zeros((r, n), dtype=np.int64)
    h[:, :r] = np.eye(r, dtype=np.int64)
    h[:, n - 2] = first
    counter.tick()
    e = np.eye(r, dtype=np.int64)

    columns = {
        i: np.array(list(_normalized_vectors(q, [k for k in range(r) if k != i - 1], r)))
        for i in range(2, p + 2)
    }

    def assign(i):
        # column n - i, i = 2..p+1, support [p+1] \ {i}
        if i > p + 1:
            counter.leaves += 1
            cand = BlockMatrix(field, h.copy())
            return cand if check_representation(cand, c).passed else None
        cands = columns[i]
        counter.tick(len(cands))
        keep = kernels.circuit_triples(e[:, i - 1], h[:, n - 1], cands, q)
        for v, ok in zip(cands, keep):
            if not ok:
                continue
            h[:, n - i - 1] = v
            found = assign(i + 1)
            if found is not None:
                return found
        h[:, n - i - 1] = 0
        return None

    for b in range(1, q):
        counter.tick()
        h[:, n - 1] = (e[:, 0] + b * first) % q
        found = assign(2)
        if found is not None:
            return found.entries, counter.nodes, counter.leaves
    return None, counter.nodes, counter.leaves


def _run_partitions(fn, tasks, workers, budget):
    """Run partitions in order; stop at the first witness.  Counts cover partitions up to it."""
    nodes = leaves = 0

    def account(res):
        nonlocal nodes, leaves
        nodes += res[1]
        leaves += res[2]
        if nodes > budget:
            raise SearchSpaceTooLarge(budget, nodes)
        return res[0]

    if workers <= 1:
        for task in tasks:
            task = task[:-1] + (budget - nodes,)
            found = account(fn(task))
            if found is not None:
                return found, nodes, leaves
        return None, nodes, leaves
    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        for res in pool.map(fn, tasks):
            found = account(res)
            if found is not None:
                return found, nodes, leaves
        return None, nodes, leaves
    finally:
        pool.shutdown(wait=True, cancel_futures=True)


def _generic_partition(args):
    c, q, order, budget = args
    field = PrimeField(q)
    r, n = c.rank, c.n
    counter = _Counter(budget)
    h = np.zeros((r, n), dtype=np.int64)
    basis = sorted(next((b for b in c.bases if len(b) == r), ()))
    for k, j in enumerate(basis):
        h[k, j - 1] = 1
    free = [j for j in range(1, n + 1) if j not in basis]
    assigned = set(basis)
    sets = [(s, "basis") for s in c.bases] + [(s, "circuit") for s in c.circuits]
    # every nonzero vector whose first nonzero entry is 1
    vectors = []
    for lead in range(r):
        for tail in itertools.product(range(q), repeat=r - lead - 1):
            v = np.zeros(r, dtype=np.int64)
            v[lead] = 1
            v[lead + 1 :] = tail
            vectors.append(v)

    def consistent():
        cand = BlockMatrix(field, h.copy())
        for s, kind in sets:
            if not s <= assigned:
                continue
            rk = cand.rank(s)
            if kind == "basis" and rk != len(s):
                return False
            if kind == "circuit":
                if rk != len(s) - 1 or any(cand.rank(s - {j}) != len(s) - 1 for j in s):
                    return False
        return True

    def assign(k):
        if k == len(free):
            counter.leaves += 1
            cand = BlockMatrix(field, h.copy())
            return cand if check_representation(cand, c).passed else None
        j = free[k]
        choices = vectors if k else [vectors[order]]
        for v in choices:
            counter.tick()
            h[:, j - 1] = v
            assigned.add(j)
            if consistent():
                found = assign(k + 1)
                if found is not None:
                    return found
            assigned.discard(j)
        h[:, j - 1] = 0
        return None

    if not free:
        counter.leaves += 1
        cand = BlockMatrix(field, h.copy())
        found = cand if check_representation(cand, c).passed else None
    else:
        found = assign(0)
    return (None if found is None else found.entries), counter.nodes, counter.leaves


def search_scalar_representation(
    c: MatroidConstraints,
    field: PrimeField,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> SearchOutcome:
    """Decide whether ``c`` has a scalar (t=1) linear representation over ``field``.

    Returns a witness matrix or an exhaustion certificate.  Raises
    :class:`SearchSpaceTooLarge` once more than ``budget`` column
    assignments have been examined.
    """
    start = time.perf_counter()
    q = field.modulus
    p = family_parameter(c)
    if p is not None:
        r = p + 1
        tasks = [(c, q, v, budget) for v in _normalized_vectors(q, list(range(1, r)), r)]
        found, nodes, leaves = _run_partitions(_family_partition, tasks, workers, budget)
        norm = FAMILY_NORMALIZATION
    else:
        r = c.rank
        basis = next((b for b in c.bases if len(b) == r), None)
        norm = GENERIC_NORMALIZATION if basis is not None else "every column nonzero with first nonzero entry 1"
        n_free = c.n - (len(basis) if basis else 0)
        n_vectors = (q**r - 1) // (q - 1)
        tasks = [(c, q, k, budget) for k in range(n_vectors)] if n_free else [(c, q, 0, budget)]
        found, nodes, leaves = _run_partitions(_generic_partition, tasks, workers, budget)
    elapsed = int((time.perf_counter() - start) * 1000)
    if found is not None:
        return SearchOutcome("witness", nodes, norm, BlockMatrix(field, found), elapsed, leaves)
    return SearchOutcome("exhausted", nodes, norm, None, elapsed, leaves)


def family_constraints(family: str, p: int) -> MatroidConstraints:
    if family == "p-fano":
        return p_fano_constraints(p)
    if family == "p-nonfano":
        return p_nonfano_constraints(p)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Achievable:
    encoder: Encoder
    rate: Fraction
    report: RateReport

    verdict = "achievable"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "rate": str(self.rate),
            "mais": self.report.mais_lower,
            "optimal": self.report.optimal,
            "matrix": self.encoder.matrix.to_dict(),
        }


@dataclass(frozen=True)
class Infeasible:
    outcome: SearchOutcome
    certificate: str

    verdict = "infeasible"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certificate": self.certificate,
            "search": self.outcome.to_dict(),
        }


def decide_family_optimality(family: str, p: int, field: PrimeField, budget: int = DEFAULT_BUDGET, workers: int = 1):
    """Decide whether the family instance has a scalar linear code of rate ``p+1`` over ``field``.

    The rate-``(p+1)`` encoder is tried first; if it fails, the matroid of the
    family is searched exhaustively, since any such encoder restricted to
    blocks ``[n]`` would represent it.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)
    inst = build_instance(family, p)
    enc = encoder_h_p(p, field)
    if check_decoding(enc, inst).passed:
        report = broadcast_rate_report(inst, enc)
        if report.optimal:
            return Achievable(enc, enc.rate, report)
    constraints = family_constraints(family, p)
    outcome = search_scalar_representation(constraints, field, budget=budget, workers=workers)
    if outcome.found:
        raise RuntimeError(
            f"{family} matroid has a scalar representation over GF({field.modulus}) "
            "but the rate-(p+1) encoder failed; the reduction does not apply"
        )
    certificate = (
        f"any scalar (t=1) encoder of rate {p + 1} for the {family} instance with p={p} "
        f"restricts on blocks 1..{2 * p + 3} to a scalar representation of the {family} matroid; "
        f"the normalized search over GF({field.modulus}) is exhausted ({outcome.candidates} candidates), "
        "so no such encoder exists. Vector codes (t>1) are not covered by this certificate."
    )
    return Infeasible(outcome, certificate)
