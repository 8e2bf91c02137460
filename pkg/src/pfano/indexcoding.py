"""Index coding instances, linear encoders and their decoding conditions.

Users are labelled ``1..m``.  An instance is stored by its interfering
sets ``B_i``; the side information ``A_i`` is everything else except
``i`` itself.  The side-information digraph has an arc ``u -> v`` when
user ``u`` knows message ``v``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Sequence

import numpy as np

from .errors import NotDecodable, NotPrime, ShapeMismatch, TooLarge
from .gf import PrimeField, is_prime
from .matrix import BlockMatrix, _mod_matmul, solve
from .matroid import h_p_matrix

MAX_MAIS_USERS = 40
FAMILIES = ("p-fano", "p-nonfano", "custom")


@dataclass(frozen=True)
class IndexCodingInstance:
    m: int
    interfering: tuple[frozenset, ...]
    family: str = "custom"
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "interfering", tuple(frozenset(b) for b in self.interfering))
        if len(self.interfering) != self.m:
            raise ValueError(f"expected {self.m} interfering sets, got {len(self.interfering)}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        users = frozenset(range(1, self.m + 1))
        for i, b in enumerate(self.interfering, start=1):
            if i in b:
                raise ValueError(f"user {i} cannot interfere with itself")
            if not b <= users:
                raise ValueError(f"B_{i} contains users outside [{self.m}]")
        if self.family != "custom" and self.m != 2 * self.p**2 + 4 * self.p + 3:
            raise ValueError(f"{self.family} instance must have 2p^2+4p+3 users")

    @property
    def users(self) -> range:
        return range(1, self.m + 1)

    def B(self, i: int) -> frozenset:
        return self.interfering[i - 1]

    def A(self, i: int) -> frozenset:
        return frozenset(self.users) - self.interfering[i - 1] - {i}

    def knows_masks(self) -> list[int]:
        """Bitmask of ``A_i`` for each user (bit ``v-1`` set when ``v`` in ``A_i``), 0-indexed by user."""
        full = (1 << self.m) - 1
        out = []
        for i in self.users:
            b = 0
            for v in self.interfering[i - 1]:
                b |= 1 << (v - 1)
            out.append(full & ~b & ~(1 << (i - 1)))
        return out

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "m": self.m,
            "interfering": [sorted(b) for b in self.interfering],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IndexCodingInstance":
        return cls(
            m=int(data["m"]),
            interfering=tuple(frozenset(int(x) for x in b) for b in data["interfering"]),
            family=data.get("family", "custom"),
            p=None if data.get("p") is None else int(data["p"]),
        )


def custom_instance(interfering: Sequence[Iterable[int]]) -> IndexCodingInstance:
    return IndexCodingInstance(len(interfering), tuple(frozenset(b) for b in interfering))


# index layout of the p-Fano / p-non-Fano instances

def z(p: int, l: int, j: int) -> int:
    return (p + 1) * (l + 1) + 1 + j


def z1(p: int, j: int) -> int:
    return p * p + 4 * p + 4 + j


def z2(p: int, l: int, j: int) -> int:
    return p * p + (l + 4) * p + 7 - 2 * l + j


def Z(p: int, l: int) -> list[int]:
    return [z(p, l, j) for j in range(1, p + 2)]


def Z1(p: int) -> list[int]:
    return [z1(p, j) for j in range(1, p + 2)]


def Z2(p: int, l: int) -> list[int]:
    return [z2(p, l, j) for j in range(1, p - 1)]


def _succ_skip(p: int, j: int, skip: int) -> int:
    """Cyclic successor of ``j`` in ``[p+1]``, passing over ``skip``."""
    k = j % (p + 1) + 1
    if k == skip:
        k = k % (p + 1) + 1
    return k


def _check_p(p):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)


def build_p_fano_instance(p: int) -> IndexCodingInstance:
    _check_p(p)
    n = 2 * p + 3
    m = 2 * p * p + 4 * p + 3
    head = set(range(1, p + 2))
    tail = list(range(p + 2, 2 * p + 3))
    B: dict[int, set] = {}
    for i in range(1, p + 2):
        B[i] = (head - {i}) | {n - i}
        for l in range(1, p + 2):
            B[i] |= set(Z(p, l)) - {z(p, l, i)}
    for k, i in enumerate(tail):
        B[i] = set(tail) - {i, tail[(k + 1) % len(tail)]}
    B[n] = set(tail)
    for l in range(1, p + 2):
        zl = set(Z(p, l))
        B[z(p, l, l)] = set()
        for j in range(1, p + 2):
            if j != l:
                B[z(p, l, j)] = (zl - {z(p, l, l), z(p, l, j), z(p, l, _succ_skip(p, j, l))}) | {n - l}
        B[z1(p, l)] = {n - l, n, z(p, l, l)} | set(Z2(p, l))
        for j in range(1, p - 1):
            B[z2(p, l, j)] = {n - l, n, z(p, l, l), z1(p, l)} | (set(Z2(p, l)) - {z2(p, l, j)})
    assert sorted(B) == list(range(1, m + 1))
    return IndexCodingInstance(m, tuple(frozenset(B[i]) for i in range(1, m + 1)), "p-fano", p)


def build_p_nonfano_instance(p: int) -> IndexCodingInstance:
    base = build_p_fano_instance(p)
    n = 2 * p + 3
    B = list(base.interfering)
    tail = frozenset(n - l for l in range(1, p + 2))
    for j in range(1, p + 2):
        B[n - j - 1] = tail - {n - j}
    B[n - 1] = frozenset()
    return IndexCodingInstance(base.m, tuple(B), "p-nonfano", p)


def build_instance(family: str, p: int) -> IndexCodingInstance:
    if family == "p-fano":
        return build_p_fano_instance(p)
    if family == "p-nonfano":
        return build_p_nonfano_instance(p)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class Encoder:
    matrix: BlockMatrix

    @property
    def rate(self) -> Fraction:
        return Fraction(self.matrix.rows, self.matrix.t)

    @property
    def field(self) -> PrimeField:
        return self.matrix.field


def encoder_h_p(p: int, field: PrimeField) -> Encoder:
    """Scalar rate-``(p+1)`` encoder for the p-Fano / p-non-Fano instances."""
    _check_p(p)
    r = p + 1
    m = 2 * p * p + 4 * p + 3
    h = np.zeros((r, m), dtype=np.int64)
    h[:, : 2 * p + 3] = h_p_matrix(p, field).entries

    def unit(k):
        return np.eye(r, dtype=np.int64)[:, k - 1]

    for l in range(1, p + 2):
        for j in range(1, p + 2):
            h[:, z(p, l, j) - 1] = unit(j)
        h[:, z1(p, l) - 1] = unit(l + 1 if l <= p else 1)
        for j in range(1, p - 1):
            k = l + j + 1 if l + j <= p else l + j - p
            h[:, z2(p, l, j) - 1] = unit(k)
    return Encoder(BlockMatrix(field, h % field.modulus))


@dataclass(frozen=True)
class UserCheck:
    user: int
    rank_with: int
    rank_without: int
    ok: bool


@dataclass(frozen=True)
class DecodingReport:
    users: tuple[UserCheck, ...]

    @property
    def passed(self) -> bool:
        return all(u.ok for u in self.users)

    @property
    def failing(self) -> list[int]:
        return [u.user for u in self.users if not u.ok]

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "users": [
                {"user": u.user, "rank_with": u.rank_with, "rank_without": u.rank_without, "ok": u.ok}
                for u in self.users
            ],
            "summary": {"ok": self.passed, "users": len(self.users), "failing": self.failing},
        }


def _check_shape(enc: Encoder, inst: IndexCodingInstance):
    if enc.matrix.n != inst.m:
        raise ShapeMismatch(f"encoder has {enc.matrix.n} blocks, instance has {inst.m} users")


def check_user(h: BlockMatrix, inst: IndexCodingInstance, i: int) -> UserCheck:
    b = inst.B(i)
    without = h.rank(b)
    with_i = h.rank(b | {i})
    return UserCheck(i, with_i, without, with_i == without + h.t)


def check_decoding(enc: Encoder, inst: IndexCodingInstance) -> DecodingReport:
    """Apply ``rank(H^{{i} u B_i}) == rank(H^{B_i}) + t`` to every user."""
    _check_shape(enc, inst)
    return DecodingReport(tuple(check_user(enc.matrix, inst, i) for i in inst.users))


@dataclass(frozen=True)
class SimulationResult:
    messages: np.ndarray
    transmitted: np.ndarray
    decoded: dict

    @property
    def exact(self) -> bool:
        t = self.messages.shape[1]
        return all(np.array_equal(v, self.messages[i - 1]) for i, v in self.decoded.items()) and t >= 1


def simulate_round(
    enc: Encoder,
    inst: IndexCodingInstance,
    messages=None,
    seed=0,
) -> SimulationResult:
    """Encode ``y = Hx`` and let every user decode its message from ``y`` and side information.

    ``messages`` holds ``m*t`` field elements (user-major); when omitted
    they are drawn uniformly using ``seed``.
    """
    _check_shape(enc, inst)
    report = check_decoding(enc, inst)
    if not report.passed:
        raise NotDecodable(report.failing)
    h = enc.matrix
    q, t = h.q, h.t
    if messages is None:
        rng = np.random.default_rng(seed)
        x = rng.integers(0, q, size=(inst.m, t), dtype=np.int64)
    else:
        x = np.array(messages, dtype=np.int64).reshape(inst.m, t) % q
    y = _mod_matmul(h.entries, x.reshape(-1, 1), q).ravel()
    decoded = {}
    for i in inst.users:
        residual = y.copy()
        for l in inst.A(i):
            residual = (residual - _mod_matmul(h.block(l), x[l - 1].reshape(-1, 1), q).ravel()) % q
        unknowns = [i] + sorted(inst.B(i))
        cols = np.hstack([h.block(u) for u in unknowns])
        sol = solve(cols, residual, q)
        if sol is None:
            raise NotDecodable([i])
        decoded[i] = sol[:t, 0].copy()
    return SimulationResult(x, y, decoded)


# graph notions

def _mask(users: Iterable[int]) -> int:
    out = 0
    for u in users:
        out |= 1 << (u - 1)
    return out


def is_minimal_cyclic(inst: IndexCodingInstance, users: Iterable[int]) -> bool:
    """True iff the side-information digraph induced on ``users`` is one directed Hamiltonian cycle."""
    s = sorted(set(users))
    if len(s) < 2:
        return False
    ms = set(s)
    succ = {}
    for u in s:
        out = inst.A(u) & ms
        if len(out) != 1:
            return False
        succ[u] = next(iter(out))
    seen = {s[0]}
    cur = succ[s[0]]
    while cur != s[0]:
        if cur in seen:
            return False
        seen.add(cur)
        cur = succ[cur]
    return len(seen) == len(s)


def is_acyclic(inst: IndexCodingInstance, users: Iterable[int]) -> bool:
    """True iff the side-information digraph induced on ``users`` has no directed cycle."""
    s = set(users)
    ts = TopologicalSorter({u: inst.A(u) & s for u in s})
    try:
        ts.prepare()
    except CycleError:
        return False
    return True


def is_independent(inst: IndexCodingInstance, users: Iterable[int]) -> bool:
    s = set(users)
    return all(inst.B(i) & s == s - {i} for i in s)


@dataclass(frozen=True)
class MaisResult:
    size: int
    witness: tuple[int, ...]


def _closes_cycle(know: list[int], kept: int, v: int) -> bool:
    """Whether adding ``v`` to the acyclic set ``kept`` creates a directed cycle (through ``v``)."""
    s = kept | (1 << v)
    frontier = know[v] & s
    reach = frontier
    while frontier:
        if reach >> v & 1:
            return True
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= know[low.bit_length() - 1]
            f ^= low
        nxt &= s & ~reach
        reach |= nxt
        frontier = nxt
    return bool(reach >> v & 1)


def _clique_cover_bound(mutual: list[int], cand: int) -> int:
    """Greedy partition of ``cand`` into cliques of the 2-cycle graph; an acyclic set meets each at most once."""
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        clique_ok = mutual[v] & rest
        rest ^= low
        while clique_ok:
            lw = clique_ok & -clique_ok
            w = lw.bit_length() - 1
            rest &= ~lw
            clique_ok &= mutual[w] & ~lw
        count += 1
    return count


def _mais_subproblem(args):
    know, mutual, kept, cand, floor = args
    best = [floor, 0]

    def rec(kept, kept_size, cand):
        c = cand
        while c:
            low = c & -c
            if _closes_cycle(know, kept, low.bit_length() - 1):
                cand &= ~low
            c ^= low
        if kept_size + bin(cand).count("1") <= best[0]:
            return
        if not cand:
            best[0], best[1] = kept_size, kept
            return
        if kept_size + _clique_cover_bound(mutual, cand) <= best[0]:
            return
        # branch on the candidate with the most 2-cycle partners
        v, deg = -1, -1
        c = cand
        while c:
            low = c & -c
            u = low.bit_length() - 1
            d = bin(mutual[u] & cand).count("1")
            if d > deg:
                v, deg = u, d
            c ^= low
        bit = 1 << v
        rec(kept | bit, kept_size + 1, cand & ~bit & ~mutual[v])
        rec(kept, kept_size, cand & ~bit)

    rec(kept, bin(kept).count("1"), cand)
    return best[0], best[1]


def mais(inst: IndexCodingInstance, workers: int = 1) -> MaisResult:
    """Exact maximum acyclic induced subset of the side-information digraph.

    Branch and bound over keep/delete decisions; keeping a user deletes every
    user it forms a 2-cycle with, and a clique cover of the 2-cycle graph
    bounds what the remaining candidates can add.  The search space is split
    by the smallest kept user so the subproblems can run on ``workers``
    processes; the answer does not depend on ``workers``.
    """
    m = inst.m
    if m > MAX_MAIS_USERS:
        raise TooLarge(f"m = {m} exceeds {MAX_MAIS_USERS}")
    if m == 0:
        return MaisResult(0, ())
    know = inst.knows_masks()
    mutual = [0] * m
    for u in range(m):
        for v in range(m):
            if know[u] >> v & 1 and know[v] >> u & 1:
                mutual[u] |= 1 << v

    greedy = 0
    for v in range(m):
        if not _closes_cycle(know, greedy, v):
            greedy |= 1 << v
    floor = bin(greedy).count("1")
    tasks = []
    for v in range(m):
        higher = ((1 << m) - 1) & ~((1 << (v + 1)) - 1)
        tasks.append((know, mutual, 1 << v, higher & ~mutual[v], floor))

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mais_subproblem, tasks))
    else:
        results = []
        for task in tasks:
            res = _mais_subproblem(task[:4] + (max([floor] + [r[0] for r in results]),))
            results.append(res)

    best_size, best_mask = floor, greedy
    for size, mask in results:
        if mask and size > best_size:
            best_size, best_mask = size, mask
    witness = tuple(i + 1 for i in range(m) if best_mask >> i & 1)
    assert is_acyclic(inst, witness)
    return MaisResult(best_size, witness)


@dataclass(frozen=True)
class RateReport:
    mais_lower: int
    achieved: Fraction | None
    optimal: bool | None

    def to_dict(self) -> dict:
        return {
            "mais_lower": self.mais_lower,
            "achieved": None if self.achieved is None else str(self.achieved),
            "optimal": self.optimal,
        }


def broadcast_rate_report(inst: IndexCodingInstance, enc: Encoder | None = None) -> RateReport:
    """Compare an encoder's rate ``r/t`` with the MAIS lower bound.

    Equality certifies that the encoder is optimal, that is
    ``beta = lambda_q = r/t``.
    """
    lower = mais(inst).size
    if enc is None:
        return RateReport(lower, None, None)
    report = check_decoding(enc, inst)
    if not report.passed:
        raise NotDecodable(report.failing)
    return RateReport(lower, enc.rate, enc.rate == lower)
