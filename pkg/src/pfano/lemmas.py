"""Reduction lemmas from index coding to matroid constraints, as checkable predicates.

Each predicate first checks the lemma's premises on the given instance and
encoder, raising :class:`PremiseViolated` naming the first premise that
fails, and then returns whether the conclusion holds on the matrix.  The
decoding premise only asks for the users the lemma's argument relies on.
"""

from __future__ import annotations

from typing import Iterable

from .errors import PremiseViolated
from .indexcoding import IndexCodingInstance, check_user, is_acyclic, is_independent, is_minimal_cyclic
from .matrix import BlockMatrix, in_column_space, rref
from .matroid import is_circuit_set, is_independent_set


def _require(cond: bool, premise: str):
    if not cond:
        raise PremiseViolated(premise)


def _decodes(h: BlockMatrix, inst: IndexCodingInstance, users: Iterable[int]):
    bad = [i for i in users if not check_user(h, inst, i).ok]
    _require(not bad, f"decoding condition for users {bad}")


def _span(h: BlockMatrix, labels) -> tuple:
    """Column space of ``H^labels`` as a canonical key (rref rows)."""
    red, piv = rref(h.columns(labels).T, h.q)
    return tuple(map(tuple, red[: len(piv)].tolist()))


def lemma2_independent(inst: IndexCodingInstance, h: BlockMatrix, users) -> bool:
    """Acyclic user set + decoding for its users => independent set of ``h``."""
    users = set(users)
    _require(is_acyclic(inst, users), "users form an acyclic set")
    _decodes(h, inst, users)
    return is_independent_set(h, users)


def lemma3_circuit(inst: IndexCodingInstance, h: BlockMatrix, users) -> bool:
    """Minimal cyclic set of rank ``(|M|-1)t`` => circuit set of ``h``."""
    users = set(users)
    _require(is_minimal_cyclic(inst, users), "users form a minimal cyclic set")
    _decodes(h, inst, users)
    _require(h.rank(users) == (len(users) - 1) * h.t, "rank(H^M) == (|M|-1)t")
    return is_circuit_set(h, users)[0]


def lemma4_col_equal(inst: IndexCodingInstance, h: BlockMatrix, users, j: int, l: int) -> bool:
    """``j`` interferes with all of ``M`` but ``l`` and lies in ``col(H^M)`` => ``col(H^j) == col(H^l)``."""
    users = set(users)
    _require(l in users, "l in M")
    _require(j not in users, "j not in M")
    _require(is_independent(inst, users), "M is an independent set of the instance")
    _require(all(j in inst.B(i) for i in users - {l}), "j in B_i for every i in M \\ {l}")
    _require(in_column_space(h.columns(users), h.block(j), h.q), "col(H^j) within col(H^M)")
    _decodes(h, inst, users)
    return _span(h, [j]) == _span(h, [l])


def lemma5_adjoined_circuit(inst: IndexCodingInstance, h: BlockMatrix, users, j: int) -> bool:
    """Independent ``M``, minimal cyclic in the instance, ``j`` interfering with all of it => ``M + j`` circuit."""
    users = set(users)
    _require(j not in users, "j not in M")
    _require(is_independent_set(h, users), "M is an independent set of H")
    _require(in_column_space(h.columns(users), h.block(j), h.q), "col(H^j) within col(H^M)")
    _require(is_minimal_cyclic(inst, users), "M is a minimal cyclic set")
    _require(all(j in inst.B(i) for i in users), "j in B_i for every i in M")
    _decodes(h, inst, inst.users)
    return is_circuit_set(h, users | {j})[0]


def lemma6_triple_circuits(h: BlockMatrix, p: int) -> bool:
    """Basis ``[p+1]``, circuits ``([p+1] \\ {i}) + {n-i}`` and ``col(H^n)`` inside ``col(H^{i, n-i})``
    => every ``{i, n-i, n}`` is a circuit."""
    n = 2 * p + 3
    _require(h.n >= n, f"matrix has at least {n} blocks")
    head = set(range(1, p + 2))
    _require(
        is_independent_set(h, head) and h.rank(head) == h.rank() == (p + 1) * h.t,
        "[p+1] is a basis set",
    )
    for i in head:
        _require(is_circuit_set(h, (head - {i}) | {n - i})[0], f"([p+1] \\ {{{i}}}) + {{{n - i}}} is a circuit")
        _require(in_column_space(h.columns([i, n - i]), h.block(n), h.q), f"col(H^n) within col(H^{{{i},{n - i}}})")
    return all(is_circuit_set(h, {i, n - i, n})[0] for i in head)


def lemma7_rank_drop(inst: IndexCodingInstance, h: BlockMatrix, m1, m2, k: int) -> bool:
    """Acyclic ``M1`` interfering with all of ``M2`` and ``rank(H^{M1+M2}) <= kt``
    => ``rank(H^{M2}) <= (k - |M1|)t``."""
    m1, m2 = set(m1), set(m2)
    _require(is_acyclic(inst, m1), "M1 is an acyclic set")
    _require(all(m2 <= inst.B(i) for i in m1), "M2 within B_i for every i in M1")
    _require(len(m1) < k <= len(m1) + len(m2), "|M1| < k <= |M1| + |M2|")
    _require(h.rank(m1 | m2) <= k * h.t, "rank(H^(M1 u M2)) <= kt")
    _decodes(h, inst, m1)
    return h.rank(m2) <= (k - len(m1)) * h.t
