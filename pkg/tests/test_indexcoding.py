import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import acyclic_by_peeling, acyclic_literal, know_masks_from, mask_of, minimal_cyclic_literal
from pfano.errors import NotDecodable, NotPrime, ShapeMismatch, TooLarge
from pfano.gf import PrimeField
from pfano.indexcoding import (
    Encoder,
    IndexCodingInstance,
    Z,
    Z1,
    Z2,
    broadcast_rate_report,
    build_instance,
    build_p_fano_instance,
    build_p_nonfano_instance,
    check_decoding,
    custom_instance,
    encoder_h_p,
    is_acyclic,
    is_minimal_cyclic,
    mais,
    simulate_round,
    z,
    z1,
    z2,
)
from pfano.matrix import BlockMatrix


def rng_(a, b):
    return set(range(a, b + 1))


# displayed interfering sets, with [8:16] in place of [8:19] for users 2 and 3
GOLDEN_F2 = {
    1: {2, 3, 6} | rng_(8, 16) - {8, 11, 14},
    2: {1, 3, 5} | rng_(8, 16) - {9, 12, 15},
    3: {1, 2, 4} | rng_(8, 16) - {10, 13, 16},
    4: {6}, 5: {4}, 6: {5}, 7: {4, 5, 6},
    8: set(), 9: {6}, 10: {6},
    11: {5}, 12: set(), 13: {5},
    14: {4}, 15: {4}, 16: set(),
    17: {6, 7, 8}, 18: {5, 7, 12}, 19: {4, 7, 16},
}

GOLDEN_F3 = {
    1: {2, 3, 4, 8} | rng_(10, 25) - {10, 14, 18, 22},
    2: {1, 3, 4, 7} | rng_(10, 25) - {11, 15, 19, 23},
    3: {1, 2, 4, 6} | rng_(10, 25) - {12, 16, 20, 24},
    4: {1, 2, 3, 5} | rng_(10, 25) - {13, 17, 21, 25},
    5: {7, 8}, 6: {5, 8}, 7: {5, 6}, 8: {6, 7}, 9: {5, 6, 7, 8},
    10: set(), 11: {13, 8}, 12: {11, 8}, 13: {12, 8},
    14: {17, 7}, 15: set(), 16: {14, 7}, 17: {16, 7},
    18: {21, 6}, 19: {18, 6}, 20: set(), 21: {19, 6},
    22: {24, 5}, 23: {22, 5}, 24: {23, 5}, 25: set(),
    26: {8, 9, 10, 30}, 27: {7, 9, 15, 31}, 28: {6, 9, 20, 32}, 29: {5, 9, 25, 33},
    30: {8, 9, 10, 26}, 31: {7, 9, 15, 27}, 32: {6, 9, 20, 28}, 33: {5, 9, 25, 29},
}

ENCODER_P2 = [
    [1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 1, 0],
]

ENCODER_P3 = [
    [1, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    [0, 1, 0, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0],
]


def test_golden_p2_instance():
    inst = build_p_fano_instance(2)
    assert inst.m == 19
    assert {i: set(inst.B(i)) for i in inst.users} == GOLDEN_F2
    assert [Z(2, l) for l in (1, 2, 3)] == [[8, 9, 10], [11, 12, 13], [14, 15, 16]]
    assert Z1(2) == [17, 18, 19]
    assert all(Z2(2, l) == [] for l in (1, 2, 3))


def test_golden_p3_instance():
    inst = build_p_fano_instance(3)
    assert inst.m == 33
    assert {i: set(inst.B(i)) for i in inst.users} == GOLDEN_F3
    assert [z2(3, l, 1) for l in (1, 2, 3, 4)] == [30, 31, 32, 33]
    assert [z1(3, j) for j in (1, 2, 3, 4)] == [26, 27, 28, 29]
    assert z(3, 3, 2) == 19


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_user_count(p):
    for family in ("p-fano", "p-nonfano"):
        inst = build_instance(family, p)
        assert inst.m == 2 * p * p + 4 * p + 3
    layout = sorted(
        [z(p, l, j) for l in range(1, p + 2) for j in range(1, p + 2)]
        + Z1(p)
        + [x for l in range(1, p + 2) for x in Z2(p, l)]
    )
    assert layout == list(range(2 * p + 4, 2 * p * p + 4 * p + 4))


def test_nonfano_instance():
    p, n = 3, 9
    inst = build_p_nonfano_instance(p)
    fano = build_p_fano_instance(p)
    assert inst.B(n) == frozenset()
    for j in range(1, p + 2):
        assert inst.B(n - j) == frozenset({n - l for l in range(1, p + 2)} - {n - j})
    changed = [i for i in inst.users if inst.B(i) != fano.B(i)]
    assert changed == list(range(p + 2, n + 1))
    with pytest.raises(NotPrime):
        build_p_nonfano_instance(4)


def test_instance_invariants_and_dict():
    with pytest.raises(ValueError):
        custom_instance([{1}, set()])
    with pytest.raises(ValueError):
        custom_instance([{3}, set()])
    with pytest.raises(ValueError):
        IndexCodingInstance(2, ({2}, set()), family="p-fano", p=2)
    inst = build_p_nonfano_instance(2)
    d = inst.to_dict()
    assert set(d) == {"family", "p", "m", "interfering"}
    assert IndexCodingInstance.from_dict(d) == inst
    for i in inst.users:
        assert inst.A(i) | inst.B(i) | {i} == set(inst.users)
        assert not inst.A(i) & inst.B(i)


def test_golden_encoders():
    e2 = encoder_h_p(2, PrimeField(2))
    assert e2.matrix.entries.tolist() == ENCODER_P2
    e3 = encoder_h_p(3, PrimeField(3))
    assert e3.matrix.entries.tolist() == ENCODER_P3
    assert e3.rate == 4
    for p in (2, 3, 5):
        h = encoder_h_p(p, PrimeField(7)).matrix
        assert np.array_equal(h.columns(range(1, p + 2)), np.eye(p + 1))


def test_decoding_examples():
    inst = build_p_fano_instance(2)
    assert check_decoding(encoder_h_p(2, PrimeField(2)), inst).passed
    rep = check_decoding(encoder_h_p(2, PrimeField(3)), inst)
    assert rep.failing == [7]
    d = rep.to_dict()
    assert d["summary"] == {"ok": False, "users": 19, "failing": [7]}
    assert set(d["users"][0]) == {"user", "rank_with", "rank_without", "ok"}
    assert check_decoding(encoder_h_p(2, PrimeField(3)), build_p_nonfano_instance(2)).passed
    assert check_decoding(encoder_h_p(2, PrimeField(2)), build_p_nonfano_instance(2)).failing == [4, 5, 6]
    with pytest.raises(ShapeMismatch):
        check_decoding(encoder_h_p(3, PrimeField(3)), inst)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_decoding_characteristic_table(p, q):
    enc = encoder_h_p(p, PrimeField(q))
    assert check_decoding(enc, build_p_fano_instance(p)).passed == (q == p)
    assert check_decoding(enc, build_p_nonfano_instance(p)).passed == (q != p)


def test_empty_side_info_needs_full_rank():
    inst = custom_instance([set(range(1, 4)) - {i} for i in range(1, 4)])
    h = BlockMatrix(PrimeField(2), [[1, 0, 1], [0, 1, 1]])
    assert check_decoding(Encoder(h), inst).failing == [1, 2, 3]
    assert mais(inst).size == 3


def test_minimal_cyclic_examples():
    inst = build_p_fano_instance(2)
    assert is_minimal_cyclic(inst, {4, 5, 6})
    assert not is_acyclic(inst, {4, 5, 6})
    assert is_acyclic(inst, {1, 2, 3})
    assert not is_minimal_cyclic(inst, {1, 2, 3})
    for l in (1, 2, 3):
        assert is_minimal_cyclic(inst, set(Z(2, l)) - {z(2, l, l)})


def _random_instance(m, seed, density):
    rng = np.random.default_rng(seed)
    return custom_instance([{j for j in range(1, m + 1) if j != i and rng.random() < density}
                            for i in range(1, m + 1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(0, 10**6), st.floats(0.2, 0.9))
def test_acyclic_matches_literal_definition(m, seed, density):
    inst = _random_instance(m, seed, density)
    users = list(inst.users)
    rng = np.random.default_rng(seed + 1)
    for _ in range(8):
        sub = [u for u in users if rng.random() < 0.7]
        assert is_acyclic(inst, sub) == acyclic_literal(inst, sub)
        assert is_minimal_cyclic(inst, sub) == minimal_cyclic_literal(inst, sub)


def test_acyclic_literal_m12():
    for seed in range(5):
        inst = _random_instance(12, seed, 0.85)
        assert is_acyclic(inst, inst.users) == acyclic_literal(inst, inst.users)


def test_mais_small_oracle():
    for seed in range(30):
        inst = _random_instance(10, seed, 0.6)
        know = know_masks_from(inst)
        best = max(bin(mk).count("1") for mk in range(1 << 10) if acyclic_by_peeling(know, mk))
        res = mais(inst)
        assert res.size == best == len(res.witness)
        assert is_acyclic(inst, res.witness)


def test_mais_prop2_shapes():
    m = 9
    cycle = custom_instance([set(range(1, m + 1)) - {i, i % m + 1} for i in range(1, m + 1)])
    assert is_minimal_cyclic(cycle, cycle.users)
    assert mais(cycle).size == m - 1
    chain = custom_instance([set(range(i, m + 1)) - {i} for i in range(1, m + 1)])
    assert is_acyclic(chain, chain.users)
    assert mais(chain).size == m
    assert mais(custom_instance([])).size == 0


def test_mais_families_and_workers():
    for p, expected in ((2, 3), (3, 4)):
        for family in ("p-fano", "p-nonfano"):
            inst = build_instance(family, p)
            one = mais(inst)
            two = mais(inst, workers=2)
            assert one.size == expected
            assert one == two


def test_mais_too_large():
    with pytest.raises(TooLarge):
        mais(build_p_fano_instance(5))


def test_rate_report():
    inst = build_p_fano_instance(2)
    rep = broadcast_rate_report(inst, encoder_h_p(2, PrimeField(2)))
    assert rep.to_dict() == {"mais_lower": 3, "achieved": "3", "optimal": True}
    assert broadcast_rate_report(inst).optimal is None
    with pytest.raises(NotDecodable):
        broadcast_rate_report(inst, encoder_h_p(2, PrimeField(3)))


@pytest.mark.parametrize("p,q,family", [(2, 2, "p-fano"), (2, 3, "p-nonfano"), (3, 3, "p-fano"), (3, 5, "p-nonfano")])
def test_simulation_exact(p, q, family):
    inst = build_instance(family, p)
    enc = encoder_h_p(p, PrimeField(q))
    for seed in range(20):
        res = simulate_round(enc, inst, seed=seed)
        assert res.exact
        assert np.array_equal(res.transmitted, (enc.matrix.entries @ res.messages[:, 0]) % q)
    zero = simulate_round(enc, inst, messages=np.zeros(inst.m, dtype=np.int64))
    assert all(not v.any() for v in zero.decoded.values())


def test_simulation_deterministic_and_t2():
    inst = build_p_fano_instance(2)
    enc = encoder_h_p(2, PrimeField(2))
    a, b = simulate_round(enc, inst, seed=5), simulate_round(enc, inst, seed=5)
    assert np.array_equal(a.messages, b.messages)
    h2 = BlockMatrix(PrimeField(2), np.kron(enc.matrix.entries, np.eye(2, dtype=np.int64)), t=2)
    assert check_decoding(Encoder(h2), inst).passed
    assert Encoder(h2).rate == 3
    assert simulate_round(Encoder(h2), inst, seed=3).exact


def test_corrupted_encoder_rejected():
    inst = build_p_fano_instance(2)
    h = encoder_h_p(2, PrimeField(2)).matrix
    bad = h.replace_block(7, [[0], [0], [1]])
    with pytest.raises(NotDecodable) as exc:
        simulate_round(Encoder(bad), inst)
    assert exc.value.users


def test_more_cyclic_examples():
    f2, nf2 = build_p_fano_instance(2), build_p_nonfano_instance(2)
    assert not is_minimal_cyclic(f2, {1, 2})
    assert not is_minimal_cyclic(nf2, {4, 5, 6})
    assert is_acyclic(f2, set()) and is_acyclic(f2, {9})
    from pfano.indexcoding import is_independent

    assert is_independent(nf2, {4, 5, 6})
    assert is_independent(f2, {1, 2, 3})


def test_cycle_on_middle_block():
    # users p+2..2p+2 each know exactly their cyclic successor within that block
    for p in (2, 3, 5):
        inst = build_p_fano_instance(p)
        block = list(range(p + 2, 2 * p + 3))
        for k, i in enumerate(block):
            succ = block[(k + 1) % len(block)]
            assert set(block) - inst.B(i) - {i} == {succ}
        assert is_minimal_cyclic(inst, block)


def test_zeroed_first_column_rejected():
    inst = build_p_fano_instance(2)
    bad = encoder_h_p(2, PrimeField(2)).matrix.replace_block(1, [[0], [0], [0]])
    with pytest.raises(NotDecodable) as exc:
        simulate_round(Encoder(bad), inst)
    assert 1 in exc.value.users


def test_nonfano_rate_optimal():
    rep = broadcast_rate_report(build_p_nonfano_instance(3), encoder_h_p(3, PrimeField(2)))
    assert (rep.mais_lower, rep.achieved, rep.optimal) == (4, 4, True)
