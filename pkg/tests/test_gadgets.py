import random

import pytest

from zkrb.errors import UsageError
from zkrb.hashing import MimcParams, default_params, hash2
from zkrb.r1cs import (
    ConstraintSystem,
    Visibility,
    Witness,
    gadget_hash2,
    gadget_merkle_verify,
    gadget_range_check,
    hash2_constraints,
    hash2_into,
    merkle_level_constraints,
)

rng = random.Random(0x6AD6)
P = default_params()

# frozen via the out-of-circuit permutation (independent oracle)
H00 = hash2(0, 0)


def _mutation_check(cs, witness, mutations=100):
    """Flipping any single non-redundant wire must break satisfaction."""
    broken = 0
    for _ in range(mutations):
        idx = rng.randrange(1, len(witness.raw))
        raw = list(witness.raw)
        raw[idx] = (raw[idx] + 1 + rng.randrange(1000)) % (2**61)
        if not cs.is_satisfied(Witness(raw)):
            broken += 1
    return broken


def test_hash2_matches_oracle():
    cs = ConstraintSystem()
    l = cs.alloc(Visibility.PRIVATE, 123)
    r = cs.alloc(Visibility.PRIVATE, 456)
    out = gadget_hash2(cs, l, r)
    cs.finalize()
    assert int(cs.value_of(out)) == hash2(123, 456)
    assert cs.is_satisfied(cs.witness())


def test_hash2_zero_constant_frozen():
    cs = ConstraintSystem()
    out = gadget_hash2(cs, 0, 0)
    cs.finalize()
    assert int(cs.value_of(out)) == H00
    assert cs.is_satisfied(cs.witness())


def test_hash2_constraint_count_exact():
    cs = ConstraintSystem()
    l = cs.alloc(Visibility.PRIVATE, 1)
    r = cs.alloc(Visibility.PRIVATE, 2)
    gadget_hash2(cs, l, r)
    stats = cs.finalize()
    assert stats.num_constraints == hash2_constraints() == 6 * P.rounds


def test_hash2_mutations_fail():
    cs = ConstraintSystem()
    l = cs.alloc(Visibility.PRIVATE, 7)
    r = cs.alloc(Visibility.PRIVATE, 9)
    gadget_hash2(cs, l, r)
    cs.finalize()
    w = cs.witness()
    assert cs.is_satisfied(w)
    assert _mutation_check(cs, w, 100) == 100


def test_hash2_into_binds_without_allocation():
    cs = ConstraintSystem()
    l = cs.alloc(Visibility.PRIVATE, 3)
    r = cs.alloc(Visibility.PRIVATE, 4)
    out = cs.alloc(Visibility.PRIVATE, hash2(3, 4))
    before = cs.num_variables
    hash2_into(cs, l, r, out)
    cs.finalize()
    assert cs.is_satisfied(cs.witness())
    # binding reuses the last product row; wrong target must fail
    cs2 = ConstraintSystem()
    l2 = cs2.alloc(Visibility.PRIVATE, 3)
    r2 = cs2.alloc(Visibility.PRIVATE, 4)
    bad = cs2.alloc(Visibility.PRIVATE, hash2(3, 4) + 1)
    hash2_into(cs2, l2, r2, bad)
    cs2.finalize()
    assert not cs2.is_satisfied(cs2.witness())


def test_merkle_depth1_directions():
    for direction, expected in ((0, hash2(7, 9)), (1, hash2(9, 7))):
        cs = ConstraintSystem()
        leaf = cs.alloc(Visibility.PRIVATE, 7)
        sib = cs.alloc(Visibility.PRIVATE, 9)
        bit = cs.alloc(Visibility.PRIVATE, direction)
        root = cs.alloc(Visibility.PRIVATE, expected)
        gadget_merkle_verify(cs, leaf, [(sib, bit)], root)
        stats = cs.finalize()
        assert stats.num_constraints == merkle_level_constraints()
        assert cs.is_satisfied(cs.witness())


def test_merkle_wrong_sibling_fails():
    cs = ConstraintSystem()
    leaf = cs.alloc(Visibility.PRIVATE, 7)
    sib = cs.alloc(Visibility.PRIVATE, 10)  # wrong sibling
    bit = cs.alloc(Visibility.PRIVATE, 0)
    root = cs.alloc(Visibility.PRIVATE, hash2(7, 9))
    gadget_merkle_verify(cs, leaf, [(sib, bit)], root)
    cs.finalize()
    assert not cs.is_satisfied(cs.witness())


def test_merkle_nonboolean_direction_fails():
    cs = ConstraintSystem()
    leaf = cs.alloc(Visibility.PRIVATE, 7)
    sib = cs.alloc(Visibility.PRIVATE, 9)
    bit = cs.alloc(Visibility.PRIVATE, 2)
    root = cs.alloc(Visibility.PRIVATE, hash2(7, 9))
    gadget_merkle_verify(cs, leaf, [(sib, bit)], root)
    cs.finalize()
    assert not cs.is_satisfied(cs.witness())


def test_merkle_depth4_and_mutations():
    leaves = 7
    sibs = [rng.randrange(1000) for _ in range(4)]
    bits = [1, 0, 1, 1]
    cur = leaves
    for s, b in zip(sibs, bits):
        cur = hash2(s, cur) if b else hash2(cur, s)
    cs = ConstraintSystem()
    leaf = cs.alloc(Visibility.PRIVATE, leaves)
    path = [
        (cs.alloc(Visibility.PRIVATE, s), cs.alloc(Visibility.PRIVATE, b))
        for s, b in zip(sibs, bits)
    ]
    root = cs.alloc(Visibility.PRIVATE, cur)
    gadget_merkle_verify(cs, leaf, path, root)
    stats = cs.finalize()
    assert stats.num_constraints == 4 * merkle_level_constraints()
    w = cs.witness()
    assert cs.is_satisfied(w)
    assert _mutation_check(cs, w, 100) == 100


def test_merkle_empty_path_rejected():
    cs = ConstraintSystem()
    leaf = cs.alloc(Visibility.PRIVATE, 1)
    with pytest.raises(UsageError):
        gadget_merkle_verify(cs, leaf, [], leaf)


def test_range_check_boundaries():
    for value, bits, ok in [
        (2**64 - 1, 64, True),
        (2**64, 64, False),
        (0, 64, True),
        (255, 8, True),
        (256, 8, False),
    ]:
        cs = ConstraintSystem()
        x = cs.alloc(Visibility.PRIVATE, value)
        gadget_range_check(cs, x, bits)
        stats = cs.finalize()
        assert stats.num_constraints == bits + 1
        assert cs.is_satisfied(cs.witness()) == ok


def test_range_check_width_validation():
    cs = ConstraintSystem()
    x = cs.alloc(Visibility.PRIVATE, 1)
    with pytest.raises(UsageError):
        gadget_range_check(cs, x, 253)
    with pytest.raises(UsageError):
        gadget_range_check(cs, x, 0)


def test_range_check_mutations():
    cs = ConstraintSystem()
    x = cs.alloc(Visibility.PRIVATE, 41_000)
    gadget_range_check(cs, x, 32)
    cs.finalize()
    w = cs.witness()
    assert cs.is_satisfied(w)
    assert _mutation_check(cs, w, 100) == 100


def test_full_strength_round_count():
    full = MimcParams.full_strength()
    assert full.rounds == 110
    assert full.hash2_constraints == 660
    # same structure, different schedule: out-of-circuit and gadget agree
    cs = ConstraintSystem()
    l = cs.alloc(Visibility.PRIVATE, 5)
    r = cs.alloc(Visibility.PRIVATE, 6)
    out = gadget_hash2(cs, l, r, full)
    cs.finalize()
    assert int(cs.value_of(out)) == int(full.hash2(5, 6))
    assert cs.is_satisfied(cs.witness())


def test_structure_independent_of_values():
    def build(with_values):
        cs = ConstraintSystem()
        l = cs.alloc(Visibility.PRIVATE, 5 if with_values else None)
        r = cs.alloc(Visibility.PRIVATE, 6 if with_values else None)
        gadget_hash2(cs, l, r)
        gadget_range_check(cs, l, 16)
        cs.finalize()
        return cs.dump()

    assert build(True) == build(False)
