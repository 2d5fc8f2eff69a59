import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zkrb.algebra import ScalarFieldElement as Fr
from zkrb.algebra import batch_inverse, field_arith
from zkrb.algebra.params import R
from zkrb.errors import UsageError

R_INT = int(R)
rng = random.Random(0xF1E1D)

residues = st.integers(min_value=0, max_value=R_INT - 1)


@given(residues, residues, residues)
@settings(max_examples=200, deadline=None)
def test_field_axioms(a, b, c):
    x, y, z = Fr(a), Fr(b), Fr(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z


def test_identities_and_inverse():
    for _ in range(50):
        a = Fr(rng.randrange(R_INT))
        assert a + 0 == a
        assert a * 1 == a
        assert a - a == Fr(0)
        if a != Fr(0):
            assert a * a.inverse() == Fr(1)
            assert a ** (R_INT - 1) == Fr(1)  # Fermat


def test_pow_and_negative_exponent():
    g = Fr(5)
    assert g ** 0 == Fr(1)
    assert g ** -1 == g.inverse()
    assert g ** 3 == g * g * g


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Fr(0).inverse()
    with pytest.raises(ZeroDivisionError):
        field_arith(Fr(0), None, "inv")


def test_field_arith_dispatch():
    a, b = Fr(6), Fr(3)
    assert field_arith(a, b, "add") == Fr(9)
    assert field_arith(a, b, "sub") == Fr(3)
    assert field_arith(a, b, "mul") == Fr(18)
    assert field_arith(a, 3, "pow") == Fr(216)
    assert field_arith(b, None, "inv") * b == Fr(1)
    with pytest.raises(UsageError):
        field_arith(a, b, "xor")


def test_canonical_range_and_reduction():
    assert Fr(R_INT) == Fr(0)
    assert Fr(-1) == Fr(R_INT - 1)
    assert int(Fr(R_INT + 5)) == 5


def test_serialization_roundtrip():
    for _ in range(20):
        a = Fr(rng.randrange(R_INT))
        assert Fr.from_bytes(a.to_bytes()) == a
    assert len(Fr(1).to_bytes()) == 32
    with pytest.raises(UsageError):
        Fr.from_bytes(b"\x00" * 31)
    with pytest.raises(UsageError):
        Fr.from_bytes((R_INT).to_bytes(32, "little"))


def test_batch_inverse_matches_single():
    vals = [Fr(rng.randrange(1, R_INT)).value for _ in range(33)]
    inv = batch_inverse(vals)
    for v, iv in zip(vals, inv):
        assert v * iv % R_INT == 1
    assert batch_inverse([]) == []
    with pytest.raises(ZeroDivisionError):
        batch_inverse([Fr(0).value])


def test_mixed_int_operands():
    a = Fr(10)
    assert 5 + a == Fr(15)
    assert 5 * a == Fr(50)
    assert 25 - a == Fr(15)
    assert a / 2 == Fr(5)
