import random

import pytest

from zkrb.algebra import G1Point, G2Point, ScalarFieldElement as Fr, group_op
from zkrb.algebra.params import R
from zkrb.errors import UsageError

R_INT = int(R)
rng = random.Random(0xEC)
G1 = G1Point.generator()
G2 = G2Point.generator()


@pytest.mark.parametrize("G", [G1, G2], ids=["g1", "g2"])
def test_scalar_mul_basics(G):
    assert (0 * G).is_identity
    assert 1 * G == G
    assert (R_INT * G).is_identity
    assert 2 * G == G + G
    assert (G - G).is_identity
    assert -(-G) == G


@pytest.mark.parametrize("G", [G1, G2], ids=["g1", "g2"])
def test_scalar_mul_distributive(G):
    for _ in range(15):
        k1 = rng.randrange(R_INT)
        k2 = rng.randrange(R_INT)
        assert (k1 + k2) % R_INT * G == k1 * G + k2 * G


@pytest.mark.parametrize("G", [G1, G2], ids=["g1", "g2"])
def test_glv_vs_plain_paths(G):
    # small scalars travel the plain window path; large ones the GLV path
    for _ in range(10):
        k = rng.randrange(R_INT)
        lo = k & ((1 << 130) - 1)
        assert k * G == lo * G + (k - lo) * G


def test_add_identity_and_commutativity():
    P = 7 * G1
    Q = 11 * G1
    assert P + G1Point.identity() == P
    assert P + Q == Q + P
    P2, Q2 = 7 * G2, 11 * G2
    assert P2 + G2Point.identity() == P2
    assert P2 + Q2 == Q2 + P2


def test_scalar_accepts_field_elements():
    k = Fr(12345)
    assert k * G1 == 12345 * G1
    assert k * G2 == 12345 * G2


def test_group_op_dispatch():
    P = 3 * G1
    assert group_op(P, G1, "add") == 4 * G1
    assert group_op(P, 0, "scalar_mul").is_identity
    assert group_op(P, None, "neg") == -P
    with pytest.raises(UsageError):
        group_op(P, G1, "frobnicate")


def test_g1_codec_roundtrip_and_rejection():
    for k in [0, 1, 2, 12345, rng.randrange(R_INT)]:
        P = k * G1
        data = P.to_bytes()
        assert len(data) == 33
        assert G1Point.from_bytes(data) == P
    with pytest.raises(UsageError):
        G1Point.from_bytes(b"\x00" * 33)  # x=0 not on curve, flag 0
    with pytest.raises(UsageError):
        G1Point.from_bytes(b"\x00" * 32 + b"\x07")
    with pytest.raises(UsageError):
        G1Point.from_bytes(b"\x00" * 10)


def test_g2_codec_roundtrip_and_rejection():
    for k in [0, 1, 5, rng.randrange(R_INT)]:
        P = k * G2
        data = P.to_bytes()
        assert len(data) == 65
        assert G2Point.from_bytes(data) == P
    # tampered x-coordinate: off the twist curve (or off-subgroup), rejected
    data = bytearray((3 * G2).to_bytes())
    data[0] ^= 0xFF
    with pytest.raises(UsageError):
        G2Point.from_bytes(bytes(data))


def test_on_curve_validation():
    with pytest.raises(UsageError):
        G1Point(1, 1)
    with pytest.raises(UsageError):
        G2Point((1, 1), (1, 1))


def test_points_hashable_and_immutable():
    P = 5 * G1
    assert len({P, 5 * G1, 6 * G1}) == 2
    with pytest.raises(AttributeError):
        P._c = None
