import random

import pytest

from zkrb.algebra import G1Point, G2Point, ScalarFieldElement as Fr, msm
from zkrb.algebra.msm import window_bits
from zkrb.algebra.params import R
from zkrb.errors import UsageError

R_INT = int(R)
rng = random.Random(0x3533)
G1 = G1Point.generator()
G2 = G2Point.generator()


def naive_msm(scalars, points):
    """Per-term double-and-add accumulation: the reference oracle."""
    acc = points[0].identity() if points else G1Point.identity()
    for k, p in zip(scalars, points):
        acc = acc + p * k
    return acc


def test_empty_and_singleton():
    assert msm([], []).is_identity
    P = 7 * G1
    assert msm([Fr(1)], [P]) == P
    assert msm([Fr(0)], [P]).is_identity


def test_length_mismatch():
    with pytest.raises(UsageError):
        msm([Fr(1)], [])


def test_g1_matches_naive_64():
    points = [rng.randrange(1, 10_000) * G1 for _ in range(64)]
    scalars = [Fr(rng.randrange(R_INT)) for _ in range(64)]
    assert msm(scalars, points) == naive_msm(scalars, points)


def test_g2_matches_naive():
    points = [rng.randrange(1, 1000) * G2 for _ in range(20)]
    scalars = [Fr(rng.randrange(R_INT)) for _ in range(20)]
    assert msm(scalars, points) == naive_msm(scalars, points)


def test_identity_points_and_zero_scalars_ignored():
    points = [3 * G1, G1Point.identity(), 5 * G1]
    scalars = [Fr(2), Fr(9), Fr(0)]
    assert msm(scalars, points) == 6 * G1


def test_workers_bit_identical():
    points = [rng.randrange(1, 1000) * G1 for _ in range(600)]
    scalars = [Fr(rng.randrange(R_INT)) for _ in range(600)]
    serial = msm(scalars, points)
    for w in (2, 4):
        par = msm(scalars, points, workers=w)
        assert par == serial
        assert par.to_bytes() == serial.to_bytes()


def test_random_sizes_match_naive():
    for _ in range(8):
        n = rng.randrange(2, 40)
        points = [rng.randrange(1, 500) * G1 for _ in range(n)]
        scalars = [Fr(rng.randrange(R_INT)) for _ in range(n)]
        assert msm(scalars, points) == naive_msm(scalars, points)


def test_window_heuristic_deterministic_and_monotone():
    widths = [window_bits(n) for n in (1, 8, 64, 1024, 1 << 14, 1 << 16)]
    assert widths == [window_bits(n) for n in (1, 8, 64, 1024, 1 << 14, 1 << 16)]
    assert all(w1 <= w2 for w1, w2 in zip(widths, widths[1:]))
