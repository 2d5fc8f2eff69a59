import random

import pytest

from zkrb.algebra import EvaluationDomain, ScalarFieldElement as Fr, fft
from zkrb.algebra.fft import coset_scale
from zkrb.algebra.params import R, TWO_ADICITY
from zkrb.errors import UsageError

R_INT = int(R)
rng = random.Random(0xFF7)


def horner(coeffs, x):
    acc = Fr(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def test_domain_generator_order():
    for size in (1, 2, 8, 64, 1024):
        dom = EvaluationDomain(size)
        g = dom.generator
        assert g ** size == Fr(1)
        if size > 1:
            assert g ** (size // 2) != Fr(1)


def test_domain_validation():
    with pytest.raises(UsageError):
        EvaluationDomain(3)
    with pytest.raises(UsageError):
        EvaluationDomain(0)
    with pytest.raises(UsageError):
        EvaluationDomain(1 << (TWO_ADICITY + 1))


def test_forward_matches_naive_evaluation():
    # independent oracle: Horner evaluation at every domain point
    dom = EvaluationDomain(8)
    coeffs = [Fr(rng.randrange(R_INT)) for _ in range(8)]
    evals = fft(coeffs, dom)
    points = [Fr(x) for x in dom.elements()]
    for i in range(8):
        assert evals[i] == horner(coeffs, points[i])


def test_roundtrip_exact():
    for size in (2, 16, 256):
        dom = EvaluationDomain(size)
        coeffs = [Fr(rng.randrange(R_INT)) for _ in range(size)]
        assert fft(fft(coeffs, dom), dom, "inverse") == coeffs
        assert fft(fft(coeffs, dom, "inverse"), dom) == coeffs


def test_constant_polynomial():
    dom = EvaluationDomain(8)
    c = Fr(7)
    evals = fft([c] + [Fr(0)] * 7, dom)
    assert all(v == c for v in evals)


def test_length_and_direction_validation():
    dom = EvaluationDomain(8)
    with pytest.raises(UsageError):
        fft([Fr(1)] * 4, dom)
    with pytest.raises(UsageError):
        fft([Fr(1)] * 8, dom, "sideways")


def test_workers_bit_identical():
    dom = EvaluationDomain(2048)
    vals = [Fr(rng.randrange(R_INT)) for _ in range(2048)]
    serial = fft(vals, dom)
    for w in (2, 3, 4):
        assert fft(vals, dom, workers=w) == serial
    inv_serial = fft(vals, dom, "inverse")
    assert fft(vals, dom, "inverse", workers=4) == inv_serial


def test_coset_scale_is_evaluation_shift():
    dom = EvaluationDomain(16)
    coeffs = [Fr(rng.randrange(R_INT)) for _ in range(16)]
    g = Fr(5)
    shifted = [Fr(x) for x in coset_scale([c.value for c in coeffs], g.value)]
    evals = fft(shifted, dom)
    points = [Fr(x) for x in dom.elements()]
    for i in (0, 3, 7):
        assert evals[i] == horner(coeffs, g * points[i])
