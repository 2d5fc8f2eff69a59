"""Finite-field, elliptic-curve, pairing and FFT arithmetic over BN254."""

from .ec import G1Point, G2Point, group_op
from .field import ScalarFieldElement, batch_inverse, field_arith
from .fft import EvaluationDomain, fft
from .instrumentation import get_counters, reset_counters
from .msm import msm
from .pairing import GTElement, pairing
from .params import params_text

__all__ = [
    "EvaluationDomain",
    "G1Point",
    "G2Point",
    "GTElement",
    "ScalarFieldElement",
    "batch_inverse",
    "fft",
    "field_arith",
    "get_counters",
    "group_op",
    "msm",
    "pairing",
    "params_text",
    "reset_counters",
]
