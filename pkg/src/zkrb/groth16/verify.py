"""Proof verification: one (num_public + 1)-term MSM and four pairings.

Work is independent of the circuit size; the instrumentation counters let
tests pin the pairing count at exactly 4 and the MSM length at
num_public + 1.
"""

from __future__ import annotations

from ..algebra.field import ScalarFieldElement
from ..algebra.msm import msm
from ..algebra.pairing import pairing
from ..errors import UsageError
from .keys import Proof, VerifyingKey


def verify(vk: VerifyingKey, public_inputs, proof: Proof) -> bool:
    if len(public_inputs) != vk.num_public:
        raise UsageError(
            f"expected {vk.num_public} public inputs, got {len(public_inputs)}"
        )
    scalars = [ScalarFieldElement(1)]
    for v in public_inputs:
        scalars.append(v if isinstance(v, ScalarFieldElement) else ScalarFieldElement(int(v)))
    ic_point = msm(scalars, list(vk.ic))
    lhs = pairing(proof.a, proof.b)
    rhs = (
        pairing(vk.alpha_g1, vk.beta_g2)
        * pairing(ic_point, vk.gamma_g2)
        * pairing(proof.c, vk.delta_g2)
    )
    return lhs == rhs
