"""Proof generation: witness-collapsed polynomial MSMs plus the H quotient.

The dominant cost is four coefficient-form MSMs over the proving key's
power vectors (three in G1, one in G2) and seven size-N field FFTs for the
coset quotient; this is the batch-size-dependent piece the benchmarks
track. The witness is checked against the constraint system *before* any
expensive work and refused if unsatisfied.
"""

from __future__ import annotations

import hashlib
import os

from ..algebra import ec
from ..algebra.fft import EvaluationDomain, _fft_ints, coset_scale
from ..algebra.msm import msm_raw_g1, msm_raw_g2
from ..algebra.params import MULTIPLICATIVE_GENERATOR, R, mpz
from ..errors import ProverRefusal, UsageError
from ..r1cs.system import ConstraintSystem, Witness
from .keys import Proof, ProvingKey
from .qap import eval_vectors

_R = R
_COSET_SHIFT = mpz(MULTIPLICATIVE_GENERATOR)


def _blinding(randomness: bytes, deterministic: bool):
    mix = b"" if deterministic else os.urandom(32)
    digest = hashlib.sha512(b"zkrb-prover-blinding:" + randomness + mix).digest()
    r = int.from_bytes(digest[:32], "big") % int(_R)
    s = int.from_bytes(digest[32:], "big") % int(_R)
    return mpz(r), mpz(s)


def quotient_coefficients(cs: ConstraintSystem, witness: Witness, domain: EvaluationDomain,
                          workers: int = 1):
    """Coefficients of u_w, v_w, w_w and the quotient h = (u*v - w)/Z."""
    n = domain.size
    a_ev, b_ev, c_ev = eval_vectors(cs, witness.raw, n)
    a_cf = _fft_ints(a_ev, domain, inverse=True, workers=workers)
    b_cf = _fft_ints(b_ev, domain, inverse=True, workers=workers)
    c_cf = _fft_ints(c_ev, domain, inverse=True, workers=workers)
    # evaluate on the shifted coset where Z(g*w^i) = g^N - 1 is constant
    a_cos = _fft_ints(coset_scale(a_cf, _COSET_SHIFT), domain, inverse=False, workers=workers)
    b_cos = _fft_ints(coset_scale(b_cf, _COSET_SHIFT), domain, inverse=False, workers=workers)
    c_cos = _fft_ints(coset_scale(c_cf, _COSET_SHIFT), domain, inverse=False, workers=workers)
    z_inv = pow((pow(_COSET_SHIFT, n, _R) - 1) % _R, _R - 2, _R)
    q_cos = [
        (a_cos[i] * b_cos[i] - c_cos[i]) % _R * z_inv % _R
        for i in range(n)
    ]
    q_cf = _fft_ints(q_cos, domain, inverse=True, workers=workers)
    shift_inv = pow(_COSET_SHIFT, _R - 2, _R)
    h_cf = coset_scale(q_cf, shift_inv)
    return a_cf, b_cf, c_cf, h_cf


def prove(
    pk: ProvingKey,
    cs: ConstraintSystem,
    witness: Witness,
    randomness: bytes,
    deterministic: bool = False,
    workers: int = 1,
) -> Proof:
    if not cs.finalized:
        raise UsageError("finalize the constraint system before proving")
    if cs.stats.domain_size != pk.domain_size or cs.num_variables != pk.num_variables:
        raise UsageError("proving key does not match this constraint system")
    if not cs.is_satisfied(witness):
        raise ProverRefusal("witness does not satisfy the constraint system; refusing to prove")

    domain = EvaluationDomain(pk.domain_size)
    a_cf, b_cf, _, h_cf = quotient_coefficients(cs, witness, domain, workers)
    if h_cf[-1] != 0:
        raise ProverRefusal("quotient degree overflow (constraint system inconsistent)")

    r_blind, s_blind = _blinding(randomness, deterministic)
    delta1_jac = (pk.delta_g1[0], pk.delta_g1[1], mpz(1))

    # A = alpha + u_w(tau) + r*delta
    a_acc = msm_raw_g1(a_cf, pk.g1_powers, workers)
    a_acc = ec._g1_add_affine(a_acc, pk.alpha_g1)
    a_acc = ec._g1_add(a_acc, ec._g1_mul(pk.delta_g1, r_blind))
    a_aff = ec._g1_to_affine(a_acc)

    # B = beta + v_w(tau) + s*delta (in both groups)
    b2_acc = msm_raw_g2(b_cf, pk.g2_powers, workers)
    b2_acc = ec._g2_add_affine(b2_acc, pk.beta_g2)
    b2_acc = ec._g2_add(b2_acc, ec._g2_mul(pk.delta_g2, s_blind))
    b1_acc = msm_raw_g1(b_cf, pk.g1_powers, workers)
    b1_acc = ec._g1_add_affine(b1_acc, pk.beta_g1)
    b1_acc = ec._g1_add(b1_acc, ec._g1_mul(pk.delta_g1, s_blind))
    b1_aff = ec._g1_to_affine(b1_acc)

    # C = sum_priv w_i * c_query_i + H(tau)Z(tau)/delta + s*A + r*B1 - r*s*delta
    priv_scalars = witness.raw[pk.num_public + 1 :]
    c_acc = msm_raw_g1(priv_scalars, pk.c_query, workers)
    c_acc = ec._g1_add(c_acc, msm_raw_g1(h_cf[:-1], pk.h_query, workers))
    c_acc = ec._g1_add(c_acc, ec._g1_mul(a_aff, s_blind))
    c_acc = ec._g1_add(c_acc, ec._g1_mul(b1_aff, r_blind))
    rs = -(r_blind * s_blind) % _R
    c_acc = ec._g1_add(c_acc, ec._g1_mul(pk.delta_g1, rs))

    return Proof(
        a=ec.G1Point._wrap(a_aff),
        b=ec.G2Point._wrap(ec._g2_to_affine(b2_acc)),
        c=ec.G1Point._wrap(ec._g1_to_affine(c_acc)),
    )
