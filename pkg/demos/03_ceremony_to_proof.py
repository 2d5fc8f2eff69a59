"""The full proving-system lifecycle on a small circuit.

Powers-of-Tau ceremony (two contributions, chain-verified), circuit
key generation, proof generation with fresh blinding, verification, and
the soundness failure modes. Uses a deliberately small security parameter
so it runs in seconds.

Run: python demos/03_ceremony_to_proof.py
"""

import os

from zkrb.algebra import G1Point
from zkrb.errors import ProverRefusal
from zkrb.groth16 import (
    Proof,
    projected_memory_bytes,
    prove,
    setup,
    tau_contribute,
    tau_init,
    tau_verify_chain,
    verify,
)
from zkrb.r1cs import ConstraintSystem, Visibility, Witness

WORKERS = os.cpu_count() or 1

# the statement: public cube z, private x with x^3 = z
def cube_circuit(x=None):
    cs = ConstraintSystem()
    z = cs.alloc(Visibility.PUBLIC, None if x is None else x**3)
    xv = cs.alloc(Visibility.PRIVATE, x)
    sq = cs.mul(xv, xv)
    cs.enforce(sq, xv, z)
    cs.finalize()
    return cs

print("== step 1: trusted setup ceremony ==")
print(f"projected memory for n=6: {projected_memory_bytes(6)} bytes")
acc = tau_init(6)
print("fresh accumulator verifies:", tau_verify_chain(acc))
acc = tau_contribute(acc, b"first participant entropy", workers=WORKERS)
acc = tau_contribute(acc, b"second participant entropy", workers=WORKERS)
print("after 2 contributions:", tau_verify_chain(acc), "| log length:", len(acc.contribution_log))

print("\n== step 2: circuit compilation ==")
cs = cube_circuit(x=4)
print("stats:", cs.stats)

print("\n== step 3: key generation + proof ==")
pk, vk = setup(acc, cs, b"setup entropy", workers=WORKERS)
witness = cs.witness()
proof = prove(pk, cs, witness, b"prover randomness", workers=WORKERS)
print("proof size:", len(proof.to_bytes()), "bytes (constant for any circuit)")

print("\n== step 4: verification ==")
publics = witness.public_values(cs.num_public)
print("honest proof verifies:", verify(vk, publics, proof))

print("\n== what the verifier refuses ==")
print("wrong public input:", verify(vk, [publics[0] + 1], proof))
tampered = Proof(proof.a + G1Point.generator(), proof.b, proof.c)
print("tampered proof:", verify(vk, publics, tampered))

wrong = cube_circuit(x=4)
bad_witness = Witness([1, 64, 5, 25])  # claims 5^3 = 64
try:
    prove(pk, wrong, bad_witness, b"r")
except ProverRefusal as exc:
    print("prover refusal:", exc)

print("\n== blinding: same witness, different proof bytes ==")
p2 = prove(pk, cs, witness, b"other randomness", workers=WORKERS)
print("bytes differ:", p2.to_bytes() != proof.to_bytes(), "| still verifies:", verify(vk, publics, p2))
