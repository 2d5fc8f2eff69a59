"""Algebra layer walkthrough: field, groups, pairing, FFT, MSM.

Everything downstream (constraints, ceremony, proofs) is built from the
five primitives shown here. Run: python demos/01_algebra_walkthrough.py
"""

import random

from zkrb.algebra import (
    EvaluationDomain,
    G1Point,
    G2Point,
    ScalarFieldElement as Fr,
    fft,
    msm,
    pairing,
    params_text,
)
from zkrb.algebra.params import R

rng = random.Random(7)

print("== pinned curve parameters ==")
print(params_text())

# --- scalar field -----------------------------------------------------------
print("\n== scalar field ==")
a = Fr(rng.randrange(1, int(R)))
print("a * a^-1 =", a * a.inverse())           # multiplicative inverse
print("Fermat:   a^(r-1) =", a ** (int(R) - 1))

# --- groups ------------------------------------------------------------------
print("\n== elliptic-curve groups ==")
G1, G2 = G1Point.generator(), G2Point.generator()
k1, k2 = rng.randrange(int(R)), rng.randrange(int(R))
print("(k1 + k2)G == k1 G + k2 G:", (k1 + k2) % int(R) * G1 == k1 * G1 + k2 * G1)
print("r * G1 is identity:", (int(R) * G1).is_identity)
print("compressed G1 point:", (k1 * G1).to_bytes().hex()[:32], "... (33 bytes)")

# --- pairing -----------------------------------------------------------------
print("\n== bilinear pairing ==")
e = pairing(G1, G2)
print("e(aP, bQ) == e(P, Q)^(ab):", pairing(k1 * G1, k2 * G2) == e ** (k1 * k2 % int(R)))
print("non-degenerate:", not e.is_identity)

# --- FFT over the scalar field -------------------------------------------------
print("\n== evaluation domains and FFT ==")
dom = EvaluationDomain(8)
coeffs = [Fr(rng.randrange(100)) for _ in range(8)]
evals = fft(coeffs, dom)
back = fft(evals, dom, "inverse")
print("domain generator^8 == 1:", dom.generator ** 8 == Fr(1))
print("ifft(fft(p)) == p (exact):", back == coeffs)

# --- MSM (the prover's hot loop) ---------------------------------------------
print("\n== multi-scalar multiplication ==")
points = [rng.randrange(1, 1000) * G1 for _ in range(64)]
scalars = [Fr(rng.randrange(int(R))) for _ in range(64)]
naive = G1Point.identity()
for s, p in zip(scalars, points):
    naive = naive + p * s
print("bucketed msm == naive accumulation:", msm(scalars, points) == naive)
print("worker count never changes bytes:", msm(scalars, points, workers=4) == naive)
