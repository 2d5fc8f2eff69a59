"""zkrb: a self-contained ZK-rollup pipeline and cost-scaling benchmark.

Layers: algebra (BN254 field/groups/pairing/FFT/MSM), r1cs (constraint
builder and gadgets), circuits (batch-transfer and withdrawal), groth16
(ceremony, setup, prove, verify), rollup (pool/sequencer/state/aggregator),
l1sim (verifier contract and gas model), bench (scenario harness).
"""

__version__ = "0.1.0"
