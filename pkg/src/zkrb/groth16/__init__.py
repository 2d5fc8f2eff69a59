"""Groth16 proving system: ceremony, key generation, proving, verification."""

from .keys import PROOF_BYTES, Proof, ProvingKey, VerifyingKey, proof_from_json, proof_to_json
from .prove import prove
from .setup import required_tau_n, setup
from .tau import (
    DEFAULT_MEMORY_BUDGET,
    TauAccumulator,
    memory_budget_bytes,
    projected_memory_bytes,
    tau_contribute,
    tau_init,
    tau_verify_chain,
)
from .verify import verify

__all__ = [
    "DEFAULT_MEMORY_BUDGET",
    "PROOF_BYTES",
    "Proof",
    "ProvingKey",
    "TauAccumulator",
    "VerifyingKey",
    "memory_budget_bytes",
    "projected_memory_bytes",
    "proof_from_json",
    "proof_to_json",
    "prove",
    "required_tau_n",
    "setup",
    "tau_contribute",
    "tau_init",
    "tau_verify_chain",
    "verify",
]
