"""Simulated mainchain: rollup verifier contract, gas metering, fiat costs.

No EVM: the contract is a native state machine and the gas model is applied
analytically from a configurable schedule whose defaults mirror public
Ethereum pricing (tx base 21000, pairing 45000 + 34000/pair, scalar-mul
6000, point-add 150, calldata 16/4 per nonzero/zero byte, storage update
5000). All outcomes are receipts; invalid submissions are rejected but
still metered.

Batch calldata is validity-proof-only (proof bytes + the two roots). The
`include_tx_data` flag adds the batch's transaction bytes to model full
data availability; exploratory, not a reproduction target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

from .algebra.field import ScalarFieldElement
from .circuits import BatchPublicInputs, WithdrawalPublicInputs
from .errors import UsageError
from .groth16 import Proof, VerifyingKey, proof_from_json, verify
from .state import MAX_BALANCE


@dataclass(frozen=True)
class GasSchedule:
    tx_base: int = 21000
    pairing_base: int = 45000
    pairing_per_pair: int = 34000
    ecmul_per_input: int = 6000
    ecadd_per_input: int = 150
    calldata_nonzero_byte: int = 16
    calldata_zero_byte: int = 4
    storage_update: int = 5000

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if value < 0:
                raise UsageError(f"gas schedule field {name} must be non-negative")


@dataclass(frozen=True)
class PriceConfig:
    gas_price_gwei: Decimal = Decimal(20)
    eth_usd: Decimal = Decimal(3000)


@dataclass(frozen=True)
class Receipt:
    accepted: bool
    gas_used: int
    calldata_bytes: int
    reason: str | None = None
    batch_seq: int | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "accepted": self.accepted,
                "gas_used": self.gas_used,
                "calldata_bytes": self.calldata_bytes,
                "reason": self.reason,
                "batch_seq": self.batch_seq,
            },
            separators=(",", ":"),
        )


def calldata_gas(calldata: bytes, schedule: GasSchedule) -> int:
    nonzero = sum(1 for b in calldata if b)
    zero = len(calldata) - nonzero
    return nonzero * schedule.calldata_nonzero_byte + zero * schedule.calldata_zero_byte


def gas_for_submission(publics_count: int, calldata: bytes, schedule: GasSchedule) -> int:
    """Deterministic gas for one proof submission with k public inputs.

    gas = tx_base + pairing_base + 4*pairing_per_pair
        + k*(ecmul_per_input + ecadd_per_input)
        + per-byte calldata charges + storage_update
    """
    if publics_count < 0:
        raise UsageError("public input count must be >= 0")
    return (
        schedule.tx_base
        + schedule.pairing_base
        + 4 * schedule.pairing_per_pair
        + publics_count * (schedule.ecmul_per_input + schedule.ecadd_per_input)
        + calldata_gas(calldata, schedule)
        + schedule.storage_update
    )


def per_tx_cost(receipt: Receipt, m: int, price: PriceConfig):
    """(gas_per_tx as Fraction, usd_per_tx as Decimal, half-even 6 places)."""
    if m < 1:
        raise UsageError("batch size must be >= 1 for per-transaction costs")
    gas_per_tx = Fraction(receipt.gas_used, m)
    usd = (
        Decimal(receipt.gas_used)
        / Decimal(m)
        * price.gas_price_gwei
        * Decimal("1e-9")
        * price.eth_usd
    ).quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN)
    return gas_per_tx, usd


class RollupContract:
    """Verifier contract state: current root, batch log, spent nullifiers."""

    def __init__(self, vk_batch: VerifyingKey, vk_withdrawal: VerifyingKey, genesis_root: int):
        self.vk_batch = vk_batch
        self.vk_withdrawal = vk_withdrawal
        self.current_root = int(genesis_root)
        self.genesis_root = int(genesis_root)
        self.verified_batches = []  # append-only (seq, old_root, new_root, gas)
        self.spent_nullifiers = set()
        self.deposit_log = []
        self._known_roots = {self.genesis_root}

    # -- submissions -------------------------------------------------------

    def _batch_calldata(self, proof: Proof, publics: BatchPublicInputs,
                        tx_data: bytes = b"") -> bytes:
        return (
            proof.to_bytes()
            + ScalarFieldElement(publics.old_state_root).to_bytes()
            + ScalarFieldElement(publics.new_state_root).to_bytes()
            + tx_data
        )

    def submit_batch(self, proof: Proof, publics: BatchPublicInputs,
                     schedule: GasSchedule, batch_seq: int | None = None,
                     tx_data: bytes = b"") -> Receipt:
        calldata = self._batch_calldata(proof, publics, tx_data)
        gas = gas_for_submission(2, calldata, schedule)
        if publics.old_state_root != self.current_root:
            return Receipt(False, gas, len(calldata), "root mismatch", batch_seq)
        ok = verify(
            self.vk_batch,
            [ScalarFieldElement(publics.old_state_root), ScalarFieldElement(publics.new_state_root)],
            proof,
        )
        if not ok:
            return Receipt(False, gas, len(calldata), "proof invalid", batch_seq)
        self.current_root = int(publics.new_state_root)
        self._known_roots.add(self.current_root)
        self.verified_batches.append(
            (batch_seq, int(publics.old_state_root), int(publics.new_state_root), gas)
        )
        return Receipt(True, gas, len(calldata), None, batch_seq)

    def submit_withdrawal(self, proof: Proof, publics: WithdrawalPublicInputs,
                          schedule: GasSchedule) -> Receipt:
        calldata = proof.to_bytes() + b"".join(
            ScalarFieldElement(v).to_bytes() for v in publics.to_list()
        )
        gas = gas_for_submission(4, calldata, schedule)
        if int(publics.state_root) not in self._known_roots:
            return Receipt(False, gas, len(calldata), "unknown root")
        if int(publics.nullifier) in self.spent_nullifiers:
            return Receipt(False, gas, len(calldata), "nullifier spent")
        if not 0 <= int(publics.amount) < MAX_BALANCE:
            return Receipt(False, gas, len(calldata), "amount out of range")
        ok = verify(
            self.vk_withdrawal,
            [ScalarFieldElement(v) for v in publics.to_list()],
            proof,
        )
        if not ok:
            return Receipt(False, gas, len(calldata), "proof invalid")
        self.spent_nullifiers.add(int(publics.nullifier))
        return Receipt(True, gas, len(calldata), None)

    def submit_batch_json(self, submission: str, schedule: GasSchedule,
                          batch_seq: int | None = None) -> Receipt:
        """Accepts the proof-JSON wire format (keys a, b, c, public_inputs)."""
        proof, publics = proof_from_json(submission)
        if len(publics) != 2:
            raise UsageError("batch submission needs exactly 2 public inputs")
        return self.submit_batch(
            proof,
            BatchPublicInputs(int(publics[0]), int(publics[1])),
            schedule,
            batch_seq,
        )

    def record_deposits(self, credits: dict, schedule: GasSchedule) -> Receipt:
        """Privileged L1-side deposit intake, outside the proof path.

        Trust simplification: deposits are logged and metered here but not
        proven; the operator mirrors them into L2 state with
        `rollup.apply_deposits`.
        """
        calldata = b"".join(
            int(i).to_bytes(4, "little") + int(v).to_bytes(8, "little")
            for i, v in sorted(credits.items())
        )
        gas = schedule.tx_base + calldata_gas(calldata, schedule) + schedule.storage_update
        self.deposit_log.append(dict(credits))
        return Receipt(True, gas, len(calldata), None)


def deploy(vk_batch: VerifyingKey, vk_withdrawal: VerifyingKey, genesis_root: int) -> RollupContract:
    return RollupContract(vk_batch, vk_withdrawal, genesis_root)
