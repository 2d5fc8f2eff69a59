"""L2 node roles: transaction pool, trusted sequencer, trusted aggregator.

The pool accepts transactions (optionally as JSON lines), the sequencer
drains it FIFO into fixed-size batches (padding with system-account no-ops,
skipping transactions that are invalid against the evolving state), and the
aggregator turns sealed batches into Groth16 proofs. Sequencer and
aggregator are two components behind one in-process node facade; the pool
serializes concurrent submissions with a lock.

Pool durability is unmodeled: contents live in memory with optional JSONL
snapshot. The JSONL intake carries auth secrets in the clear and is a test
harness interface, insecure by design.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass

from .circuits import (
    BatchCircuitParams,
    BatchPublicInputs,
    WithdrawalPublicInputs,
    assign_batch_witness,
    assign_withdrawal_witness,
    build_batch_circuit,
    build_withdrawal_circuit,
)
from .errors import ProverRefusal, UsageError
from .groth16 import prove
from .state import (
    MAX_BALANCE,
    Batch,
    StateTree,
    Tx,
    apply_batch,
    apply_deposits,
    apply_tx,
    genesis_state,
    total_balance,
    tx_error,
)

__all__ = [
    "Batch",
    "Pool",
    "RollupNode",
    "SkippedTx",
    "StateTree",
    "Tx",
    "aggregator_prove",
    "apply_batch",
    "apply_deposits",
    "genesis_state",
    "pool_submit",
    "sequencer_create_batch",
    "total_balance",
    "tx_error",
    "withdrawal_prove",
]


@dataclass(frozen=True)
class SkippedTx:
    index_in_pool: int
    tx: Tx
    reason: str


class Pool:
    """FIFO transaction pool; duplicate (from, nonce) pairs are rejected."""

    def __init__(self):
        self._lock = threading.Lock()
        self._txs = []
        self._seen = set()
        self._next_ticket = 0

    def submit(self, tx: Tx) -> int:
        if not isinstance(tx, Tx):
            raise UsageError("pool accepts Tx objects")
        if tx.from_index < 0 or tx.to_index < 0:
            raise UsageError("malformed transaction: negative index")
        if not 0 <= tx.amount < MAX_BALANCE:
            raise UsageError("malformed transaction: amount out of range")
        if tx.nonce < 0:
            raise UsageError("malformed transaction: negative nonce")
        key = (tx.from_index, tx.nonce)
        with self._lock:
            if key in self._seen:
                raise UsageError(
                    f"duplicate (from={tx.from_index}, nonce={tx.nonce}) already pooled"
                )
            self._seen.add(key)
            ticket = self._next_ticket
            self._next_ticket += 1
            self._txs.append(tx)
        return ticket

    def submit_jsonl(self, line: str) -> int:
        return self.submit(Tx.from_json(line))

    def load_jsonl(self, path) -> int:
        count = 0
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    self.submit_jsonl(line)
                    count += 1
        return count

    def snapshot_jsonl(self) -> str:
        with self._lock:
            return "".join(tx.to_json() + "\n" for tx in self._txs)

    def peek(self):
        with self._lock:
            return list(self._txs)

    def __len__(self):
        with self._lock:
            return len(self._txs)

    def drain(self):
        with self._lock:
            txs = self._txs
            self._txs = []
            self._seen = set()
            return txs


def pool_submit(pool: Pool, tx: Tx) -> int:
    return pool.submit(tx)


def sequencer_create_batch(pool: Pool, state: StateTree, m: int,
                           sequence_number: int = 0, system_secret: int = 0):
    """Seal a batch of exactly m transactions from the pool.

    Valid transactions are taken in FIFO order against the evolving state;
    invalid ones are skipped and reported. Short batches are padded with
    amount-0 self-transfers from the system account. Returns
    (Batch, skipped list); identical pool + state always seal an identical
    batch.
    """
    if m < 1:
        raise UsageError("batch size must be >= 1")
    pre_root = state.root
    work = state.copy()
    selected = []
    skipped = []
    leftovers = []
    for i, tx in enumerate(pool.drain()):
        if len(selected) == m:
            leftovers.append(tx)
            continue
        reason = tx_error(work, tx)
        if reason is None:
            apply_tx(work, tx)
            selected.append(tx)
        else:
            skipped.append(SkippedTx(index_in_pool=i, tx=tx, reason=reason))
    for tx in leftovers:  # untouched transactions go back, order preserved
        pool.submit(tx)
    while len(selected) < m:
        pad = Tx(
            from_index=0,
            to_index=0,
            amount=0,
            nonce=work.account(0).nonce,
            auth_secret=system_secret,
        )
        apply_tx(work, pad)
        selected.append(pad)
    batch = Batch(
        txs=tuple(selected),
        pre_root=pre_root,
        post_root=work.root,
        sequence_number=sequence_number,
    )
    return batch, skipped


def aggregator_prove(batch: Batch, state: StateTree, params: BatchCircuitParams,
                     pk, cs=None, randomness: bytes = b"", deterministic: bool = False,
                     workers: int = 1):
    """Witness + proof for a sealed batch; this is the PrfGenB operation.

    Returns (Proof, BatchPublicInputs, wall_time_ms). The timing covers
    witness assignment and proving (the repetitive per-batch cost), not
    circuit construction.
    """
    if cs is None:
        cs = build_batch_circuit(params)
    start = time.perf_counter()
    witness = assign_batch_witness(params, state, batch)
    proof = prove(pk, cs, witness, randomness or batch.pre_root.to_bytes(32, "little"),
                  deterministic=deterministic, workers=workers)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    publics = BatchPublicInputs(old_state_root=batch.pre_root, new_state_root=batch.post_root)
    return proof, publics, elapsed_ms


def withdrawal_prove(state: StateTree, account_index: int, secret_key: int, amount: int,
                     pk_w, recipient_tag: int = 0, cs=None, randomness: bytes = b"",
                     deterministic: bool = False, workers: int = 1):
    """Proof for a single withdrawal; this is the PrfGenW operation.

    Refuses before proving when the balance is insufficient; a wrong secret
    surfaces as a witness error. Returns (Proof, WithdrawalPublicInputs,
    wall_time_ms).
    """
    if not 0 <= account_index < state.size:
        raise UsageError(f"account index {account_index} out of range")
    acct = state.account(account_index)
    if amount < 0 or amount > acct.balance:
        raise ProverRefusal(
            f"withdrawal of {amount} exceeds balance {acct.balance} of account {account_index}"
        )
    if cs is None:
        cs = build_withdrawal_circuit(state.depth)
    start = time.perf_counter()
    witness, publics = assign_withdrawal_witness(
        state, account_index, secret_key, amount, recipient_tag
    )
    proof = prove(pk_w, cs, witness, randomness or publics.nullifier.to_bytes(32, "little"),
                  deterministic=deterministic, workers=workers)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return proof, publics, elapsed_ms


class RollupNode:
    """Pool + sequencer + aggregator behind one facade (Fig-2-style roles)."""

    def __init__(self, state: StateTree, params: BatchCircuitParams, pk=None,
                 pk_withdrawal=None, deterministic: bool = False, workers: int = 1):
        if params.tree_depth != state.depth:
            raise UsageError("circuit tree depth must match the state tree")
        self.pool = Pool()
        self.state = state
        self.params = params
        self.pk = pk
        self.pk_withdrawal = pk_withdrawal
        self.deterministic = deterministic
        self.workers = workers
        self.batch_circuit = build_batch_circuit(params)
        self.withdrawal_circuit = build_withdrawal_circuit(state.depth)
        self.sealed = []
        self.timings = []  # (sequence_number, wall_time_ms)
        self._next_seq = 0

    def submit_tx(self, tx: Tx) -> int:
        return self.pool.submit(tx)

    def produce_batch(self):
        batch, skipped = sequencer_create_batch(
            self.pool, self.state, self.params.batch_size, self._next_seq
        )
        self._next_seq += 1
        self.sealed.append(batch)
        return batch, skipped

    def prove_batch(self, batch: Batch):
        if self.pk is None:
            raise UsageError("node has no batch proving key")
        proof, publics, ms = aggregator_prove(
            batch, self.state, self.params, self.pk, cs=self.batch_circuit,
            deterministic=self.deterministic, workers=self.workers,
        )
        self.timings.append((batch.sequence_number, ms))
        return proof, publics

    def advance(self, batch: Batch):
        self.state = apply_batch(self.state, batch)
        return self.state
