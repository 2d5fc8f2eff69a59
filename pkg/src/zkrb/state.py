"""L2 ledger state: accounts in a fixed-depth Merkle tree, transfers, batches.

Leaf hash = H(key_hash, H(balance, nonce)); key_hash = H(secret_key, 0).
Account 0 is the system account (secret key 0) used for batch padding.
This module is the plain state-machine oracle that the batch circuit must
agree with.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import IntegrityError, UsageError
from .hashing import MimcParams, default_params

BALANCE_BITS = 64
MAX_BALANCE = 1 << BALANCE_BITS


@dataclass
class Account:
    key_hash: int
    balance: int = 0
    nonce: int = 0

    def copy(self) -> "Account":
        return Account(self.key_hash, self.balance, self.nonce)


@dataclass(frozen=True)
class Tx:
    from_index: int
    to_index: int
    amount: int
    nonce: int
    auth_secret: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "from": self.from_index,
                "to": self.to_index,
                "amount": self.amount,
                "nonce": self.nonce,
                "secret": self.auth_secret,
            },
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "Tx":
        try:
            obj = json.loads(line)
            return cls(
                from_index=int(obj["from"]),
                to_index=int(obj["to"]),
                amount=int(obj["amount"]),
                nonce=int(obj["nonce"]),
                auth_secret=int(obj["secret"]),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed transaction line: {exc}") from exc


@dataclass(frozen=True)
class Batch:
    txs: tuple
    pre_root: int
    post_root: int
    sequence_number: int

    @property
    def size(self) -> int:
        return len(self.txs)


class StateTree:
    """Complete binary Merkle tree over 2^depth account leaves.

    Internal nodes are cached in a flat array (node 1 = root); updates

    rehash one root-to-leaf path. The root always matches a full recompute.
    """

    def __init__(self, depth: int, params: MimcParams | None = None):
        if depth < 1:
            raise UsageError("tree depth must be >= 1")
        self.depth = depth
        self.size = 1 << depth
        self.params = params or default_params()
        system_key_hash = int(self.params.hash2(0, 0))
        self.accounts = [Account(key_hash=0) for _ in range(self.size)]
        self.accounts[0] = Account(key_hash=system_key_hash)
        self._nodes = [0] * (2 * self.size)
        self._rebuild()

    def leaf_hash(self, account: Account) -> int:
        inner = self.params.hash2(account.balance, account.nonce)
        return int(self.params.hash2(account.key_hash, inner))

    def _rebuild(self):
        for i, acct in enumerate(self.accounts):
            self._nodes[self.size + i] = self.leaf_hash(acct)
        for pos in range(self.size - 1, 0, -1):
            self._nodes[pos] = int(
                self.params.hash2(self._nodes[2 * pos], self._nodes[2 * pos + 1])
            )

    @property
    def root(self) -> int:
        return self._nodes[1]

    def account(self, index: int) -> Account:
        return self.accounts[index]

    def set_account(self, index: int, account: Account):
        if not 0 <= index < self.size:
            raise UsageError(f"account index {index} out of range")
        self.accounts[index] = account
        pos = self.size + index
        self._nodes[pos] = self.leaf_hash(account)
        pos >>= 1
        while pos:
            self._nodes[pos] = int(
                self.params.hash2(self._nodes[2 * pos], self._nodes[2 * pos + 1])
            )
            pos >>= 1

    def siblings(self, index: int):
        """Bottom-up sibling hashes of the leaf's path."""
        out = []
        pos = self.size + index
        while pos > 1:
            out.append(self._nodes[pos ^ 1])
            pos >>= 1
        return out

    @staticmethod
    def index_bits(index: int, depth: int):
        """LSB-first path bits; bit = 1 means the node is a right child."""
        return [(index >> level) & 1 for level in range(depth)]

    def copy(self) -> "StateTree":
        dup = StateTree.__new__(StateTree)
        dup.depth = self.depth
        dup.size = self.size
        dup.params = self.params
        dup.accounts = [a.copy() for a in self.accounts]
        dup._nodes = list(self._nodes)
        return dup

    def snapshot_json(self) -> str:
        """Leaves + root export used by golden tests."""
        return json.dumps(
            {
                "depth": self.depth,
                "root": self.root,
                "leaves": [self._nodes[self.size + i] for i in range(self.size)],
                "accounts": [
                    {"key_hash": a.key_hash, "balance": a.balance, "nonce": a.nonce}
                    for a in self.accounts
                ],
            },
            separators=(",", ":"),
        )


def tx_error(state: StateTree, tx: Tx) -> str | None:
    """Reason this tx cannot apply to `state` right now, or None if valid."""
    if not (0 <= tx.from_index < state.size and 0 <= tx.to_index < state.size):
        return "index out of range"
    if not 0 <= tx.amount < MAX_BALANCE:
        return "amount out of range"
    sender = state.account(tx.from_index)
    if int(state.params.hash2(tx.auth_secret, 0)) != sender.key_hash:
        return "authorization failed"
    if tx.nonce != sender.nonce:
        return f"nonce mismatch (expected {sender.nonce}, got {tx.nonce})"
    if sender.balance < tx.amount:
        return "insufficient balance"
    if tx.from_index != tx.to_index:
        receiver = state.account(tx.to_index)
        if receiver.balance + tx.amount >= MAX_BALANCE:
            return "receiver balance overflow"
    return None


def apply_tx(state: StateTree, tx: Tx):
    """Apply a single valid transfer in place; raises on invalid.

    Self-transfers are empty-effect by definition: the balance round-trips
    and the nonce does not advance, so amount-0 self-transfers (the batch
    padding) leave the state root unchanged.
    """
    reason = tx_error(state, tx)
    if reason is not None:
        raise IntegrityError(f"invalid transaction: {reason}")
    sender = state.account(tx.from_index).copy()
    sender.balance -= tx.amount
    if tx.from_index != tx.to_index:
        sender.nonce += 1
    state.set_account(tx.from_index, sender)
    receiver = state.account(tx.to_index).copy()
    receiver.balance += tx.amount
    state.set_account(tx.to_index, receiver)


def apply_batch(state: StateTree, batch: Batch) -> StateTree:
    """Return the state after the batch; the input tree is left untouched."""
    if batch.pre_root != state.root:
        raise UsageError(
            f"sequencing error: batch pre-root {batch.pre_root} != state root {state.root}"
        )
    out = state.copy()
    for i, tx in enumerate(batch.txs):
        reason = tx_error(out, tx)
        if reason is not None:
            raise IntegrityError(f"sealed batch contains invalid tx {i}: {reason}")
        apply_tx(out, tx)
    if out.root != batch.post_root:
        raise IntegrityError(
            f"batch post-root mismatch: replay gives {out.root}, batch says {batch.post_root}"
        )
    return out


def total_balance(state: StateTree) -> int:
    return sum(a.balance for a in state.accounts)


def genesis_state(depth: int, balances: dict | None = None, secrets: dict | None = None,
                  params: MimcParams | None = None) -> StateTree:
    """Fresh tree; `balances[idx]` funds accounts, `secrets[idx]` keys them."""
    state = StateTree(depth, params)
    secrets = secrets or {}
    for idx, secret in secrets.items():
        if idx == 0:
            raise UsageError("account 0 is reserved for the system (secret 0)")
        state.set_account(
            idx, Account(key_hash=int(state.params.hash2(secret, 0)))
        )
    if balances:
        for idx, bal in balances.items():
            if not 0 <= bal < MAX_BALANCE:
                raise UsageError(f"genesis balance out of range for account {idx}")
            acct = state.account(idx).copy()
            acct.balance = bal
            state.set_account(idx, acct)
    return state


def apply_deposits(state: StateTree, credits: dict) -> StateTree:
    """Privileged L1-initiated credits, outside the proof path (trusted)."""
    out = state.copy()
    for idx, amount in credits.items():
        acct = out.account(idx).copy()
        if acct.balance + amount >= MAX_BALANCE:
            raise UsageError(f"deposit overflows account {idx}")
        acct.balance += amount
        out.set_account(idx, acct)
    return out
