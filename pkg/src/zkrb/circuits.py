"""Application circuits: batch-transfer verification and withdrawal.

The batch circuit checks, per transaction: sender inclusion under the
running root, key-preimage authorization, nonce match/increment, balance
sufficiency (range checks), then re-hashes updated sender and receiver
leaves into the next running root; the final root must equal the public
new_state_root. The withdrawal circuit proves knowledge of a secret key
whose account is included under a known root with sufficient balance, and
binds a nullifier H(secret, account_index).

What the original system's circuits actually checked is undisclosed; this
construction is our reconstruction, documented as an assumption. The
authorization scheme (account key = H(secret, 0), secret revealed to the
prover) deliberately makes the aggregator a trusted party; see README.

Constraint counts are affine in the batch size m by construction:
count(m) = PER_TX_CONSTRAINTS * m with the default hash schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError, WitnessError
from .hashing import MimcParams, default_params
from .r1cs import (
    ConstraintSystem,
    LinearCombination,
    Visibility,
    Witness,
    gadget_hash2,
    gadget_range_check,
    hash2_into,
    merkle_fold,
)
from .state import BALANCE_BITS, Batch, StateTree, tx_error

_LC = LinearCombination


@dataclass(frozen=True)
class BatchCircuitParams:
    batch_size: int
    tree_depth: int = 8
    balance_bits: int = BALANCE_BITS

    def __post_init__(self):
        if self.batch_size < 1:
            raise UsageError("batch size must be >= 1")
        if self.tree_depth < 1:
            raise UsageError("tree depth must be >= 1")
        if self.batch_size > (1 << self.tree_depth):
            raise UsageError("batch size cannot exceed the account count")


@dataclass(frozen=True)
class BatchPublicInputs:
    old_state_root: int
    new_state_root: int

    def to_list(self):
        return [self.old_state_root, self.new_state_root]


@dataclass(frozen=True)
class WithdrawalPublicInputs:
    state_root: int
    recipient_tag: int
    amount: int
    nullifier: int

    def to_list(self):
        return [self.state_root, self.recipient_tag, self.amount, self.nullifier]


@dataclass
class _TxWires:
    """Per-transaction witness values; None for structure-only synthesis."""

    sender_secret: int = None
    sender_key_hash: int = None
    sender_balance: int = None
    sender_nonce: int = None
    amount: int = None
    sender_bits: list = None
    sender_sibs: list = None
    mid_root: int = None
    receiver_key_hash: int = None
    receiver_balance: int = None
    receiver_nonce: int = None
    receiver_bits: list = None
    receiver_sibs: list = None
    next_root: int = None


def _synthesize_batch(cs: ConstraintSystem, params: BatchCircuitParams,
                      data, publics, mimc: MimcParams):
    d = params.tree_depth
    m = params.batch_size
    old_root = cs.alloc(Visibility.PUBLIC, publics[0] if publics else None)
    new_root = cs.alloc(Visibility.PUBLIC, publics[1] if publics else None)
    running = _LC.of(old_root)

    for t in range(m):
        w = data[t] if data else _TxWires()
        sk = cs.alloc(Visibility.PRIVATE, w.sender_secret)
        kh = cs.alloc(Visibility.PRIVATE, w.sender_key_hash)
        bal = cs.alloc(Visibility.PRIVATE, w.sender_balance)
        nonce = cs.alloc(Visibility.PRIVATE, w.sender_nonce)
        amount = cs.alloc(Visibility.PRIVATE, w.amount)
        s_bits = [
            cs.alloc(Visibility.PRIVATE, w.sender_bits[i] if w.sender_bits else None)
            for i in range(d)
        ]
        s_sibs = [
            cs.alloc(Visibility.PRIVATE, w.sender_sibs[i] if w.sender_sibs else None)
            for i in range(d)
        ]
        # authorization: the sender key hash opens to the known secret
        hash2_into(cs, sk, 0, kh, mimc)
        # sender inclusion under the running root
        inner_old = gadget_hash2(cs, bal, nonce, mimc)
        leaf_old = gadget_hash2(cs, kh, inner_old, mimc)
        s_path = list(zip(s_sibs, s_bits))
        merkle_fold(cs, leaf_old, s_path, mimc, constrain_bits=True, bind_root=running)
        r_bits = [
            cs.alloc(Visibility.PRIVATE, w.receiver_bits[i] if w.receiver_bits else None)
            for i in range(d)
        ]
        # self-transfer flag: product chain over per-level bit equality;
        # self-transfers are empty-effect (no nonce advance)
        same = _LC.of(1)
        for i in range(d):
            both = cs.mul(s_bits[i], r_bits[i])
            xor = s_bits[i] + r_bits[i] - _LC.of(both) * 2
            same = _LC.of(cs.mul(same, 1 - xor))
        # sender update: balance - amount, nonce + 1 unless self-transfer
        new_bal = bal - _LC.of(amount)
        inner_new = gadget_hash2(cs, new_bal, nonce + 1 - same, mimc)
        leaf_new = gadget_hash2(cs, kh, inner_new, mimc)
        mid = cs.alloc(Visibility.PRIVATE, w.mid_root)
        merkle_fold(cs, leaf_new, s_path, mimc, constrain_bits=False, bind_root=mid)
        # receiver inclusion under the intermediate root
        r_kh = cs.alloc(Visibility.PRIVATE, w.receiver_key_hash)
        r_bal = cs.alloc(Visibility.PRIVATE, w.receiver_balance)
        r_nonce = cs.alloc(Visibility.PRIVATE, w.receiver_nonce)
        r_sibs = [
            cs.alloc(Visibility.PRIVATE, w.receiver_sibs[i] if w.receiver_sibs else None)
            for i in range(d)
        ]
        r_inner_old = gadget_hash2(cs, r_bal, r_nonce, mimc)
        r_leaf_old = gadget_hash2(cs, r_kh, r_inner_old, mimc)
        r_path = list(zip(r_sibs, r_bits))
        merkle_fold(cs, r_leaf_old, r_path, mimc, constrain_bits=True, bind_root=mid)
        # receiver update: balance + amount
        r_new_bal = r_bal + _LC.of(amount)
        r_inner_new = gadget_hash2(cs, r_new_bal, r_nonce, mimc)
        r_leaf_new = gadget_hash2(cs, r_kh, r_inner_new, mimc)
        if t == m - 1:
            nxt = _LC.of(new_root)
        else:
            nxt = _LC.of(cs.alloc(Visibility.PRIVATE, w.next_root))
        merkle_fold(cs, r_leaf_new, r_path, mimc, constrain_bits=False, bind_root=nxt)
        # balance-domain checks
        gadget_range_check(cs, amount, params.balance_bits)
        gadget_range_check(cs, new_bal, params.balance_bits)
        gadget_range_check(cs, r_new_bal, params.balance_bits)
        running = nxt


def build_batch_circuit(params: BatchCircuitParams, mimc: MimcParams | None = None) -> ConstraintSystem:
    """Structure-only batch circuit; finalized, satisfiable iff the batch is valid."""
    mimc = mimc or default_params()
    cs = ConstraintSystem()
    _synthesize_batch(cs, params, None, None, mimc)
    cs.finalize()
    return cs


def per_tx_constraints(mimc: MimcParams | None = None, tree_depth: int = 8,
                       balance_bits: int = BALANCE_BITS) -> int:
    """The slope a of count(m) = a*m.

    9 hashes, 4 path folds, 3 range checks, plus 2 rows per tree level for
    the self-transfer equality chain.
    """
    h = (mimc or default_params()).hash2_constraints
    folds = 2 * tree_depth * (h + 2) + 2 * tree_depth * (h + 1)
    return 9 * h + folds + 3 * (balance_bits + 1) + 2 * tree_depth


def _collect_batch_data(params: BatchCircuitParams, pre_state: StateTree, batch: Batch):
    if batch.size != params.batch_size:
        raise WitnessError(
            f"batch has {batch.size} transactions, circuit expects {params.batch_size}"
        )
    if batch.pre_root != pre_state.root:
        raise WitnessError("batch pre-root does not match the supplied state")
    state = pre_state.copy()
    d = params.tree_depth
    out = []
    for i, tx in enumerate(batch.txs):
        reason = tx_error(state, tx)
        if reason is not None:
            raise WitnessError(f"transaction {i} invalid during witness generation: {reason}")
        sender = state.account(tx.from_index)
        wires = _TxWires(
            sender_secret=tx.auth_secret,
            sender_key_hash=sender.key_hash,
            sender_balance=sender.balance,
            sender_nonce=sender.nonce,
            amount=tx.amount,
            sender_bits=StateTree.index_bits(tx.from_index, d),
            sender_sibs=state.siblings(tx.from_index),
        )
        # sender update first, as the circuit folds it
        upd = sender.copy()
        upd.balance -= tx.amount
        if tx.from_index != tx.to_index:
            upd.nonce += 1
        state.set_account(tx.from_index, upd)
        wires.mid_root = state.root
        receiver = state.account(tx.to_index)
        wires.receiver_key_hash = receiver.key_hash
        wires.receiver_balance = receiver.balance
        wires.receiver_nonce = receiver.nonce
        wires.receiver_bits = StateTree.index_bits(tx.to_index, d)
        wires.receiver_sibs = state.siblings(tx.to_index)
        rupd = receiver.copy()
        rupd.balance += tx.amount
        state.set_account(tx.to_index, rupd)
        wires.next_root = state.root
        out.append(wires)
    if state.root != batch.post_root:
        raise WitnessError("batch post-root does not match replay")
    return out


def assign_batch_witness(params: BatchCircuitParams, pre_state: StateTree, batch: Batch,
                         mimc: MimcParams | None = None) -> Witness:
    """Witness satisfying build_batch_circuit(params) for a valid batch."""
    mimc = mimc or default_params()
    data = _collect_batch_data(params, pre_state, batch)
    cs = ConstraintSystem()
    _synthesize_batch(cs, params, data, (batch.pre_root, batch.post_root), mimc)
    cs.finalize()
    return cs.witness()


# ---------------------------------------------------------------------------
# Withdrawal circuit
# ---------------------------------------------------------------------------


def _synthesize_withdrawal(cs: ConstraintSystem, depth: int, balance_bits: int,
                           values, mimc: MimcParams):
    pub = values["publics"] if values else (None, None, None, None)
    root = cs.alloc(Visibility.PUBLIC, pub[0])
    cs.alloc(Visibility.PUBLIC, pub[1])  # recipient tag: bound, not constrained
    amount = cs.alloc(Visibility.PUBLIC, pub[2])
    nullifier = cs.alloc(Visibility.PUBLIC, pub[3])
    sk = cs.alloc(Visibility.PRIVATE, values["secret"] if values else None)
    kh = cs.alloc(Visibility.PRIVATE, values["key_hash"] if values else None)
    bal = cs.alloc(Visibility.PRIVATE, values["balance"] if values else None)
    nonce = cs.alloc(Visibility.PRIVATE, values["nonce"] if values else None)
    bits = [
        cs.alloc(Visibility.PRIVATE, values["bits"][i] if values else None)
        for i in range(depth)
    ]
    sibs = [
        cs.alloc(Visibility.PRIVATE, values["sibs"][i] if values else None)
        for i in range(depth)
    ]
    hash2_into(cs, sk, 0, kh, mimc)
    inner = gadget_hash2(cs, bal, nonce, mimc)
    leaf = gadget_hash2(cs, kh, inner, mimc)
    merkle_fold(cs, leaf, list(zip(sibs, bits)), mimc, constrain_bits=True, bind_root=root)
    index_lc = _LC()
    for i, b in enumerate(bits):
        index_lc = index_lc + b * (1 << i)
    hash2_into(cs, sk, index_lc, nullifier, mimc)
    gadget_range_check(cs, amount, balance_bits)
    gadget_range_check(cs, bal - _LC.of(amount), balance_bits)


def build_withdrawal_circuit(tree_depth: int = 8, balance_bits: int = BALANCE_BITS,
                             mimc: MimcParams | None = None) -> ConstraintSystem:
    """Withdrawal circuit; its size is independent of any batch size."""
    if tree_depth < 1:
        raise UsageError("tree depth must be >= 1")
    mimc = mimc or default_params()
    cs = ConstraintSystem()
    _synthesize_withdrawal(cs, tree_depth, balance_bits, None, mimc)
    cs.finalize()
    return cs


def withdrawal_nullifier(secret_key: int, account_index: int,
                         mimc: MimcParams | None = None) -> int:
    return int((mimc or default_params()).hash2(secret_key, account_index))


def assign_withdrawal_witness(state: StateTree, account_index: int, secret_key: int,
                              amount: int, recipient_tag: int,
                              mimc: MimcParams | None = None):
    """Returns (witness, WithdrawalPublicInputs) or raises WitnessError."""
    mimc = mimc or default_params()
    if not 0 <= account_index < state.size:
        raise WitnessError(f"account index {account_index} out of range")
    acct = state.account(account_index)
    if int(mimc.hash2(secret_key, 0)) != acct.key_hash:
        raise WitnessError("secret key does not open this account")
    if not 0 <= amount <= acct.balance:
        raise WitnessError("withdrawal amount exceeds balance")
    publics = WithdrawalPublicInputs(
        state_root=state.root,
        recipient_tag=recipient_tag,
        amount=amount,
        nullifier=withdrawal_nullifier(secret_key, account_index, mimc),
    )
    values = {
        "publics": publics.to_list(),
        "secret": secret_key,
        "key_hash": acct.key_hash,
        "balance": acct.balance,
        "nonce": acct.nonce,
        "bits": StateTree.index_bits(account_index, state.depth),
        "sibs": state.siblings(account_index),
    }
    cs = ConstraintSystem()
    _synthesize_withdrawal(cs, state.depth, BALANCE_BITS, values, mimc)
    cs.finalize()
    return cs.witness(), publics
